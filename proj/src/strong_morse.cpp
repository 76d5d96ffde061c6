#include "strongmorse/strong_morse.hpp"

#include <algorithm>

#include "strongmorse/error.hpp"

namespace smorse {

namespace {

void check(const SimplicialComplex& k, const VertexFunction& g)
{
    if (g.values.size() != k.vertex_count())
        throw Error(ErrorCode::InvalidArgument, "vertex function is not total on V(K)");
}

void check_vertex(const SimplicialComplex& k, Vertex v)
{
    if (v >= k.vertex_count())
        throw Error(ErrorCode::UnknownVertex, "vertex id " + std::to_string(v));
}

bool in_sublevel(const Simplex& s, const VertexFunction& g, double level)
{
    return std::all_of(s.begin(), s.end(), [&](Vertex w) { return g(w) <= level; });
}

/// Vertices dominating v inside K_{g(v)}.
std::vector<Vertex> sublevel_dominators(const SimplicialComplex& k, const VertexFunction& g,
                                        Vertex v)
{
    const double level = g(v);
    // Facets of K_{g(v)} containing v are the maximal traces F ∩ K_{g(v)}.
    std::vector<Simplex> traces;
    for (const auto& f : k.facets()) {
        if (!f.contains(v))
            continue;
        std::vector<Vertex> part;
        for (Vertex w : f)
            if (g(w) <= level)
                part.push_back(w);
        traces.push_back(Simplex::from_sorted(std::move(part)));
    }
    std::sort(traces.begin(), traces.end(), std::greater<>());
    traces.erase(std::unique(traces.begin(), traces.end()), traces.end());

    std::optional<std::vector<Vertex>> common;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < i && maximal; ++j)
            maximal = !traces[i].is_face_of(traces[j]);
        if (!maximal)
            continue;
        if (!common) {
            common.emplace(traces[i].begin(), traces[i].end());
            continue;
        }
        std::vector<Vertex> next;
        std::set_intersection(common->begin(), common->end(), traces[i].begin(), traces[i].end(),
                              std::back_inserter(next));
        *common = std::move(next);
    }
    std::vector<Vertex> out;
    for (Vertex a : common.value_or(std::vector<Vertex>{}))
        if (a != v)
            out.push_back(a);
    return out;
}

} // namespace

VertexFunction identity_on_labels(const SimplicialComplex& k)
{
    VertexFunction g;
    for (Label l : k.labels())
        g.values.push_back(static_cast<double>(l));
    return g;
}

std::vector<Simplex> descending_star(const SimplicialComplex& k, const VertexFunction& g, Vertex v)
{
    check(k, g);
    check_vertex(k, v);
    std::vector<Simplex> out;
    for (const auto& s : k.simplices())
        if (s.contains(v) && in_sublevel(s, g, g(v)))
            out.push_back(s);
    return out;
}

SimplicialComplex descending_link(const SimplicialComplex& k, const VertexFunction& g, Vertex v)
{
    check(k, g);
    check_vertex(k, v);
    std::vector<Vertex> sublevel;
    for (Vertex w = 0; w < k.vertex_count(); ++w)
        if (g(w) <= g(v))
            sublevel.push_back(w);
    const auto sub = full_subcomplex(k, sublevel);
    return link(sub, *sub.vertex_of(k.label(v)));
}

std::vector<Vertex> VertexClassification::strong_critical() const
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < tags.size(); ++v)
        if (tags[v].strong_critical)
            out.push_back(v);
    return out;
}

VertexClassification classify_vertices(const SimplicialComplex& k, const VertexFunction& g)
{
    check(k, g);
    VertexClassification out;
    out.tags.resize(k.vertex_count());
    for (Vertex v = 0; v < k.vertex_count(); ++v) {
        std::optional<Vertex> best;
        for (Vertex a : sublevel_dominators(k, g, v)) {
            if (!(g(a) < g(v)))
                continue;
            if (!best || g(a) > g(*best))
                best = a;
        }
        if (best)
            out.tags[v] = VertexTag{false, best};
    }
    return out;
}

VertexFunctionMatching matching_from_vertex_function(const SimplicialComplex& k,
                                                     const VertexFunction& g)
{
    const auto cls = classify_vertices(k, g);
    auto above = [&](Vertex a, Vertex b) { return g(a) > g(b) || (g(a) == g(b) && a > b); };

    VertexFunctionMatching out;
    std::vector<MatchedPair> pairs;
    for (const auto& s : k.simplices()) {
        Vertex top = s[0];
        for (Vertex w : s)
            if (above(w, top))
                top = w;
        const auto& tag = cls.tags[top];
        if (tag.strong_critical) {
            out.critical.push_back(s);
            continue;
        }
        // Emit each pair once, from its lower simplex.
        if (!s.contains(*tag.witness))
            pairs.push_back({s, s.with(*tag.witness)});
    }
    out.matching = Matching(std::move(pairs));
    return out;
}

} // namespace smorse
