#include "strongmorse/complex.hpp"

#include <algorithm>
#include <unordered_set>

#include "strongmorse/error.hpp"

namespace smorse {

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<Label>>& facets)
{
    std::vector<Label> labels;
    for (const auto& f : facets) {
        if (f.empty())
            throw Error(ErrorCode::EmptyFacet, "facet with no vertices");
        labels.insert(labels.end(), f.begin(), f.end());
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    SimplicialComplex k;
    k.labels_ = labels;
    std::vector<Simplex> generators;
    generators.reserve(facets.size());
    for (const auto& f : facets) {
        std::vector<Vertex> ids;
        ids.reserve(f.size());
        for (Label l : f)
            ids.push_back(static_cast<Vertex>(
                std::lower_bound(labels.begin(), labels.end(), l) - labels.begin()));
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            throw Error(ErrorCode::DuplicateVertexInFacet,
                        "facet repeats label " + std::to_string(labels[*std::adjacent_find(ids.begin(), ids.end())]));
        generators.push_back(Simplex::from_sorted(std::move(ids)));
    }
    k.build(std::move(generators));
    return k;
}

SimplicialComplex SimplicialComplex::from_generators(std::span<const Label> labels,
                                                     const std::vector<Simplex>& generators)
{
    std::vector<char> used(labels.size(), 0);
    for (const auto& g : generators)
        for (Vertex v : g) {
            if (v >= labels.size())
                throw Error(ErrorCode::UnknownVertex, "vertex id " + std::to_string(v));
            used[v] = 1;
        }
    std::vector<Vertex> remap(labels.size(), 0);
    SimplicialComplex k;
    for (std::size_t v = 0; v < labels.size(); ++v)
        if (used[v]) {
            remap[v] = static_cast<Vertex>(k.labels_.size());
            k.labels_.push_back(labels[v]);
        }
    std::vector<Simplex> renamed;
    renamed.reserve(generators.size());
    for (const auto& g : generators) {
        if (g.empty())
            throw Error(ErrorCode::EmptyFacet, "empty generator");
        std::vector<Vertex> ids;
        for (Vertex v : g)
            ids.push_back(remap[v]);
        renamed.push_back(Simplex::from_sorted(std::move(ids)));
    }
    k.build(std::move(renamed));
    return k;
}

void SimplicialComplex::build(std::vector<Simplex> generators)
{
    std::unordered_set<Simplex, SimplexHash> all;
    std::unordered_set<Simplex, SimplexHash> covered;
    std::sort(generators.begin(), generators.end(), std::greater<>());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

    // Walk generators top-down; every boundary face is non-maximal.
    std::vector<Simplex> frontier;
    for (auto& g : generators)
        if (all.insert(g).second)
            frontier.push_back(g);
    while (!frontier.empty()) {
        std::vector<Simplex> next;
        for (const auto& s : frontier)
            for (auto& f : s.boundary()) {
                covered.insert(f);
                if (all.insert(f).second)
                    next.push_back(std::move(f));
            }
        frontier = std::move(next);
    }

    simplices_.assign(all.begin(), all.end());
    std::sort(simplices_.begin(), simplices_.end());
    for (const auto& s : simplices_)
        if (!covered.contains(s))
            facets_.push_back(s);

    index_.reserve(simplices_.size());
    for (std::size_t i = 0; i < simplices_.size(); ++i)
        index_.emplace(simplices_[i], i);

    dim_offsets_.clear();
    if (!simplices_.empty()) {
        int top = simplices_.back().dim();
        dim_offsets_.assign(static_cast<std::size_t>(top) + 2, 0);
        for (const auto& s : simplices_)
            ++dim_offsets_[static_cast<std::size_t>(s.dim()) + 1];
        for (std::size_t d = 1; d < dim_offsets_.size(); ++d)
            dim_offsets_[d] += dim_offsets_[d - 1];
    }
}

std::span<const Simplex> SimplicialComplex::simplices_of_dim(int d) const
{
    if (d < 0 || d > dimension())
        return {};
    auto lo = dim_offsets_[static_cast<std::size_t>(d)];
    auto hi = dim_offsets_[static_cast<std::size_t>(d) + 1];
    return std::span<const Simplex>(simplices_).subspan(lo, hi - lo);
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const
{
    auto it = index_.find(s);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Label SimplicialComplex::label(Vertex v) const
{
    if (v >= labels_.size())
        throw Error(ErrorCode::UnknownVertex, "vertex id " + std::to_string(v));
    return labels_[v];
}

std::optional<Vertex> SimplicialComplex::vertex_of(Label label) const
{
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label)
        return std::nullopt;
    return static_cast<Vertex>(it - labels_.begin());
}

Vertex SimplicialComplex::require_vertex(Label label) const
{
    auto v = vertex_of(label);
    if (!v)
        throw Error(ErrorCode::UnknownVertex, "label " + std::to_string(label));
    return *v;
}

std::vector<Label> SimplicialComplex::to_labels(const Simplex& s) const
{
    std::vector<Label> out;
    out.reserve(s.size());
    for (Vertex v : s)
        out.push_back(label(v));
    return out;
}

Simplex SimplicialComplex::from_labels(std::span<const Label> labels) const
{
    std::vector<Vertex> ids;
    ids.reserve(labels.size());
    for (Label l : labels)
        ids.push_back(require_vertex(l));
    return Simplex(std::move(ids));
}

std::vector<std::vector<Label>> SimplicialComplex::facet_labels() const
{
    std::vector<std::vector<Label>> out;
    out.reserve(facets_.size());
    for (const auto& f : facets_)
        out.push_back(to_labels(f));
    return out;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const
{
    std::vector<std::size_t> f;
    for (int d = 0; d <= dimension(); ++d)
        f.push_back(simplices_of_dim(d).size());
    return f;
}

long long SimplicialComplex::euler_characteristic() const
{
    long long chi = 0;
    int d = 0;
    for (auto n : f_vector())
        chi += (d++ % 2 == 0 ? 1 : -1) * static_cast<long long>(n);
    return chi;
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
{
    return a.labels_ == b.labels_ && a.facets_ == b.facets_;
}

namespace {

void check_vertex(const SimplicialComplex& k, Vertex v)
{
    if (v >= k.vertex_count())
        throw Error(ErrorCode::UnknownVertex, "vertex id " + std::to_string(v));
}

std::vector<Simplex> facets_containing(const SimplicialComplex& k, Vertex v)
{
    std::vector<Simplex> out;
    for (const auto& f : k.facets())
        if (f.contains(v))
            out.push_back(f);
    return out;
}

} // namespace

std::vector<Simplex> open_star(const SimplicialComplex& k, Vertex v)
{
    check_vertex(k, v);
    std::vector<Simplex> out;
    for (const auto& s : k.simplices())
        if (s.contains(v))
            out.push_back(s);
    return out;
}

SimplicialComplex link(const SimplicialComplex& k, Vertex v)
{
    check_vertex(k, v);
    std::vector<Simplex> gens;
    for (const auto& f : facets_containing(k, v))
        if (f.size() > 1)
            gens.push_back(f.without(v));
    return SimplicialComplex::from_generators(k.labels(), gens);
}

SimplicialComplex closed_star(const SimplicialComplex& k, Vertex v)
{
    check_vertex(k, v);
    return SimplicialComplex::from_generators(k.labels(), facets_containing(k, v));
}

std::vector<Vertex> cone_apexes(const SimplicialComplex& k)
{
    if (k.empty())
        return {};
    std::vector<Vertex> common(k.facets().front().begin(), k.facets().front().end());
    for (const auto& f : k.facets()) {
        std::vector<Vertex> next;
        std::set_intersection(common.begin(), common.end(), f.begin(), f.end(),
                              std::back_inserter(next));
        common = std::move(next);
    }
    return common;
}

std::vector<Vertex> dominating_vertices(const SimplicialComplex& k, Vertex v)
{
    check_vertex(k, v);
    std::optional<std::vector<Vertex>> common;
    for (const auto& f : k.facets()) {
        if (!f.contains(v))
            continue;
        if (!common) {
            common.emplace(f.begin(), f.end());
            continue;
        }
        std::vector<Vertex> next;
        std::set_intersection(common->begin(), common->end(), f.begin(), f.end(),
                              std::back_inserter(next));
        *common = std::move(next);
    }
    std::vector<Vertex> out;
    for (Vertex a : common.value_or(std::vector<Vertex>{}))
        if (a != v)
            out.push_back(a);
    return out;
}

SimplicialComplex remove_vertex(const SimplicialComplex& k, Vertex v)
{
    check_vertex(k, v);
    std::vector<Vertex> rest;
    for (Vertex w = 0; w < k.vertex_count(); ++w)
        if (w != v)
            rest.push_back(w);
    return full_subcomplex(k, rest);
}

SimplicialComplex full_subcomplex(const SimplicialComplex& k, std::span<const Vertex> w)
{
    std::vector<char> keep(k.vertex_count(), 0);
    for (Vertex v : w) {
        check_vertex(k, v);
        keep[v] = 1;
    }
    std::vector<Simplex> gens;
    for (const auto& f : k.facets()) {
        std::vector<Vertex> part;
        for (Vertex v : f)
            if (keep[v])
                part.push_back(v);
        if (!part.empty())
            gens.push_back(Simplex::from_sorted(std::move(part)));
    }
    return SimplicialComplex::from_generators(k.labels(), gens);
}

std::optional<Simplex> free_face(const SimplicialComplex& k, const Simplex& sigma)
{
    if (!k.contains(sigma))
        throw Error(ErrorCode::UnknownSimplex, "simplex not in complex");
    std::optional<Simplex> coface;
    for (const auto& s : k.simplices_of_dim(sigma.dim() + 1)) {
        if (!sigma.is_face_of(s))
            continue;
        if (coface)
            return std::nullopt;
        coface = s;
    }
    // A single codimension-1 coface τ can only be the unique proper coface
    // when τ itself is maximal.
    if (coface) {
        for (const auto& s : k.simplices_of_dim(sigma.dim() + 2))
            if (coface->is_face_of(s))
                return std::nullopt;
    }
    return coface;
}

SimplicialComplex cone(const SimplicialComplex& k, Label apex_label)
{
    if (k.vertex_of(apex_label))
        throw Error(ErrorCode::InvalidArgument, "apex label already used");
    auto facets = k.facet_labels();
    for (auto& f : facets)
        f.push_back(apex_label);
    if (facets.empty())
        facets.push_back({apex_label});
    return SimplicialComplex::from_facets(facets);
}

} // namespace smorse
