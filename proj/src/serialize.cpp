#include "strongmorse/serialize.hpp"

#include <string>

#include "strongmorse/error.hpp"

namespace smorse {

namespace {

[[noreturn]] void malformed(const std::string& what)
{
    throw Error(ErrorCode::ParseFailure, "malformed JSON: " + what);
}

const Json& field(const Json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name))
        malformed(std::string("missing field '") + name + "'");
    return j.at(name);
}

Label label_from_json(const Json& j)
{
    if (!j.is_number_integer())
        malformed("expected an integer label, found " + j.dump());
    return j.get<Label>();
}

Vertex vertex_from_json(const SimplicialComplex& k, const Json& j)
{
    return k.require_vertex(label_from_json(j));
}

Json simplex_list(const SimplicialComplex& k, const std::vector<Simplex>& list)
{
    Json out = Json::array();
    for (const auto& s : list)
        out.push_back(simplex_to_json(k, s));
    return out;
}

std::vector<Simplex> simplex_list_from_json(const SimplicialComplex& k, const Json& j)
{
    if (!j.is_array())
        malformed("expected a list of simplices");
    std::vector<Simplex> out;
    for (const auto& s : j)
        out.push_back(simplex_from_json(k, s));
    return out;
}

Json bigint_to_json(const BigInt& x)
{
    if (x <= std::numeric_limits<std::int64_t>::max() && x >= std::numeric_limits<std::int64_t>::min())
        return Json(static_cast<std::int64_t>(x));
    return Json(x.str());
}

BigInt bigint_from_json(const Json& j)
{
    if (j.is_number_integer())
        return BigInt(j.get<std::int64_t>());
    if (j.is_string())
        return BigInt(j.get<std::string>());
    malformed("expected an integer, found " + j.dump());
}

} // namespace

Json simplex_to_json(const SimplicialComplex& k, const Simplex& s)
{
    return Json(k.to_labels(s));
}

Simplex simplex_from_json(const SimplicialComplex& k, const Json& j)
{
    if (!j.is_array())
        malformed("expected a simplex as a label array, found " + j.dump());
    std::vector<Label> labels;
    for (const auto& x : j)
        labels.push_back(label_from_json(x));
    return k.from_labels(labels);
}

Json matching_to_json(const SimplicialComplex& k, const Matching& m)
{
    Json pairs = Json::array();
    for (const auto& p : m.pairs())
        pairs.push_back({{"lower", simplex_to_json(k, p.lower)}, {"upper", simplex_to_json(k, p.upper)}});
    return {{"pairs", std::move(pairs)}};
}

Matching matching_from_json(const SimplicialComplex& k, const Json& j)
{
    const Json& list = j.is_object() ? field(j, "pairs") : j;
    if (!list.is_array())
        malformed("expected a list of matched pairs");
    std::vector<MatchedPair> pairs;
    for (const auto& p : list) {
        if (p.is_object())
            pairs.push_back({simplex_from_json(k, field(p, "lower")), simplex_from_json(k, field(p, "upper"))});
        else if (p.is_array() && p.size() == 2)
            pairs.push_back({simplex_from_json(k, p[0]), simplex_from_json(k, p[1])});
        else
            malformed("expected a pair, found " + p.dump());
    }
    return Matching(std::move(pairs));
}

Json poset_to_json(const SimplicialComplex& k, const FinitePoset& p)
{
    Json elements = Json::array();
    for (const auto& e : p.elements()) {
        Json grade = e.grade ? Json(*e.grade) : Json(nullptr);
        elements.push_back({{"members", simplex_list(k, e.members)}, {"grade", grade}});
    }
    Json covers = Json::array();
    for (const auto& [lo, hi] : p.covers())
        covers.push_back({lo, hi});
    return {{"elements", std::move(elements)}, {"covers", std::move(covers)}};
}

FinitePoset poset_from_json(const SimplicialComplex& k, const Json& j)
{
    std::vector<PosetElement> elements;
    for (const auto& e : field(j, "elements")) {
        PosetElement el;
        el.members = simplex_list_from_json(k, field(e, "members"));
        const Json& g = field(e, "grade");
        if (!g.is_null())
            el.grade = g.get<int>();
        elements.push_back(std::move(el));
    }
    std::vector<std::pair<FinitePoset::Index, FinitePoset::Index>> rel;
    for (const auto& c : field(j, "covers")) {
        if (!c.is_array() || c.size() != 2)
            malformed("expected a cover pair, found " + c.dump());
        auto lo = c[0].get<FinitePoset::Index>();
        auto hi = c[1].get<FinitePoset::Index>();
        if (lo >= elements.size() || hi >= elements.size())
            malformed("cover refers to a missing element");
        rel.emplace_back(lo, hi);
    }
    return FinitePoset(std::move(elements), rel);
}

Json classification_to_json(const SimplicialComplex& k, const VertexClassification& c)
{
    Json vertices = Json::array();
    for (Vertex v = 0; v < c.tags.size(); ++v) {
        const auto& t = c.tags[v];
        vertices.push_back({{"vertex", k.label(v)},
                            {"strong_critical", t.strong_critical},
                            {"witness", t.witness ? Json(k.label(*t.witness)) : Json(nullptr)}});
    }
    return {{"vertices", std::move(vertices)}};
}

Json trace_to_json(const SimplicialComplex& k, const ReductionTrace& t)
{
    Json steps = Json::array();
    for (const auto& step : t.steps) {
        if (const auto* s = std::get_if<StrongCollapseStep>(&step))
            steps.push_back({{"type", "strong_collapse"},
                             {"vertex", k.label(s->vertex)},
                             {"witness", k.label(s->witness)}});
        else if (const auto* c = std::get_if<CriticalRemovalStep>(&step))
            steps.push_back({{"type", "critical_removal"},
                             {"vertex", k.label(c->vertex)},
                             {"descending_star", simplex_list(k, c->descending_star)}});
        else {
            const auto& w = std::get<WeakCollapseStep>(step);
            steps.push_back({{"type", "weak_collapse"},
                             {"free_face", simplex_to_json(k, w.free_face)},
                             {"coface", simplex_to_json(k, w.coface)}});
        }
    }
    Json g = nullptr;
    if (t.implied_g) {
        g = Json::array();
        for (Vertex v = 0; v < t.implied_g->values.size(); ++v)
            g.push_back({k.label(v), t.implied_g->values[v]});
    }
    return {{"steps", std::move(steps)},
            {"matching", matching_to_json(k, t.matching)},
            {"critical_set", simplex_list(k, t.critical_set)},
            {"implied_g", std::move(g)}};
}

ReductionTrace trace_from_json(const SimplicialComplex& k, const Json& j)
{
    ReductionTrace t;
    for (const auto& s : field(j, "steps")) {
        const std::string type = field(s, "type").get<std::string>();
        if (type == "strong_collapse")
            t.steps.push_back(StrongCollapseStep{vertex_from_json(k, field(s, "vertex")),
                                                 vertex_from_json(k, field(s, "witness"))});
        else if (type == "critical_removal")
            t.steps.push_back(CriticalRemovalStep{vertex_from_json(k, field(s, "vertex")),
                                                  simplex_list_from_json(k, field(s, "descending_star"))});
        else if (type == "weak_collapse")
            t.steps.push_back(WeakCollapseStep{simplex_from_json(k, field(s, "free_face")),
                                               simplex_from_json(k, field(s, "coface"))});
        else
            malformed("unknown step type '" + type + "'");
    }
    if (j.contains("matching"))
        t.matching = matching_from_json(k, j.at("matching"));
    if (j.contains("critical_set"))
        t.critical_set = simplex_list_from_json(k, j.at("critical_set"));
    if (j.contains("implied_g") && !j.at("implied_g").is_null()) {
        VertexFunction g;
        g.values.assign(k.vertex_count(), 0.0);
        for (const auto& entry : j.at("implied_g")) {
            if (!entry.is_array() || entry.size() != 2)
                malformed("expected [label, value] in implied_g");
            g.values[vertex_from_json(k, entry[0])] = entry[1].get<double>();
        }
        t.implied_g = std::move(g);
    }
    return t;
}

Json core_result_to_json(const SimplicialComplex& k, const CoreResult& r, bool include_timing,
                         bool include_trace)
{
    Json out = {{"method", std::string(to_string(r.kind))},
                {"input_size", r.input_size},
                {"output_size", r.output_size}};
    if (r.intermediate_size)
        out["intermediate_size"] = *r.intermediate_size;
    if (r.core_complex) {
        Json facets = Json::array();
        for (const auto& f : r.core_complex->facet_labels())
            facets.push_back(f);
        out["core_facets"] = std::move(facets);
    }
    if (r.critical_poset)
        out["critical_poset"] = poset_to_json(k, *r.critical_poset);
    if (include_trace)
        out["trace"] = trace_to_json(k, r.trace);
    if (include_timing)
        out["wall_time_seconds"] = r.wall_time_seconds;
    return out;
}

Json homology_to_json(const HomologyProfile& h)
{
    Json torsion = Json::array();
    for (const auto& t : h.torsion) {
        Json row = Json::array();
        for (const auto& x : t)
            row.push_back(bigint_to_json(x));
        torsion.push_back(std::move(row));
    }
    return {{"betti", h.betti}, {"torsion", std::move(torsion)}};
}

HomologyProfile homology_from_json(const Json& j)
{
    HomologyProfile h;
    h.betti = field(j, "betti").get<std::vector<std::size_t>>();
    for (const auto& row : field(j, "torsion")) {
        std::vector<BigInt> t;
        for (const auto& x : row)
            t.push_back(bigint_from_json(x));
        h.torsion.push_back(std::move(t));
    }
    return h;
}

Json verification_to_json(const VerificationReport& v)
{
    Json checks = Json::array();
    for (const auto& c : v.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"passed", v.passed()},
            {"checks", std::move(checks)},
            {"input_homology", homology_to_json(v.input_homology)},
            {"output_homology", homology_to_json(v.output_homology)}};
}

} // namespace smorse
