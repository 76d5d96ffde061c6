#include "strongmorse/matching.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

#include "strongmorse/error.hpp"
#include "strongmorse/poset.hpp"

namespace smorse {

Matching::Matching(std::vector<MatchedPair> pairs) : pairs_(std::move(pairs))
{
    std::sort(pairs_.begin(), pairs_.end());
}

Matching Matching::merged(const Matching& other) const
{
    std::vector<MatchedPair> all = pairs_;
    all.insert(all.end(), other.pairs_.begin(), other.pairs_.end());
    return Matching(std::move(all));
}

namespace {

/// Face/coface index lists of every simplex of K.
struct Incidence {
    std::vector<std::vector<std::size_t>> faces;
    std::vector<std::vector<std::size_t>> cofaces;

    explicit Incidence(const SimplicialComplex& k) : faces(k.size()), cofaces(k.size())
    {
        for (std::size_t i = 0; i < k.size(); ++i)
            for (const auto& f : k.simplices()[i].boundary()) {
                std::size_t j = *k.index_of(f);
                faces[i].push_back(j);
                cofaces[j].push_back(i);
            }
    }
};

std::string describe(const SimplicialComplex& k, const Simplex& s)
{
    std::string out = "(";
    bool first = true;
    for (Vertex v : s) {
        if (!first)
            out += ",";
        first = false;
        out += v < k.vertex_count() ? std::to_string(k.label(v)) : "?" + std::to_string(v);
    }
    return out + ")";
}

} // namespace

MatchingReport validate_matching(const SimplicialComplex& k, const Matching& m)
{
    MatchingReport report;
    auto note = [&](std::string what) {
        if (!report.violation)
            report.violation = std::move(what);
    };

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> partner(k.size(), none);
    for (const auto& p : m.pairs()) {
        auto lo = k.index_of(p.lower);
        auto hi = k.index_of(p.upper);
        if (!lo || !hi) {
            report.members_in_complex = false;
            note("pair " + describe(k, p.lower) + "," + describe(k, p.upper) +
                 " is not in the complex");
            continue;
        }
        if (p.upper.dim() != p.lower.dim() + 1 || !p.lower.is_face_of(p.upper)) {
            report.codimension_one = false;
            note("pair " + describe(k, p.lower) + "," + describe(k, p.upper) +
                 " is not a codimension-1 face pair");
            continue;
        }
        if (partner[*lo] != none || partner[*hi] != none) {
            report.disjoint = false;
            note("simplex " + describe(k, partner[*lo] != none ? p.lower : p.upper) +
                 " is matched twice");
            continue;
        }
        partner[*lo] = *hi;
        partner[*hi] = *lo;
    }
    if (!report.valid())
        return report;

    // Modified Hasse diagram: matched covers point up, the rest point down.
    const Incidence inc(k);
    auto successors = [&](std::size_t x) {
        std::vector<std::size_t> out;
        for (std::size_t f : inc.faces[x])
            if (partner[x] != f)
                out.push_back(f);
        if (partner[x] != none && k.simplices()[partner[x]].dim() > k.simplices()[x].dim())
            out.push_back(partner[x]);
        return out;
    };

    enum : char { white, grey, black };
    std::vector<char> colour(k.size(), white);
    std::vector<std::size_t> parent(k.size(), none);
    for (std::size_t root = 0; root < k.size(); ++root) {
        if (colour[root] != white)
            continue;
        std::vector<std::pair<std::size_t, std::vector<std::size_t>>> stack;
        stack.emplace_back(root, successors(root));
        colour[root] = grey;
        while (!stack.empty()) {
            auto& [x, next] = stack.back();
            if (next.empty()) {
                colour[x] = black;
                stack.pop_back();
                continue;
            }
            std::size_t y = next.back();
            next.pop_back();
            if (colour[y] == grey) {
                report.acyclic = false;
                std::vector<Simplex> cycle{k.simplices()[y]};
                for (std::size_t z = x; z != y; z = parent[z])
                    cycle.push_back(k.simplices()[z]);
                std::reverse(cycle.begin() + 1, cycle.end());
                report.witness_cycle = std::move(cycle);
                note("matching has a closed V-path through " + describe(k, k.simplices()[y]));
                return report;
            }
            if (colour[y] == white) {
                colour[y] = grey;
                parent[y] = x;
                stack.emplace_back(y, successors(y));
            }
        }
    }
    return report;
}

Matching matching_from_collapse_sequence(const SimplicialComplex& k,
                                         std::span<const MatchedPair> steps)
{
    const Incidence inc(k);
    std::vector<char> alive(k.size(), 1);
    std::vector<std::size_t> live_cofaces(k.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        live_cofaces[i] = inc.cofaces[i].size();

    std::size_t step = 0;
    for (const auto& p : steps) {
        auto lo = k.index_of(p.lower);
        auto hi = k.index_of(p.upper);
        auto illegal = [&](const std::string& why) {
            return Error(ErrorCode::IllegalCollapseStep,
                         "step " + std::to_string(step) + " " + describe(k, p.lower) + "," +
                             describe(k, p.upper) + ": " + why);
        };
        if (!lo || !hi || !alive[*lo] || !alive[*hi])
            throw illegal("simplex not present");
        if (p.upper.dim() != p.lower.dim() + 1 || !p.lower.is_face_of(p.upper))
            throw illegal("not a codimension-1 face pair");
        if (live_cofaces[*lo] != 1)
            throw illegal("lower simplex is not a free face");
        for (std::size_t idx : {*hi, *lo}) {
            alive[idx] = 0;
            for (std::size_t f : inc.faces[idx])
                --live_cofaces[f];
        }
        ++step;
    }
    return Matching(std::vector<MatchedPair>(steps.begin(), steps.end()));
}

namespace {

/// M(σ) for every simplex, as indices; nullopt when some set has more
/// than one element.
std::optional<std::vector<std::vector<std::size_t>>> gradient_sets(const SimplicialComplex& k,
                                                                   const DiscreteMorseFunction& f)
{
    if (f.values.size() != k.size())
        throw Error(ErrorCode::InvalidMorseFunction, "function is not total on the complex");
    const Incidence inc(k);
    std::vector<std::vector<std::size_t>> sets(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        for (std::size_t j : inc.faces[i])
            if (f.values[j] >= f.values[i])
                sets[i].push_back(j);
        for (std::size_t j : inc.cofaces[i])
            if (f.values[j] <= f.values[i])
                sets[i].push_back(j);
        if (sets[i].size() > 1)
            return std::nullopt;
    }
    return sets;
}

} // namespace

bool is_discrete_morse(const SimplicialComplex& k, const DiscreteMorseFunction& f)
{
    if (f.values.size() != k.size())
        return false;
    return gradient_sets(k, f).has_value();
}

std::vector<Simplex> critical_simplices(const SimplicialComplex& k, const DiscreteMorseFunction& f)
{
    auto sets = gradient_sets(k, f);
    if (!sets)
        throw Error(ErrorCode::InvalidMorseFunction, "not a discrete Morse function");
    std::vector<Simplex> out;
    for (std::size_t i = 0; i < k.size(); ++i)
        if ((*sets)[i].empty())
            out.push_back(k.simplices()[i]);
    return out;
}

Matching matching_from_morse(const SimplicialComplex& k, const DiscreteMorseFunction& f)
{
    auto sets = gradient_sets(k, f);
    if (!sets)
        throw Error(ErrorCode::InvalidMorseFunction, "not a discrete Morse function");
    std::vector<MatchedPair> pairs;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if ((*sets)[i].empty())
            continue;
        std::size_t j = (*sets)[i].front();
        if (k.simplices()[j].dim() > k.simplices()[i].dim())
            pairs.push_back({k.simplices()[i], k.simplices()[j]});
    }
    return Matching(std::move(pairs));
}

DiscreteMorseFunction morse_from_matching(const SimplicialComplex& k, const Matching& m)
{
    const FinitePoset x = face_poset(k);
    const Localization loc = localization(x, m);

    // Smallest-index-first linear extension of the localization.
    const auto& p = loc.poset;
    std::vector<std::size_t> pending(p.size(), 0);
    for (FinitePoset::Index i = 0; i < p.size(); ++i)
        pending[i] = p.lower_covers(i).size();
    std::priority_queue<FinitePoset::Index, std::vector<FinitePoset::Index>, std::greater<>> ready;
    for (FinitePoset::Index i = 0; i < p.size(); ++i)
        if (pending[i] == 0)
            ready.push(i);
    std::vector<double> rank(p.size(), 0.0);
    double next = 0.0;
    while (!ready.empty()) {
        auto c = ready.top();
        ready.pop();
        rank[c] = next;
        next += 1.0;
        for (auto u : p.upper_covers(c))
            if (--pending[u] == 0)
                ready.push(u);
    }

    DiscreteMorseFunction f;
    f.values.resize(k.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        f.values[i] = rank[loc.class_of[i]];
    return f;
}

std::vector<Simplex> unmatched_simplices(const SimplicialComplex& k, const Matching& m)
{
    std::vector<char> matched(k.size(), 0);
    for (const auto& p : m.pairs())
        for (const auto* s : {&p.lower, &p.upper})
            if (auto i = k.index_of(*s))
                matched[*i] = 1;
    std::vector<Simplex> out;
    for (std::size_t i = 0; i < k.size(); ++i)
        if (!matched[i])
            out.push_back(k.simplices()[i]);
    return out;
}

} // namespace smorse
