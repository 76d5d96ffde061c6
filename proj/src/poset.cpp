#include "strongmorse/poset.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <unordered_map>

#include "strongmorse/error.hpp"

namespace smorse {

using Index = FinitePoset::Index;

FinitePoset::FinitePoset(std::vector<PosetElement> elements,
                         std::span<const std::pair<Index, Index>> relations)
    : elements_(std::move(elements))
{
    const std::size_t n = elements_.size();
    std::vector<std::vector<Index>> succ(n);
    for (auto [x, y] : relations) {
        if (x >= n || y >= n)
            throw Error(ErrorCode::InvalidArgument, "relation names an unknown element");
        if (x == y)
            throw Error(ErrorCode::CyclicRelation, "element related to itself");
        succ[x].push_back(y);
    }
    std::vector<std::size_t> indegree(n, 0);
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (Index y : s)
            ++indegree[y];
    }

    // Kahn's algorithm; leftovers mean a directed cycle.
    std::vector<Index> order;
    order.reserve(n);
    for (Index i = 0; i < n; ++i)
        if (indegree[i] == 0)
            order.push_back(i);
    for (std::size_t head = 0; head < order.size(); ++head)
        for (Index y : succ[order[head]])
            if (--indegree[y] == 0)
                order.push_back(y);
    if (order.size() != n)
        throw Error(ErrorCode::CyclicRelation, "relation is not antisymmetric");

    above_.assign(n, boost::dynamic_bitset<>(n));
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        for (Index y : succ[*it]) {
            above_[*it] |= above_[y];
            above_[*it].set(y);
        }

    up_.assign(n, {});
    down_.assign(n, {});
    boost::dynamic_bitset<> implied(n);
    for (Index x = 0; x < n; ++x) {
        implied.reset();
        for (Index z : succ[x])
            implied |= above_[z];
        for (Index y : succ[x])
            if (!implied.test(y)) {
                up_[x].push_back(y);
                down_[y].push_back(x);
            }
    }
}

std::vector<std::pair<Index, Index>> FinitePoset::covers() const
{
    std::vector<std::pair<Index, Index>> out;
    for (Index x = 0; x < up_.size(); ++x)
        for (Index y : up_[x])
            out.emplace_back(x, y);
    return out;
}

std::vector<Index> FinitePoset::minimal_elements() const
{
    std::vector<Index> out;
    for (Index i = 0; i < down_.size(); ++i)
        if (down_[i].empty())
            out.push_back(i);
    return out;
}

std::vector<Index> FinitePoset::maximal_elements() const
{
    std::vector<Index> out;
    for (Index i = 0; i < up_.size(); ++i)
        if (up_[i].empty())
            out.push_back(i);
    return out;
}

std::optional<Index> FinitePoset::find_singleton(const Simplex& s) const
{
    for (Index i = 0; i < elements_.size(); ++i)
        if (elements_[i].members.size() == 1 && elements_[i].members.front() == s)
            return i;
    return std::nullopt;
}

FinitePoset face_poset(const SimplicialComplex& k)
{
    std::vector<PosetElement> elements;
    elements.reserve(k.size());
    for (const auto& s : k.simplices())
        elements.push_back({{s}, s.dim()});
    std::vector<std::pair<Index, Index>> rel;
    for (std::size_t i = 0; i < k.size(); ++i)
        for (const auto& f : k.simplices()[i].boundary())
            rel.emplace_back(static_cast<Index>(*k.index_of(f)), static_cast<Index>(i));
    return FinitePoset(std::move(elements), rel);
}

namespace {

std::unordered_map<Simplex, Index, SimplexHash> singleton_index(const FinitePoset& x)
{
    std::unordered_map<Simplex, Index, SimplexHash> out;
    for (Index i = 0; i < x.size(); ++i)
        if (x.element(i).members.size() == 1)
            out.emplace(x.element(i).members.front(), i);
    return out;
}

} // namespace

Localization localization(const FinitePoset& x, const Matching& m)
{
    const auto lookup = singleton_index(x);
    const std::size_t n = x.size();
    constexpr Index unset = static_cast<Index>(-1);

    // Partner of each matched element.
    std::vector<Index> partner(n, unset);
    for (const auto& p : m.pairs()) {
        auto lo = lookup.find(p.lower);
        auto hi = lookup.find(p.upper);
        if (lo == lookup.end() || hi == lookup.end())
            throw Error(ErrorCode::InvalidMatching, "matched simplex not in the poset");
        const auto& covers = x.upper_covers(lo->second);
        if (std::find(covers.begin(), covers.end(), hi->second) == covers.end())
            throw Error(ErrorCode::InvalidMatching, "matched pair is not a cover relation");
        if (partner[lo->second] != unset || partner[hi->second] != unset)
            throw Error(ErrorCode::InvalidMatching, "simplex matched twice");
        partner[lo->second] = hi->second;
        partner[hi->second] = lo->second;
    }

    // Classes ordered by their smallest source element.
    Localization loc;
    loc.class_of.assign(n, unset);
    std::vector<PosetElement> elements;
    for (Index i = 0; i < n; ++i) {
        if (loc.class_of[i] != unset)
            continue;
        const Index c = static_cast<Index>(elements.size());
        loc.class_of[i] = c;
        if (partner[i] == unset) {
            elements.push_back(x.element(i));
        } else {
            loc.class_of[partner[i]] = c;
            Index lo = x.less(i, partner[i]) ? i : partner[i];
            Index hi = lo == i ? partner[i] : i;
            PosetElement e;
            e.members = x.element(lo).members;
            e.members.insert(e.members.end(), x.element(hi).members.begin(),
                             x.element(hi).members.end());
            elements.push_back(std::move(e));
        }
    }

    std::vector<std::pair<Index, Index>> rel;
    for (auto [a, b] : x.covers())
        if (loc.class_of[a] != loc.class_of[b])
            rel.emplace_back(loc.class_of[a], loc.class_of[b]);
    try {
        loc.poset = FinitePoset(std::move(elements), rel);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::CyclicRelation)
            throw Error(ErrorCode::MatchingNotAcyclic,
                        "identifying matched pairs does not give a partial order");
        throw;
    }
    return loc;
}

FinitePoset critical_subposet(const Localization& loc, const FinitePoset& x,
                              std::span<const Simplex> critical)
{
    const auto lookup = singleton_index(x);
    std::vector<Index> classes;
    classes.reserve(critical.size());
    for (const auto& s : critical) {
        auto it = lookup.find(s);
        if (it == lookup.end())
            throw Error(ErrorCode::UnknownSimplex, "critical simplex not in the poset");
        Index c = loc.class_of[it->second];
        if (loc.poset.element(c).members.size() != 1)
            throw Error(ErrorCode::CriticalSimplexWasMatched, "critical simplex is matched");
        classes.push_back(c);
    }
    std::sort(classes.begin(), classes.end(), [&](Index a, Index b) {
        return loc.poset.element(a).members.front() < loc.poset.element(b).members.front();
    });
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

    std::vector<PosetElement> elements;
    elements.reserve(classes.size());
    for (Index c : classes)
        elements.push_back(loc.poset.element(c));
    std::vector<std::pair<Index, Index>> rel;
    for (Index i = 0; i < classes.size(); ++i)
        for (Index j = 0; j < classes.size(); ++j)
            if (loc.poset.less(classes[i], classes[j]))
                rel.emplace_back(i, j);
    return FinitePoset(std::move(elements), rel);
}

FinitePoset critical_poset(const SimplicialComplex& k, const Matching& m,
                           std::span<const Simplex> critical)
{
    const FinitePoset x = face_poset(k);
    const Localization loc = localization(x, m);
    return critical_subposet(loc, x, critical);
}

SimplicialComplex order_complex(const FinitePoset& p)
{
    std::vector<Label> labels(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        labels[i] = static_cast<Label>(i);

    // Maximal chains are the minimal-to-maximal paths of the Hasse diagram.
    std::vector<Simplex> chains;
    std::vector<Vertex> path;
    std::function<void(Index)> walk = [&](Index x) {
        path.push_back(x);
        if (p.upper_covers(x).empty()) {
            std::vector<Vertex> sorted(path.begin(), path.end());
            std::sort(sorted.begin(), sorted.end());
            chains.push_back(Simplex::from_sorted(std::move(sorted)));
        } else {
            for (Index y : p.upper_covers(x))
                walk(y);
        }
        path.pop_back();
    };
    for (Index m : p.minimal_elements())
        walk(m);
    return SimplicialComplex::from_generators(labels, chains);
}

ThinnessReport is_thin_with_bottom(const FinitePoset& p)
{
    for (Index i = 0; i < p.size(); ++i) {
        if (!p.grade(i))
            throw Error(ErrorCode::NotGraded, "element " + std::to_string(i) + " has no grade");
        if (p.lower_covers(i).empty() && *p.grade(i) != 0)
            throw Error(ErrorCode::NotGraded,
                        "minimal element " + std::to_string(i) + " has non-zero grade");
        for (Index j : p.upper_covers(i))
            if (*p.grade(j) != *p.grade(i) + 1)
                throw Error(ErrorCode::NotGraded, "cover " + std::to_string(i) + " < " +
                                                      std::to_string(j) + " skips a grade");
    }

    ThinnessReport report;
    auto fail = [&](std::optional<Index> lo, Index hi, std::size_t count) {
        report.thin = false;
        report.violation = std::make_pair(lo, hi);
        report.interior_size = count;
    };
    for (Index y = 0; y < p.size() && report.thin; ++y) {
        // [0̂, y] for grade-1 elements: exactly two atoms below.
        if (*p.grade(y) == 1 && p.lower_covers(y).size() != 2) {
            fail(std::nullopt, y, p.lower_covers(y).size());
            break;
        }
        // [x, y] with grade difference 2.
        std::map<Index, std::size_t> middle_count;
        for (Index z : p.lower_covers(y))
            for (Index x : p.lower_covers(z))
                ++middle_count[x];
        for (auto [x, count] : middle_count)
            if (count != 2) {
                fail(x, y, count);
                break;
            }
    }
    return report;
}

namespace {

/// Colour refinement run jointly on both posets so colours are comparable.
std::pair<std::vector<int>, std::vector<int>> refine_colours(const FinitePoset& p,
                                                             const FinitePoset& q)
{
    auto heights = [](const FinitePoset& x, bool up) {
        std::vector<int> h(x.size(), -1);
        std::function<int(Index)> rec = [&](Index i) {
            if (h[i] >= 0)
                return h[i];
            int best = 0;
            for (Index j : up ? x.upper_covers(i) : x.lower_covers(i))
                best = std::max(best, rec(j) + 1);
            return h[i] = best;
        };
        for (Index i = 0; i < x.size(); ++i)
            rec(i);
        return h;
    };

    std::array<const FinitePoset*, 2> posets{&p, &q};
    std::array<std::vector<int>, 2> colour;
    {
        std::map<std::vector<int>, int> ids;
        std::array<std::vector<std::vector<int>>, 2> sig;
        for (int s = 0; s < 2; ++s) {
            auto below = heights(*posets[s], false);
            auto above = heights(*posets[s], true);
            for (Index i = 0; i < posets[s]->size(); ++i)
                sig[s].push_back({below[i], above[i],
                                  static_cast<int>(posets[s]->strictly_above(i).count())});
        }
        for (int s = 0; s < 2; ++s)
            for (auto& v : sig[s])
                colour[s].push_back(ids.try_emplace(v, static_cast<int>(ids.size())).first->second);
    }

    std::size_t classes = 0;
    for (;;) {
        std::map<std::vector<int>, int> ids;
        std::array<std::vector<int>, 2> next;
        for (int s = 0; s < 2; ++s)
            for (Index i = 0; i < posets[s]->size(); ++i) {
                std::vector<int> sig{colour[s][i]};
                std::vector<int> ups, downs;
                for (Index j : posets[s]->upper_covers(i))
                    ups.push_back(colour[s][j]);
                for (Index j : posets[s]->lower_covers(i))
                    downs.push_back(colour[s][j]);
                std::sort(ups.begin(), ups.end());
                std::sort(downs.begin(), downs.end());
                sig.push_back(-1);
                sig.insert(sig.end(), ups.begin(), ups.end());
                sig.push_back(-2);
                sig.insert(sig.end(), downs.begin(), downs.end());
                next[s].push_back(ids.try_emplace(sig, static_cast<int>(ids.size())).first->second);
            }
        colour = std::move(next);
        if (ids.size() == classes)
            break;
        classes = ids.size();
    }
    return {colour[0], colour[1]};
}

} // namespace

bool are_isomorphic(const FinitePoset& p, const FinitePoset& q, std::size_t limit)
{
    if (p.size() > limit || q.size() > limit)
        throw Error(ErrorCode::SizeLimitExceeded,
                    "isomorphism test limited to " + std::to_string(limit) + " elements");
    if (p.size() != q.size() || p.covers().size() != q.covers().size())
        return false;
    const std::size_t n = p.size();
    if (n == 0)
        return true;

    auto [cp, cq] = refine_colours(p, q);
    {
        auto sp = cp, sq = cq;
        std::sort(sp.begin(), sp.end());
        std::sort(sq.begin(), sq.end());
        if (sp != sq)
            return false;
    }

    std::map<int, std::size_t> class_size;
    for (int c : cp)
        ++class_size[c];

    // Visit rarest colours first, then grow along the Hasse diagram.
    std::vector<Index> order;
    std::vector<char> queued(n, 0);
    std::vector<Index> seeds(n);
    for (Index i = 0; i < n; ++i)
        seeds[i] = i;
    std::stable_sort(seeds.begin(), seeds.end(),
                     [&](Index a, Index b) { return class_size[cp[a]] < class_size[cp[b]]; });
    for (Index s : seeds) {
        if (queued[s])
            continue;
        queued[s] = 1;
        std::size_t head = order.size();
        order.push_back(s);
        for (; head < order.size(); ++head) {
            Index x = order[head];
            for (const auto* nbrs : {&p.upper_covers(x), &p.lower_covers(x)})
                for (Index y : *nbrs)
                    if (!queued[y]) {
                        queued[y] = 1;
                        order.push_back(y);
                    }
        }
    }

    auto cover_matrix = [](const FinitePoset& x) {
        std::vector<boost::dynamic_bitset<>> m(x.size(), boost::dynamic_bitset<>(x.size()));
        for (auto [a, b] : x.covers())
            m[a].set(b);
        return m;
    };
    const auto pm = cover_matrix(p);
    const auto qm = cover_matrix(q);

    std::vector<Index> image(n, 0);
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> extend = [&](std::size_t depth) {
        if (depth == n)
            return true;
        Index x = order[depth];
        for (Index y = 0; y < n; ++y) {
            if (used[y] || cq[y] != cp[x])
                continue;
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d) {
                Index px = order[d];
                Index py = image[px];
                ok = pm[px].test(x) == qm[py].test(y) && pm[x].test(px) == qm[y].test(py);
            }
            if (!ok)
                continue;
            used[y] = 1;
            image[x] = y;
            if (extend(depth + 1))
                return true;
            used[y] = 0;
        }
        return false;
    };
    return extend(0);
}

} // namespace smorse
