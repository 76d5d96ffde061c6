#include <doctest.h>

#include "strongmorse/poset.hpp"
#include "test_support.hpp"

using namespace smorse;
using namespace smorse::testing;
using Index = FinitePoset::Index;

namespace {

FinitePoset chain(std::size_t n)
{
    std::vector<PosetElement> e(n);
    std::vector<std::pair<Index, Index>> rel;
    for (Index i = 0; i + 1 < n; ++i)
        rel.emplace_back(i, i + 1);
    return FinitePoset(e, rel);
}

/// Face poset relation decided directly by inclusion.
bool brute_less(const FinitePoset& p, Index x, Index y)
{
    const auto& a = p.element(x).members.front();
    const auto& b = p.element(y).members.front();
    return a != b && a.is_face_of(b);
}

} // namespace

TEST_CASE("transitive closure and reduction")
{
    std::vector<PosetElement> e(4);
    std::vector<std::pair<Index, Index>> rel{{0, 1}, {1, 2}, {0, 2}, {2, 3}};
    FinitePoset p(e, rel);
    CHECK(p.less(0, 3));
    CHECK_FALSE(p.less(3, 0));
    CHECK(p.upper_covers(0) == std::vector<Index>{1});
    CHECK(p.covers().size() == 3);
    CHECK(p.minimal_elements() == std::vector<Index>{0});
    CHECK(p.maximal_elements() == std::vector<Index>{3});
}

TEST_CASE("cyclic relations are rejected")
{
    std::vector<PosetElement> e(3);
    std::vector<std::pair<Index, Index>> rel{{0, 1}, {1, 2}, {2, 0}};
    try {
        FinitePoset p(e, rel);
        FAIL("expected CyclicRelation");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::CyclicRelation);
    }
}

TEST_CASE("face poset order is inclusion")
{
    Rng rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        auto k = random_complex(rng, 6, 5);
        auto p = face_poset(k);
        REQUIRE(p.size() == k.size());
        for (Index x = 0; x < p.size(); ++x) {
            CHECK(p.grade(x) == p.element(x).members.front().dim());
            for (Index y = 0; y < p.size(); ++y)
                CHECK(p.less(x, y) == brute_less(p, x, y));
            for (Index y : p.upper_covers(x))
                CHECK(p.element(y).members.front().dim() == p.element(x).members.front().dim() + 1);
        }
    }
}

TEST_CASE("localization of the empty matching is the face poset")
{
    auto k = sphere_boundary_3();
    auto x = face_poset(k);
    auto loc = localization(x, Matching{});
    CHECK(loc.poset.size() == x.size());
    for (Index i = 0; i < x.size(); ++i)
        CHECK(loc.class_of[i] == i);
}

TEST_CASE("localization is antisymmetric exactly for acyclic matchings")
{
    Rng rng(31);
    int acyclic_seen = 0, cyclic_seen = 0;
    for (int trial = 0; trial < 150; ++trial) {
        auto k = random_complex(rng, 5, 4);
        auto x = face_poset(k);
        // Random disjoint codimension-one pairs, acyclic or not.
        std::vector<MatchedPair> pairs;
        std::set<Simplex> used;
        for (const auto& s : k.simplices())
            for (const auto& f : s.dim() > 0 ? s.boundary() : std::vector<Simplex>{})
                if (!used.count(s) && !used.count(f) && rng.uniform_index(3) == 0) {
                    pairs.push_back({f, s});
                    used.insert(f);
                    used.insert(s);
                }
        Matching m(pairs);
        const bool acyclic = kahn_acyclic(k, m);
        (acyclic ? acyclic_seen : cyclic_seen)++;
        if (acyclic) {
            auto loc = localization(x, m);
            CHECK(loc.poset.size() == k.size() - m.size());
            // Loc's order: brute-force reachability over projected covers.
            const std::size_t n = loc.poset.size();
            std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
            for (Index a = 0; a < x.size(); ++a)
                for (Index b : x.upper_covers(a))
                    if (loc.class_of[a] != loc.class_of[b])
                        reach[loc.class_of[a]][loc.class_of[b]] = 1;
            for (std::size_t w = 0; w < n; ++w)
                for (std::size_t i = 0; i < n; ++i)
                    if (reach[i][w])
                        for (std::size_t j = 0; j < n; ++j)
                            if (reach[w][j])
                                reach[i][j] = 1;
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < n; ++j)
                    CHECK(loc.poset.less(i, j) == (reach[i][j] != 0));
        } else {
            CHECK_THROWS_AS(localization(x, m), Error);
        }
    }
    CHECK(acyclic_seen > 0);
    CHECK(cyclic_seen > 0);
}

TEST_CASE("critical subposet errors")
{
    auto k = simplex_complex(1);
    Matching m({{Simplex{1}, Simplex{0, 1}}});
    std::vector<Simplex> matched{Simplex{1}};
    try {
        critical_poset(k, m, matched);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CriticalSimplexWasMatched);
    }
    std::vector<Simplex> unknown{Simplex{0, 1, 2}};
    try {
        critical_poset(k, m, unknown);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownSimplex);
    }
    std::vector<Simplex> crit{Simplex{0}};
    CHECK(critical_poset(k, m, crit).size() == 1);
}

TEST_CASE("order complex of a chain is a simplex")
{
    auto oc = order_complex(chain(4));
    CHECK(oc.facets().size() == 1);
    CHECK(oc.dimension() == 3);
}

TEST_CASE("order complex of a face poset is the barycentric subdivision")
{
    auto k = simplex_complex(2);
    auto sd = order_complex(face_poset(k));
    CHECK(sd.f_vector() == std::vector<std::size_t>{7, 12, 6});
}

TEST_CASE("thinness")
{
    CHECK(is_thin_with_bottom(face_poset(sphere_boundary_3())).thin);
    CHECK(is_thin_with_bottom(face_poset(simplex_complex(3))).thin);
    // Three triangles sharing an edge: [edge, top] is fine but the face
    // poset of a non-pseudomanifold is still thin; an abstract poset with
    // one atom under a grade-1 element is not.
    std::vector<PosetElement> e{{{}, 0}, {{}, 1}};
    std::vector<std::pair<Index, Index>> rel{{0, 1}};
    auto r = is_thin_with_bottom(FinitePoset(e, rel));
    CHECK_FALSE(r.thin);
    std::vector<PosetElement> ungraded{{{}, std::nullopt}};
    CHECK_THROWS_AS(is_thin_with_bottom(FinitePoset(ungraded, {})), Error);
    std::vector<PosetElement> skip{{{}, 0}, {{}, 2}};
    CHECK_THROWS_AS(is_thin_with_bottom(FinitePoset(skip, rel)), Error);
}

TEST_CASE("isomorphism of posets")
{
    CHECK(are_isomorphic(chain(5), chain(5)));
    CHECK_FALSE(are_isomorphic(chain(5), chain(4)));
    // Relabelled face posets are isomorphic.
    auto a = face_poset(SimplicialComplex::from_facets({{0, 1, 2}, {2, 3}}));
    auto b = face_poset(SimplicialComplex::from_facets({{7, 8}, {8, 5, 6}}));
    CHECK(are_isomorphic(a, b));
    auto c = face_poset(SimplicialComplex::from_facets({{0, 1, 2}, {1, 3}, {3, 4}}));
    CHECK_FALSE(are_isomorphic(a, c));
    // Same counts per grade but different shape: path of 3 edges vs a star.
    auto path = face_poset(SimplicialComplex::from_facets({{0, 1}, {1, 2}, {2, 3}}));
    auto star = face_poset(SimplicialComplex::from_facets({{0, 1}, {0, 2}, {0, 3}}));
    CHECK_FALSE(are_isomorphic(path, star));
    CHECK_THROWS_AS(are_isomorphic(chain(300), chain(300)), Error);
}

TEST_CASE("isomorphism is invariant under random relabeling")
{
    Rng rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        auto k = random_complex(rng, 6, 5);
        std::vector<Label> perm(k.vertex_count());
        std::iota(perm.begin(), perm.end(), 100);
        rng.shuffle(std::span<Label>(perm));
        std::vector<std::vector<Label>> facets;
        for (const auto& f : k.facets()) {
            std::vector<Label> g;
            for (Vertex v : f)
                g.push_back(perm[v]);
            facets.push_back(g);
        }
        auto relabelled = SimplicialComplex::from_facets(facets);
        CHECK(are_isomorphic(face_poset(k), face_poset(relabelled)));
    }
}
