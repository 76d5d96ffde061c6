#include <doctest.h>

#include "test_support.hpp"

using namespace smorse;
using namespace smorse::testing;

namespace {

std::pair<std::size_t, std::size_t> syntax_position(std::string_view text)
{
    try {
        parse_facet_file(text);
    } catch (const SyntaxError& e) {
        return {e.line(), e.column()};
    }
    return {0, 0};
}

} // namespace

TEST_CASE("bracket format with name and semicolon")
{
    auto f = parse_facet_file("facets:=[[1,2],[2,3],[1,3]];");
    CHECK(f.name == "facets");
    CHECK(f.format == FacetFormat::Bracket);
    CHECK(f.facets == std::vector<std::vector<Label>>{{1, 2}, {2, 3}, {1, 3}});
    CHECK(to_complex(f).labels() == std::vector<Label>{1, 2, 3});
}

TEST_CASE("bracket variants")
{
    CHECK(parse_facet_file("K = [[1, 2, 3]]").name == "K");
    CHECK(parse_facet_file("manifold_2_6_1 :=\n[[1,2,3],\n [1,3,4]];\n").facets.size() == 2);
    CHECK(parse_facet_file("  [ [ -1 , +2 ] ]  ").facets == std::vector<std::vector<Label>>{{-1, 2}});
}

TEST_CASE("plain JSON arrays")
{
    auto f = parse_facet_file("[[0,1,2]]");
    CHECK(f.format == FacetFormat::Json);
    CHECK(f.facets.size() == 1);
    CHECK_THROWS_AS(parse_facet_file("x:=[[0,1,2]]", FacetFormat::Json), SyntaxError);
}

TEST_CASE("lines format with comments")
{
    auto f = parse_facet_file("# a triangle\n0 1\n1 2  # edge\n\n0 2\n");
    CHECK(f.format == FacetFormat::Lines);
    CHECK(f.facets == std::vector<std::vector<Label>>{{0, 1}, {1, 2}, {0, 2}});
}

TEST_CASE("syntax errors carry positions")
{
    CHECK(syntax_position("[[1,2],[2]") == std::pair<std::size_t, std::size_t>{1, 11});
    CHECK(syntax_position("[[1,2],\n [2,x]]") == std::pair<std::size_t, std::size_t>{2, 5});
    CHECK(syntax_position("[[1,2]] trailing") == std::pair<std::size_t, std::size_t>{1, 9});
    CHECK(syntax_position("0 1\n1 two\n") == std::pair<std::size_t, std::size_t>{2, 3});
    CHECK(syntax_position("[[1,2],[99999999999999999999]]").first == 1);
}

TEST_CASE("empty inputs")
{
    for (const char* text : {"", "   \n", "# only a comment\n", "[]", "name:=[];"}) {
        try {
            parse_facet_file(text);
            FAIL("expected EmptyFile for: " << text);
        } catch (const SyntaxError&) {
            FAIL("unexpected syntax error for: " << text);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EmptyFile);
        }
    }
}

TEST_CASE("round trips on random facet lists in every format")
{
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        FacetFile f;
        if (rng.uniform_index(2))
            f.name = "complex_" + std::to_string(trial);
        const std::size_t m = 1 + rng.uniform_index(6);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Label> facet;
            const std::size_t n = 1 + rng.uniform_index(5);
            for (std::size_t j = 0; j < n; ++j)
                facet.push_back(static_cast<Label>(rng.uniform_index(2000)) - 1000);
            f.facets.push_back(facet);
        }
        auto bracket = parse_facet_file(serialize_facet_file(f, FacetFormat::Bracket));
        CHECK(bracket == f);
        auto lines = parse_facet_file(serialize_facet_file(f, FacetFormat::Lines));
        CHECK(lines.facets == f.facets);
        auto json = parse_facet_file(serialize_facet_file(f, FacetFormat::Json));
        CHECK(json.facets == f.facets);
    }
}

TEST_CASE("reading files")
{
    auto f = read_facet_file(fixture_path("boundary_3.txt"));
    CHECK(f.facets.size() == 4);
    try {
        read_facet_file(fixture_path("does_not_exist.txt"));
        FAIL("expected InputNotFound");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InputNotFound);
    }
    auto k = fixture("dunce_hat.txt");
    auto back = to_complex(parse_facet_file(serialize_facet_file(to_facet_file(k, "dh"))));
    CHECK(back == k);
}

TEST_CASE("every bundled fixture parses")
{
    for (const char* name : {"simplex_1.txt", "simplex_2.txt", "simplex_3.txt", "simplex_4.txt",
                             "simplex_5.txt", "boundary_2.json", "boundary_3.txt", "rp2_6.txt",
                             "dunce_hat.txt", "dunce_hat_cone.txt"})
        CHECK_NOTHROW(fixture(name));
    CHECK(fixture("simplex_4.txt") == simplex_complex(4));
    CHECK(fixture("dunce_hat_cone.txt").size() == 99);
}
