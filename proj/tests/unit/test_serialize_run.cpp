#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "strongmorse/run.hpp"
#include "strongmorse/serialize.hpp"
#include "test_support.hpp"

using namespace smorse;
using namespace smorse::testing;

TEST_CASE("homology JSON shape")
{
    CHECK(homology_to_json(homology(sphere_boundary_3())).dump() == R"({"betti":[1,0,1],"torsion":[[],[],[]]})");
    auto h = homology(fixture("rp2_6.txt"));
    CHECK(homology_from_json(homology_to_json(h)) == h);
}

TEST_CASE("matchings, posets and traces round trip through JSON")
{
    Rng rng(59);
    for (int trial = 0; trial < 40; ++trial) {
        auto k = random_complex(rng);
        auto r = strong_internal_core(k, rng);
        auto m = matching_from_json(k, Json::parse(matching_to_json(k, r.trace.matching).dump()));
        CHECK(m == r.trace.matching);
        auto p = poset_from_json(k, Json::parse(poset_to_json(k, *r.critical_poset).dump()));
        CHECK(p == *r.critical_poset);
        auto t = trace_from_json(k, Json::parse(trace_to_json(k, r.trace).dump()));
        CHECK(t == r.trace);
        auto w = minimal_weak_core(k, rng);
        CHECK(trace_from_json(k, trace_to_json(k, w.trace)) == w.trace);
    }
}

TEST_CASE("matchings accept the bare pair form and reject unknown labels")
{
    auto k = simplex_complex(2);
    auto m = matching_from_json(k, Json::parse("[[[0],[0,1]],[[1,2],[0,1,2]]]"));
    CHECK(m.size() == 2);
    try {
        matching_from_json(k, Json::parse("[[[0],[0,7]]]"));
        FAIL("expected UnknownVertex");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownVertex);
    }
    CHECK_THROWS_AS(matching_from_json(k, Json::parse(R"({"pairs":[{"lower":[0]}]})")), Error);
}

TEST_CASE("classification JSON uses labels")
{
    auto k = SimplicialComplex::from_facets({{10, 11, 12}, {10, 11, 13}, {10, 12, 13}, {11, 12, 13}});
    auto j = classification_to_json(k, classify_vertices(k, identity_on_labels(k)));
    CHECK(j["vertices"][0]["vertex"] == 10);
    CHECK(j["vertices"][0]["strong_critical"] == true);
    CHECK(j["vertices"][1]["witness"] == 10);
    CHECK(j["vertices"][3]["strong_critical"] == true);
}

TEST_CASE("core results omit timing unless asked")
{
    Rng rng(1);
    auto k = simplex_complex(2);
    auto r = minimal_strong_core(k, rng);
    CHECK_FALSE(core_result_to_json(k, r).contains("wall_time_seconds"));
    CHECK(core_result_to_json(k, r, true).contains("wall_time_seconds"));
    CHECK(core_result_to_json(k, r)["core_facets"].size() == 1);
}

TEST_CASE("aggregate statistics")
{
    RunReport a;
    a.input_name = "x";
    a.input_size = 49;
    a.method = CoreKind::StrongInternalCore;
    a.iterations.resize(2);
    a.iterations[0].output_size = 37;
    a.iterations[1].output_size = 38;
    auto rows = aggregate_statistics({a});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mean_size == doctest::Approx(37.5));
    CHECK(rows[0].original_size == 49);

    RunReport b = a;
    b.iterations.resize(1);
    b.iterations[0].output_size = 40;
    b.method = CoreKind::StrongCore;
    rows = aggregate_statistics({a, b});
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].mean_size == doctest::Approx(40.0));

    auto csv = summary_csv(rows);
    CHECK(csv.rfind("name,original_size,method,mean_size,mean_time\n", 0) == 0);
    CHECK(csv.find("x,49,strong-internal,37.50,") != std::string::npos);
    auto wide = summary_csv_wide(rows);
    CHECK(wide.find("x,49,40.00,,37.50,\n") != std::string::npos);
}

TEST_CASE("run on bundled fixtures")
{
    RunConfig c;
    c.input = fixture_path("simplex_2.txt");
    for (auto kind : {CoreKind::StrongCore, CoreKind::WeakCore, CoreKind::StrongInternalCore, CoreKind::Combined}) {
        c.method = kind;
        c.verify = true;
        auto r = run(c);
        CHECK(r.iterations.at(0).output_size == 1);
        CHECK(r.verification_passed());
    }

    c.input = fixture_path("boundary_3.txt");
    c.method = CoreKind::StrongCore;
    c.iterations = 5;
    auto r = run(c);
    for (const auto& it : r.iterations)
        CHECK(it.output_size == 14);
    CHECK(r.mean_size == doctest::Approx(14.0));
    CHECK(r.input_hash.size() == 16);

    c.input = fixture_path("missing.txt");
    try {
        run(c);
        FAIL("expected InputNotFound");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InputNotFound);
    }
}

TEST_CASE("parse failures are reported as such")
{
    auto path = std::filesystem::temp_directory_path() / "strongmorse_bad_input.txt";
    {
        std::ofstream out(path);
        out << "[[1,2],[2]";
    }
    RunConfig c;
    c.input = path;
    try {
        run(c);
        FAIL("expected ParseFailure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseFailure);
    }
    std::filesystem::remove(path);
}

TEST_CASE("reports are identical across worker counts and repeated runs")
{
    auto k = fixture("dunce_hat.txt");
    RunConfig c;
    c.method = CoreKind::StrongInternalCore;
    c.seed = 99;
    c.iterations = 8;
    c.verify = true;
    c.workers = 1;
    auto one = run_report_to_json(k, execute(k, c, "dunce_hat", "h"), c).dump();
    auto again = run_report_to_json(k, execute(k, c, "dunce_hat", "h"), c).dump();
    c.workers = 4;
    auto four = run_report_to_json(k, execute(k, c, "dunce_hat", "h"), c).dump();
    CHECK(one == again);
    CHECK(one == four);
}

TEST_CASE("bench manifests")
{
    auto m = read_bench_manifest(std::string(STRONGMORSE_FIXTURE_DIR) + "/../bench/dunce_hat.json");
    CHECK(m.inputs.size() == 1);
    CHECK(m.methods.size() == 3);
    m.iterations = 3;
    auto reports = run_bench(m);
    auto rows = aggregate_statistics(reports);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].original_size == 49);
    CHECK(rows[0].mean_size == doctest::Approx(49.0));
    CHECK(rows[1].mean_size == doctest::Approx(49.0));
    CHECK(rows[2].mean_size < 49.0);
}
