// Acceptance suite: one PASS / FAIL / SKIP line per criterion.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "strongmorse/poset.hpp"
#include "strongmorse/run.hpp"
#include "strongmorse/serialize.hpp"
#include "strongmorse/strong_morse.hpp"
#include "test_support.hpp"

using namespace smorse;
using namespace smorse::testing;
namespace fs = std::filesystem;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
    Status status = Status::Pass;
    std::string detail;
};

/// Collects the first failure; later expectations still run so the detail
/// names the earliest problem.
class Checker {
public:
    void expect(bool ok, const std::string& what)
    {
        if (!ok && failure_.empty())
            failure_ = what;
        if (!ok)
            ++failures_;
    }
    Outcome outcome(const std::string& summary) const
    {
        if (failures_ == 0)
            return {Status::Pass, summary};
        return {Status::Fail, failure_ + " (" + std::to_string(failures_) + " failed expectations)"};
    }

private:
    std::string failure_;
    std::size_t failures_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt(double x, int digits = 2)
{
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(digits);
    out << x;
    return out.str();
}

// The 200 random complexes shared by criteria 3 and 4.
std::vector<SimplicialComplex> shared_random_complexes()
{
    std::vector<SimplicialComplex> out;
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng = Rng::for_iteration(2024, i);
        out.push_back(random_complex(rng, 7, 7, 5));
    }
    return out;
}

Outcome sphere_with_vertex_order()
{
    const auto start = std::chrono::steady_clock::now();
    Checker c;
    auto k = sphere_boundary_3();
    auto g = identity_on_labels(k);

    auto cls = classify_vertices(k, g);
    c.expect(cls.strong_critical() == std::vector<Vertex>{0, 3}, "strong critical vertices are not {0,3}");

    auto vm = matching_from_vertex_function(k, g);
    Matching expected({{S(k, {1}), S(k, {0, 1})}, {S(k, {2}), S(k, {1, 2})}, {S(k, {0, 2}), S(k, {0, 1, 2})}});
    c.expect(vm.matching == expected, "matching differs from M");
    std::vector<Simplex> crit = vm.critical;
    std::sort(crit.begin(), crit.end());
    std::vector<Simplex> expected_crit{S(k, {0}), S(k, {3}), S(k, {0, 3}), S(k, {1, 3}), S(k, {2, 3}),
                                       S(k, {0, 1, 3}), S(k, {0, 2, 3}), S(k, {1, 2, 3})};
    std::sort(expected_crit.begin(), expected_crit.end());
    c.expect(crit == expected_crit, "critical set differs");

    auto p = critical_poset(k, vm.matching, vm.critical);
    c.expect(counts_by_grade(p) == std::vector<std::size_t>{2, 3, 3}, "cell counts are not (2,3,3)");
    auto covers = [&](std::initializer_list<Label> hi, std::initializer_list<Label> lo) {
        auto h = p.find_singleton(S(k, hi));
        auto l = p.find_singleton(S(k, lo));
        if (!h || !l)
            return false;
        const auto& ups = p.upper_covers(*l);
        return std::find(ups.begin(), ups.end(), *h) != ups.end();
    };
    c.expect(covers({1, 3}, {0}), "(1,3) does not cover (0)");
    c.expect(covers({2, 3}, {0}), "(2,3) does not cover (0)");
    c.expect(is_thin_with_bottom(p).thin, "critical poset is not thin");
    long long chi = 0;
    for (std::size_t d = 0; d < 3; ++d)
        chi += (d % 2 ? -1 : 1) * static_cast<long long>(counts_by_grade(p)[d]);
    c.expect(chi == 2, "Euler characteristic is not 2");
    auto h = homology(order_complex(p));
    c.expect(h.betti == std::vector<std::size_t>{1, 0, 1} && h.torsion == std::vector<std::vector<BigInt>>(3),
             "order complex homology is " + to_string(h));

    // The deterministic g-based engine agrees and verifies.
    auto r = strong_internal_core(k, g);
    c.expect(r.trace.matching == expected, "g-based engine matching differs");
    c.expect(verify_reduction(k, r).passed(), "g-based engine does not verify");

    const double t = seconds_since(start);
    c.expect(t < 1.0, "took " + fmt(t, 3) + " s");
    return c.outcome("M exact, 8 critical cells, counts (2,3,3), thin, chi 2, homology (1,0,1) in " +
                     fmt(t * 1000, 1) + " ms");
}

Outcome localized_critical_poset()
{
    Checker c;
    auto k = sphere_boundary_3();
    Matching m({{S(k, {0, 2}), S(k, {0, 2, 3})},
                {S(k, {0, 3}), S(k, {0, 1, 3})},
                {S(k, {0}), S(k, {0, 1})},
                {S(k, {1, 3}), S(k, {1, 2, 3})},
                {S(k, {1}), S(k, {1, 2})},
                {S(k, {2}), S(k, {2, 3})}});
    c.expect(validate_matching(k, m).valid(), "matching is not acyclic");
    auto x = face_poset(k);
    auto loc = localization(x, m);
    c.expect(loc.poset.size() == 8, "Loc has " + std::to_string(loc.poset.size()) + " elements");
    std::vector<Simplex> crit{S(k, {0, 1, 2}), S(k, {3})};
    auto p = critical_subposet(loc, x, crit);
    c.expect(p.size() == 2, "Crit does not have two elements");
    c.expect(p.covers().size() == 1, "Crit does not have exactly one relation");
    auto top = p.find_singleton(S(k, {0, 1, 2}));
    auto bottom = p.find_singleton(S(k, {3}));
    c.expect(top && bottom && p.less(*bottom, *top), "(3) < (0,1,2) is missing");
    auto h = homology(order_complex(p));
    c.expect(h.betti == std::vector<std::size_t>{1, 0} || h.betti == std::vector<std::size_t>{1},
             "order complex homology is " + to_string(h));
    c.expect(!same_homology(h, homology(k)), "homology unexpectedly matches K");
    return c.outcome("Loc has 8 elements, Crit = {(0,1,2),(3)} with (3) < (0,1,2); homology " + to_string(h) +
                     " differs from (1,0,1)");
}

Outcome partition_and_euler(const std::vector<SimplicialComplex>& complexes)
{
    Checker c;
    std::size_t runs = 0;
    for (std::size_t i = 0; i < complexes.size(); ++i) {
        const auto& k = complexes[i];
        Rng rng = Rng::for_iteration(77, i);
        auto t = strong_morse_reduction(k, rng);
        ++runs;
        const std::string where = "complex " + std::to_string(i);
        c.expect(2 * t.matching.size() + t.critical_set.size() == k.size(), where + ": 2|M| + |C| != |K|");
        c.expect(euler_of_cells(t.critical_set) == k.euler_characteristic(), where + ": chi(C) != chi(K)");
        c.expect(validate_matching(k, t.matching).valid(), where + ": matching invalid");
        c.expect(kahn_acyclic(k, t.matching), where + ": independent acyclicity check failed");
    }
    return c.outcome(std::to_string(runs) + " random complexes, zero failures");
}

Outcome homology_oracle(const std::vector<SimplicialComplex>& complexes)
{
    const auto start = std::chrono::steady_clock::now();
    Checker c;
    std::vector<std::pair<std::string, SimplicialComplex>> inputs;
    for (std::size_t i = 0; i < complexes.size(); ++i)
        inputs.emplace_back("random " + std::to_string(i), complexes[i]);
    inputs.emplace_back("boundary_3", fixture("boundary_3.txt"));
    inputs.emplace_back("rp2_6", fixture("rp2_6.txt"));
    inputs.emplace_back("dunce_hat", fixture("dunce_hat.txt"));
    for (int n = 1; n <= 5; ++n)
        inputs.emplace_back("simplex_" + std::to_string(n), fixture("simplex_" + std::to_string(n) + ".txt"));

    std::size_t runs = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto& [name, k] = inputs[i];
        const auto hk = homology(k);
        const std::size_t seeds = name.rfind("random", 0) == 0 ? 5 : 20;
        for (std::size_t s = 0; s < seeds; ++s) {
            Rng rng = Rng::for_iteration(1000 + i, s);
            auto r = strong_internal_core(k, rng);
            auto h = homology(order_complex(*r.critical_poset));
            c.expect(same_homology(h, hk), name + " seed " + std::to_string(s) + ": " + to_string(h) +
                                               " vs " + to_string(hk));
            ++runs;
        }
    }
    const double t = seconds_since(start);
    c.expect(t < 60.0, "took " + fmt(t, 1) + " s");
    return c.outcome(std::to_string(runs) + " reductions over " + std::to_string(inputs.size()) +
                     " complexes, zero failures, " + fmt(t, 2) + " s");
}

Outcome strong_core_uniqueness()
{
    Checker c;
    std::size_t nontrivial = 0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng gen = Rng::for_iteration(555, i);
        auto k = random_complex(gen, 7, 10, 3);
        std::optional<FinitePoset> first;
        std::size_t first_size = 0;
        for (std::uint64_t s = 0; s < 5; ++s) {
            Rng rng = Rng::for_iteration(556 + i, s);
            auto r = minimal_strong_core(k, rng);
            auto p = face_poset(*r.core_complex);
            if (!first) {
                first = p;
                first_size = r.output_size;
                if (first_size > 1)
                    ++nontrivial;
                continue;
            }
            c.expect(r.output_size == first_size && are_isomorphic(*first, p),
                     "complex " + std::to_string(i) + " seed " + std::to_string(s) + ": cores differ");
        }
    }
    c.expect(nontrivial > 0, "every core was a point");
    return c.outcome("50 complexes x 5 seeds, all cores isomorphic (" + std::to_string(nontrivial) +
                     " with non-trivial cores)");
}

Outcome dunce_hat_regression()
{
    Checker c;
    auto k = fixture("dunce_hat.txt");
    c.expect(k.size() == 49, "fixture does not have 49 simplices");
    Rng rng(6);
    auto strong = minimal_strong_core(k, rng);
    auto weak = minimal_weak_core(k, rng);
    c.expect(strong.output_size == 49, "strong core size " + std::to_string(strong.output_size));
    c.expect(weak.output_size == 49, "weak core size " + std::to_string(weak.output_size));

    RunConfig config;
    config.method = CoreKind::StrongInternalCore;
    config.seed = 6;
    config.iterations = 100;
    config.verify = true;
    auto report = execute(k, config, "dunce_hat", "fixture");
    c.expect(report.mean_size >= 30.0 && report.mean_size <= 46.0, "mean " + fmt(report.mean_size));
    for (const auto& it : report.iterations) {
        const auto& v = *it.verification;
        c.expect(v.passed(), "iteration " + std::to_string(it.iteration) + " failed " + v.failures());
        c.expect(v.output_homology.betti == std::vector<std::size_t>{1, 0, 0} ||
                     same_homology(v.output_homology, HomologyProfile{{1}, {{}}}),
                 "iteration " + std::to_string(it.iteration) + " homology " + to_string(v.output_homology));
    }
    return c.outcome("strong core 49, weak core 49, strong-internal mean " + fmt(report.mean_size) +
                     " over 100 seeds, all verified");
}

Outcome collapsibility()
{
    Checker c;
    const CoreKind kinds[] = {CoreKind::StrongCore, CoreKind::WeakCore, CoreKind::StrongInternalCore,
                              CoreKind::Combined};
    std::size_t runs = 0;
    for (int n = 1; n <= 5; ++n) {
        auto k = fixture("simplex_" + std::to_string(n) + ".txt");
        for (auto kind : kinds)
            for (std::uint64_t s = 0; s < 25; ++s) {
                Rng rng = Rng::for_iteration(static_cast<std::uint64_t>(n) * 10, s);
                auto r = reduce(k, kind, rng);
                c.expect(r.output_size == 1, "simplex_" + std::to_string(n) + " " + std::string(to_string(kind)) +
                                                 " left " + std::to_string(r.output_size) + " cells");
                ++runs;
            }
    }
    std::vector<std::string> fixtures{"simplex_1.txt", "simplex_2.txt", "simplex_3.txt", "simplex_4.txt",
                                      "simplex_5.txt", "boundary_2.json", "boundary_3.txt", "rp2_6.txt",
                                      "dunce_hat.txt"};
    for (const auto& name : fixtures) {
        auto k = fixture(name);
        auto coned = cone(k, 1000);
        for (std::uint64_t s = 0; s < 25; ++s) {
            Rng rng = Rng::for_iteration(999, s);
            auto r = minimal_strong_core(coned, rng);
            c.expect(r.output_size == 1, "cone over " + name + " left " + std::to_string(r.output_size));
            ++runs;
        }
    }
    Rng rng(4);
    c.expect(minimal_strong_core(fixture("dunce_hat_cone.txt"), rng).output_size == 1,
             "bundled dunce hat cone did not collapse");
    return c.outcome(std::to_string(runs) + " runs, every simplex and cone reduced to one cell");
}

Outcome chari_round_trip()
{
    Checker c;
    std::size_t matched = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng = Rng::for_iteration(808, i);
        auto k = random_complex(rng, 7, 6, 4);
        auto m = random_acyclic_matching(k, rng);
        matched += m.size();
        const std::string where = "matching " + std::to_string(i);
        c.expect(kahn_acyclic(k, m) && validate_matching(k, m).valid(), where + ": not a valid acyclic matching");
        auto f = morse_from_matching(k, m);
        c.expect(is_discrete_morse(k, f), where + ": not a discrete Morse function");
        c.expect(matching_from_morse(k, f) == m, where + ": matching not recovered");
        c.expect(critical_simplices(k, f) == unmatched_simplices(k, m), where + ": critical set not recovered");
    }
    return c.outcome("100 random acyclic matchings (" + std::to_string(matched) + " pairs) recovered exactly");
}

Outcome determinism_and_replay()
{
    Checker c;
    const CoreKind kinds[] = {CoreKind::StrongCore, CoreKind::WeakCore, CoreKind::StrongInternalCore,
                              CoreKind::Combined};
    std::size_t replayed = 0;
    for (const char* name : {"dunce_hat.txt", "dunce_hat_cone.txt", "rp2_6.txt", "boundary_3.txt", "simplex_4.txt"}) {
        auto k = fixture(name);
        for (auto kind : kinds) {
            RunConfig config;
            config.method = kind;
            config.seed = 31337;
            config.iterations = 10;
            config.verify = true;
            const auto a = run_report_to_json(k, execute(k, config, name, "x"), config).dump(2);
            const auto b = run_report_to_json(k, execute(k, config, name, "x"), config).dump(2);
            config.workers = 3;
            const auto threaded = run_report_to_json(k, execute(k, config, name, "x"), config).dump(2);
            const std::string where = std::string(name) + " " + std::string(to_string(kind));
            c.expect(a == b, where + ": reports differ between equal seeds");
            c.expect(a == threaded, where + ": reports differ with three workers");

            const Json parsed = Json::parse(a);
            for (const auto& it : parsed.at("iterations")) {
                const Json& emitted = it.at("result");
                auto trace = trace_from_json(k, emitted.at("trace"));
                auto again = replay(k, kind, trace.steps);
                const Json rj = core_result_to_json(k, again);
                if (emitted.contains("critical_poset"))
                    c.expect(rj.at("critical_poset") == emitted.at("critical_poset"),
                             where + ": replayed poset differs");
                if (emitted.contains("core_facets"))
                    c.expect(rj.at("core_facets") == emitted.at("core_facets"), where + ": replayed core differs");
                c.expect(rj.at("trace").at("matching") == emitted.at("trace").at("matching"),
                         where + ": replayed matching differs");
                ++replayed;
            }
        }
    }
    return c.outcome("byte-identical reports; " + std::to_string(replayed) + " traces replayed exactly");
}

struct TableRow {
    const char* name;
    std::size_t original;
    std::size_t strong;
    double weak;
    double internal;
};

// Mean sizes over 100 iterations as published for the Library examples.
const TableRow kTable[] = {
    {"Abalone", 101, 101, 101.00, 73.30},
    {"BH", 131, 131, 131.00, 100.68},
    {"BH_3", 301, 301, 301.00, 206.32},
    {"BH_4", 401, 401, 401.00, 277.06},
    {"BH_5", 501, 501, 501.00, 349.08},
    {"d2_n8_3torsion", 49, 49, 49.00, 38.48},
    {"d2_n8_4torsion", 53, 53, 53.00, 43.66},
    {"d2_n9_5torsion", 65, 65, 65.00, 57.12},
    {"dunce_hat", 49, 49, 49.00, 37.60},
    {"d2n12g6", 122, 122, 122.00, 118.80},
    {"regular_2_21_23_1", 266, 266, 266.00, 259.52},
    {"rand2_n25_p0.328", 1076, 1076, 1074.00, 1069.90},
    {"dunce_hat_in_3_ball", 75, 1, 1.00, 1.00},
    {"Barnette_sphere", 92, 92, 92.00, 40.66},
    {"B_3_9_18", 103, 59, 1.00, 31.38},
    {"trefoil_arc", 193, 193, 1.76, 148.68},
    {"trefoil", 250, 250, 250.00, 206.98},
    {"rudin", 215, 215, 1.00, 137.74},
    {"poincare", 392, 392, 392.00, 361.80},
    {"double_trefoil", 400, 400, 400.00, 380.20},
    {"triple_trefoil_arc", 449, 449, 172.36, 438.62},
    {"triple_trefoil", 536, 536, 536.00, 526.50},
    {"hyperbolic_dodecahedral_space", 718, 718, 718.00, 708.82},
    {"S_3_50_1033", 4232, 4232, 4232.00, 4198.36},
    {"600_cell", 2640, 2640, 2640.00, 2343.46},
    {"CP2", 255, 255, 255.00, 219.78},
    {"RP4", 991, 991, 991.00, 942.36},
};

std::optional<fs::path> find_library_file(const fs::path& dir, const std::string& name)
{
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && (entry.path().stem() == name || entry.path().filename() == name))
            return entry.path();
    return std::nullopt;
}

Outcome gated_library()
{
    fs::path dir = STRONGMORSE_DEFAULT_LIBRARY_DIR;
    if (const char* env = std::getenv("STRONGMORSE_LIBRARY_DIR"))
        dir = env;
    if (!fs::is_directory(dir))
        return {Status::Skip, "no Library of Triangulations data at " + dir.string() +
                                  " (set STRONGMORSE_LIBRARY_DIR)"};
    Checker c;
    std::size_t found = 0;
    std::string summary;
    for (const auto& row : kTable) {
        auto path = find_library_file(dir, row.name);
        if (!path)
            continue;
        ++found;
        auto k = to_complex(read_facet_file(*path));
        const std::string name = row.name;
        c.expect(k.size() == row.original, name + ": " + std::to_string(k.size()) + " simplices, expected " +
                                               std::to_string(row.original));
        Rng rng(10);
        if (name == "Abalone" || name == "dunce_hat_in_3_ball") {
            auto strong = minimal_strong_core(k, rng);
            c.expect(strong.output_size == row.strong, name + ": strong core " + std::to_string(strong.output_size));
        }
        if (name == "Abalone") {
            auto weak = minimal_weak_core(k, rng);
            c.expect(weak.output_size == 101, name + ": weak core " + std::to_string(weak.output_size));
        }
        RunConfig config;
        config.method = CoreKind::StrongInternalCore;
        config.seed = 10;
        config.iterations = 100;
        auto report = execute(k, config, name, "library");
        const double rel = std::abs(report.mean_size - row.internal) / row.internal;
        c.expect(rel <= 0.15, name + ": strong-internal mean " + fmt(report.mean_size) + " vs " + fmt(row.internal));
        summary += (summary.empty() ? "" : ", ") + name + " " + fmt(report.mean_size);
    }
    if (found == 0)
        return {Status::Skip, "library directory " + dir.string() + " holds none of the tabulated examples"};
    return c.outcome(std::to_string(found) + " library examples within tolerance: " + summary);
}

} // namespace

int main()
{
    const auto complexes = shared_random_complexes();
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1, sphere_with_vertex_order},
        {2, localized_critical_poset},
        {3, [&] { return partition_and_euler(complexes); }},
        {4, [&] { return homology_oracle(complexes); }},
        {5, strong_core_uniqueness},
        {6, dunce_hat_regression},
        {7, collapsibility},
        {8, chari_round_trip},
        {9, determinism_and_replay},
        {10, gated_library},
    };
    int failed = 0;
    for (const auto& [id, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {Status::Fail, std::string("exception: ") + e.what()};
        }
        const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Skip ? "SKIP" : "FAIL";
        std::cout << "criterion " << id << ": " << tag << " - " << o.detail << std::endl;
        if (o.status == Status::Fail)
            ++failed;
    }
    return failed == 0 ? 0 : 1;
}
