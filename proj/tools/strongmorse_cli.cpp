#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "strongmorse/error.hpp"
#include "strongmorse/facet_file.hpp"
#include "strongmorse/homology.hpp"
#include "strongmorse/matching.hpp"
#include "strongmorse/reduce.hpp"
#include "strongmorse/run.hpp"
#include "strongmorse/serialize.hpp"

using namespace smorse;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

SimplicialComplex load(const std::string& path)
{
    return to_complex(read_facet_file(path));
}

Json load_json(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::InputNotFound, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::ParseFailure, path + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
    out << text;
}

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::VerificationFailure:
    case ErrorCode::ReplayMismatch:
    case ErrorCode::IllegalCollapseStep:
        return kFailed;
    default:
        return kUsage;
    }
}

Json strip_timing(Json j)
{
    if (j.is_object()) {
        j.erase("wall_time_seconds");
        for (auto& [key, value] : j.items())
            value = strip_timing(value);
    } else if (j.is_array()) {
        for (auto& value : j)
            value = strip_timing(value);
    }
    return j;
}

/// Replays one recorded core result and returns whether it matches.
bool replay_one(const SimplicialComplex& k, const Json& recorded, std::string& why)
{
    if (!recorded.contains("method") || !recorded.contains("trace"))
        throw Error(ErrorCode::ParseFailure, "recorded result needs 'method' and 'trace'");
    const auto kind = core_kind_from_string(recorded.at("method").get<std::string>());
    const auto trace = trace_from_json(k, recorded.at("trace"));
    const auto result = replay(k, kind, trace.steps);
    Json again = core_result_to_json(k, result, false, true);
    Json before = strip_timing(recorded);
    // implied_g is only reproducible for traces that define it.
    if (before.contains("trace") && !trace.implied_g)
        again["trace"]["implied_g"] = nullptr;
    if (again == before)
        return true;
    for (const char* key : {"critical_poset", "core_facets", "output_size", "trace", "intermediate_size"})
        if (again.value(key, Json()) != before.value(key, Json())) {
            why = std::string("field '") + key + "' differs";
            return false;
        }
    why = "results differ";
    return false;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Strong discrete Morse reductions of simplicial complexes"};
    app.require_subcommand(1);

    std::string input, out_path, method = "strong-internal", format = "json";
    std::uint64_t seed = 0;
    std::size_t iterations = 1;
    bool verify = false, timing = false, summary = false;
    auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a complex and report the result");
    reduce_cmd->add_option("--input", input, "Facet file")->required();
    reduce_cmd->add_option("--method", method, "strong-core, weak-core, strong-internal or weak-then-strong")
        ->check(CLI::IsMember({"strong-core", "weak-core", "strong-internal", "weak-then-strong"}));
    reduce_cmd->add_option("--seed", seed, "Master seed");
    reduce_cmd->add_option("--iterations", iterations, "Independent runs")->check(CLI::PositiveNumber);
    reduce_cmd->add_flag("--verify", verify, "Check every run against the homology oracle");
    reduce_cmd->add_option("--out", out_path, "Write the report here instead of stdout");
    reduce_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    reduce_cmd->add_flag("--timing", timing, "Include wall times in the JSON report");
    reduce_cmd->add_flag("--summary", summary, "Omit traces and posets from the JSON report");

    std::string matching_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check that a matching is acyclic");
    validate_cmd->add_option("--input", input, "Facet file")->required();
    validate_cmd->add_option("--matching", matching_path, "Matching JSON")->required();

    auto* homology_cmd = app.add_subcommand("homology", "Integral homology of a complex");
    homology_cmd->add_option("--input", input, "Facet file")->required();

    std::string manifest_path;
    bool wide = false;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark manifest and print a CSV summary");
    bench_cmd->add_option("--manifest", manifest_path, "Manifest JSON")->required();
    bench_cmd->add_option("--out", out_path, "Write the CSV here instead of stdout");
    bench_cmd->add_flag("--wide", wide, "One row per input with a column per method");

    std::string trace_path;
    auto* replay_cmd = app.add_subcommand("replay", "Re-execute recorded traces and compare the results");
    replay_cmd->add_option("--trace", trace_path, "Report or result JSON")->required();
    replay_cmd->add_option("--input", input, "Facet file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*reduce_cmd) {
            RunConfig config;
            config.input = input;
            config.method = core_kind_from_string(method);
            config.seed = seed;
            config.iterations = iterations;
            config.verify = verify;
            config.include_timing = timing;
            config.include_results = !summary;
            config.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;

            const auto file = read_facet_file(input);
            const auto k = to_complex(file);
            std::ifstream raw(input, std::ios::binary);
            std::stringstream bytes;
            bytes << raw.rdbuf();
            const auto report = execute(k, config, config.input.stem().string(), fnv1a_hex(bytes.str()));

            if (config.format == OutputFormat::Csv)
                emit(summary_csv(aggregate_statistics({report})), out_path);
            else
                emit(run_report_to_json(k, report, config).dump(2) + "\n", out_path);
            if (!report.verification_passed()) {
                for (const auto& r : report.iterations)
                    if (r.verification && !r.verification->passed())
                        std::cerr << "verification failed in iteration " << r.iteration << ": "
                                  << r.verification->failures() << "\n";
                return kFailed;
            }
            return kOk;
        }
        if (*validate_cmd) {
            const auto k = load(input);
            const auto m = matching_from_json(k, load_json(matching_path));
            const auto rep = validate_matching(k, m);
            Json out = {{"valid", rep.valid()},
                        {"members_in_complex", rep.members_in_complex},
                        {"disjoint", rep.disjoint},
                        {"codimension_one", rep.codimension_one},
                        {"acyclic", rep.acyclic},
                        {"violation", rep.violation ? Json(*rep.violation) : Json(nullptr)}};
            Json cycle = Json::array();
            for (const auto& s : rep.witness_cycle)
                cycle.push_back(simplex_to_json(k, s));
            out["witness_cycle"] = std::move(cycle);
            std::cout << out.dump(2) << "\n";
            return rep.valid() ? kOk : kFailed;
        }
        if (*homology_cmd) {
            std::cout << homology_to_json(homology(load(input))).dump() << "\n";
            return kOk;
        }
        if (*bench_cmd) {
            auto manifest = read_bench_manifest(manifest_path);
            if (wide)
                manifest.wide = true;
            const auto reports = run_bench(manifest);
            const auto rows = aggregate_statistics(reports);
            emit(manifest.wide ? summary_csv_wide(rows) : summary_csv(rows), out_path);
            for (const auto& r : reports)
                if (!r.verification_passed()) {
                    std::cerr << "verification failed for " << r.input_name << " ("
                              << to_string(r.method) << ")\n";
                    return kFailed;
                }
            return kOk;
        }
        if (*replay_cmd) {
            const auto k = load(input);
            const Json j = load_json(trace_path);
            std::vector<Json> recorded;
            if (j.contains("iterations")) {
                for (const auto& it : j.at("iterations"))
                    if (it.contains("result"))
                        recorded.push_back(it.at("result"));
                if (recorded.empty())
                    throw Error(ErrorCode::ParseFailure, "report has no recorded results (use a report without --summary)");
            } else {
                recorded.push_back(j);
            }
            std::size_t index = 0;
            for (const auto& r : recorded) {
                std::string why;
                if (!replay_one(k, r, why))
                    throw Error(ErrorCode::ReplayMismatch,
                                "result " + std::to_string(index) + ": " + why);
                ++index;
            }
            std::cout << Json{{"replayed", recorded.size()}, {"identical", true}}.dump() << "\n";
            return kOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
