#ifndef STRONGMORSE_RUN_HPP
#define STRONGMORSE_RUN_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "strongmorse/homology.hpp"
#include "strongmorse/reduce.hpp"
#include "strongmorse/serialize.hpp"

namespace smorse {

enum class OutputFormat { Json, Csv };

struct RunConfig {
    std::filesystem::path input;
    CoreKind method = CoreKind::StrongInternalCore;
    std::uint64_t seed = 0;
    std::size_t iterations = 1;
    OutputFormat format = OutputFormat::Json;
    bool verify = false;
    /// Per-iteration wall times in JSON reports. Off by default so that
    /// reports for equal seeds are byte-identical.
    bool include_timing = false;
    /// Per-iteration traces and posets in JSON reports.
    bool include_results = true;
    /// Worker threads; unset reads STRONGMORSE_WORKERS, defaulting to 1.
    std::optional<std::size_t> workers;
};

struct IterationRecord {
    std::size_t iteration = 0;
    std::uint64_t seed = 0;
    std::size_t output_size = 0;
    double wall_time_seconds = 0.0;
    std::optional<VerificationReport> verification;
    CoreResult result;
};

struct RunReport {
    std::string input_name;
    /// FNV-1a of the input bytes, 16 hex digits.
    std::string input_hash;
    CoreKind method = CoreKind::StrongInternalCore;
    std::uint64_t seed = 0;
    std::size_t input_size = 0;
    std::vector<IterationRecord> iterations;
    double mean_size = 0.0;
    double mean_time = 0.0;

    /// True unless some iteration was verified and failed.
    bool verification_passed() const;
};

std::string fnv1a_hex(std::string_view bytes);

/// Worker count from STRONGMORSE_WORKERS (at least 1).
std::size_t default_workers();

/// Runs the iterations on an already built complex. Iteration i uses
/// Rng::for_iteration(seed, i). Never throws on verification failures;
/// they are recorded in the report.
RunReport execute(const SimplicialComplex& k, const RunConfig& config, std::string input_name,
                  std::string input_hash);

/// Reads config.input and executes. Throws InputNotFound, ParseFailure,
/// or VerificationFailure when verification was requested and failed.
RunReport run(const RunConfig& config);

Json run_report_to_json(const SimplicialComplex& k, const RunReport& report, const RunConfig& config);

struct SummaryRow {
    std::string name;
    std::size_t original_size = 0;
    CoreKind method = CoreKind::StrongCore;
    double mean_size = 0.0;
    double mean_time = 0.0;
    std::size_t runs = 0;
};

/// Means per (input, method), in first-appearance order.
std::vector<SummaryRow> aggregate_statistics(const std::vector<RunReport>& reports);

/// name,original_size,method,mean_size,mean_time
std::string summary_csv(const std::vector<SummaryRow>& rows);
/// One row per input: name, original size, then the mean size for the
/// strong core, weak core, strong internal and combined methods (blank
/// when not run).
std::string summary_csv_wide(const std::vector<SummaryRow>& rows);

struct BenchInput {
    std::string name;
    std::filesystem::path path;
};

struct BenchManifest {
    std::vector<BenchInput> inputs;
    std::vector<CoreKind> methods;
    std::size_t iterations = 1;
    std::uint64_t seed = 0;
    bool verify = false;
    bool wide = false;
};

/// {"inputs":[{"name":..,"path":..}], "methods":[..], "iterations":n,
///  "seed":s, "verify":b, "layout":"long"|"wide"}. Relative paths are
/// resolved against the manifest's directory.
BenchManifest read_bench_manifest(const std::filesystem::path& path);

std::vector<RunReport> run_bench(const BenchManifest& manifest);

} // namespace smorse

#endif
