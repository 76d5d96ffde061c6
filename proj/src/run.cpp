#include "strongmorse/run.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "strongmorse/error.hpp"
#include "strongmorse/facet_file.hpp"

namespace smorse {

bool RunReport::verification_passed() const
{
    return std::all_of(iterations.begin(), iterations.end(), [](const IterationRecord& r) {
        return !r.verification || r.verification->passed();
    });
}

std::string fnv1a_hex(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

std::size_t default_workers()
{
    if (const char* env = std::getenv("STRONGMORSE_WORKERS")) {
        char* end = nullptr;
        unsigned long n = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && n > 0)
            return n;
    }
    return 1;
}

RunReport execute(const SimplicialComplex& k, const RunConfig& config, std::string input_name,
                  std::string input_hash)
{
    if (config.iterations == 0)
        throw Error(ErrorCode::InvalidArgument, "iterations must be at least 1");
    RunReport report;
    report.input_name = std::move(input_name);
    report.input_hash = std::move(input_hash);
    report.method = config.method;
    report.seed = config.seed;
    report.input_size = k.size();
    report.iterations.resize(config.iterations);

    auto one = [&](std::size_t i) {
        IterationRecord& rec = report.iterations[i];
        rec.iteration = i;
        rec.seed = Rng::iteration_seed(config.seed, i);
        Rng rng(rec.seed);
        rec.result = reduce(k, config.method, rng);
        rec.output_size = rec.result.output_size;
        rec.wall_time_seconds = rec.result.wall_time_seconds;
        if (config.verify)
            rec.verification = verify_reduction(k, rec.result);
    };

    const std::size_t workers =
        std::min(config.workers.value_or(default_workers()), config.iterations);
    if (workers <= 1) {
        for (std::size_t i = 0; i < config.iterations; ++i)
            one(i);
    } else {
        // Each slot is written by exactly one worker; the report keeps
        // iteration order regardless of completion order.
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i; (i = next.fetch_add(1)) < config.iterations;)
                        one(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : pool)
            t.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    double size_sum = 0.0, time_sum = 0.0;
    for (const auto& r : report.iterations) {
        size_sum += static_cast<double>(r.output_size);
        time_sum += r.wall_time_seconds;
    }
    report.mean_size = size_sum / static_cast<double>(config.iterations);
    report.mean_time = time_sum / static_cast<double>(config.iterations);
    return report;
}

namespace {

std::string read_bytes(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::InputNotFound, "cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SimplicialComplex load_complex(const std::filesystem::path& path, std::string& hash)
{
    const std::string bytes = read_bytes(path);
    hash = fnv1a_hex(bytes);
    try {
        return to_complex(parse_facet_file(bytes));
    } catch (const SyntaxError& e) {
        throw Error(ErrorCode::ParseFailure, path.string() + ": " + e.what());
    }
}

} // namespace

RunReport run(const RunConfig& config)
{
    std::string hash;
    const auto k = load_complex(config.input, hash);
    auto report = execute(k, config, config.input.stem().string(), hash);
    if (!report.verification_passed()) {
        for (const auto& r : report.iterations)
            if (r.verification && !r.verification->passed())
                throw Error(ErrorCode::VerificationFailure,
                            "iteration " + std::to_string(r.iteration) + " failed " +
                                r.verification->failures());
    }
    return report;
}

Json run_report_to_json(const SimplicialComplex& k, const RunReport& report, const RunConfig& config)
{
    Json iterations = Json::array();
    for (const auto& r : report.iterations) {
        Json it = {{"iteration", r.iteration}, {"seed", r.seed}, {"output_size", r.output_size}};
        if (config.include_timing)
            it["wall_time_seconds"] = r.wall_time_seconds;
        if (r.verification)
            it["verification"] = verification_to_json(*r.verification);
        if (config.include_results)
            it["result"] = core_result_to_json(k, r.result, config.include_timing);
        iterations.push_back(std::move(it));
    }
    Json out = {{"input", {{"name", report.input_name}, {"hash", report.input_hash}, {"size", report.input_size}}},
                {"method", std::string(to_string(report.method))},
                {"seed", report.seed},
                {"iterations", std::move(iterations)},
                {"mean_size", report.mean_size}};
    if (config.include_timing)
        out["mean_time"] = report.mean_time;
    if (config.verify)
        out["verification_passed"] = report.verification_passed();
    return out;
}

std::vector<SummaryRow> aggregate_statistics(const std::vector<RunReport>& reports)
{
    std::vector<SummaryRow> rows;
    std::vector<std::pair<double, double>> sums;
    for (const auto& rep : reports) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& r) {
            return r.name == rep.input_name && r.method == rep.method;
        });
        if (it == rows.end()) {
            rows.push_back({rep.input_name, rep.input_size, rep.method, 0.0, 0.0, 0});
            sums.emplace_back(0.0, 0.0);
            it = rows.end() - 1;
        }
        auto& s = sums[static_cast<std::size_t>(it - rows.begin())];
        for (const auto& r : rep.iterations) {
            s.first += static_cast<double>(r.output_size);
            s.second += r.wall_time_seconds;
            ++it->runs;
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].runs > 0) {
            rows[i].mean_size = sums[i].first / static_cast<double>(rows[i].runs);
            rows[i].mean_time = sums[i].second / static_cast<double>(rows[i].runs);
        }
    return rows;
}

namespace {

std::string fixed(double x, int digits)
{
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << x;
    return out.str();
}

} // namespace

std::string summary_csv(const std::vector<SummaryRow>& rows)
{
    std::string out = "name,original_size,method,mean_size,mean_time\n";
    for (const auto& r : rows)
        out += r.name + "," + std::to_string(r.original_size) + "," + std::string(to_string(r.method)) +
               "," + fixed(r.mean_size, 2) + "," + fixed(r.mean_time, 6) + "\n";
    return out;
}

std::string summary_csv_wide(const std::vector<SummaryRow>& rows)
{
    const CoreKind columns[] = {CoreKind::StrongCore, CoreKind::WeakCore, CoreKind::StrongInternalCore,
                                CoreKind::Combined};
    std::string out = "name,original_size";
    for (auto c : columns)
        out += "," + std::string(to_string(c));
    out += "\n";
    std::vector<std::string> names;
    for (const auto& r : rows)
        if (std::find(names.begin(), names.end(), r.name) == names.end())
            names.push_back(r.name);
    for (const auto& name : names) {
        std::size_t original = 0;
        std::string line;
        for (auto c : columns) {
            line += ",";
            for (const auto& r : rows)
                if (r.name == name && r.method == c) {
                    line += fixed(r.mean_size, 2);
                    original = r.original_size;
                }
        }
        for (const auto& r : rows)
            if (r.name == name)
                original = r.original_size;
        out += name + "," + std::to_string(original) + line + "\n";
    }
    return out;
}

BenchManifest read_bench_manifest(const std::filesystem::path& path)
{
    const std::string bytes = read_bytes(path);
    Json j;
    try {
        j = Json::parse(bytes);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::ParseFailure, path.string() + ": " + e.what());
    }
    BenchManifest m;
    try {
        const auto base = path.parent_path();
        for (const auto& in : j.at("inputs")) {
            std::filesystem::path p = in.at("path").get<std::string>();
            if (p.is_relative())
                p = base / p;
            std::string name = in.contains("name") ? in.at("name").get<std::string>() : p.stem().string();
            m.inputs.push_back({std::move(name), std::move(p)});
        }
        for (const auto& method : j.at("methods"))
            m.methods.push_back(core_kind_from_string(method.get<std::string>()));
        m.iterations = j.value("iterations", std::size_t{1});
        m.seed = j.value("seed", std::uint64_t{0});
        m.verify = j.value("verify", false);
        m.wide = j.value("layout", std::string("long")) == "wide";
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseFailure, path.string() + ": " + e.what());
    }
    if (m.iterations == 0)
        throw Error(ErrorCode::InvalidArgument, "iterations must be at least 1");
    return m;
}

std::vector<RunReport> run_bench(const BenchManifest& manifest)
{
    std::vector<RunReport> reports;
    for (const auto& input : manifest.inputs) {
        std::string hash;
        const auto k = load_complex(input.path, hash);
        for (auto method : manifest.methods) {
            RunConfig config;
            config.input = input.path;
            config.method = method;
            config.seed = manifest.seed;
            config.iterations = manifest.iterations;
            config.verify = manifest.verify;
            reports.push_back(execute(k, config, input.name, hash));
        }
    }
    return reports;
}

} // namespace smorse
