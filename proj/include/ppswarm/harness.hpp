#pragma once

// Experiment orchestration: plans, seed derivation, the on-disk result store,
// parallel execution with resume, and metric tables.
//
// Store layout under an output directory:
//   manifest.json  plan digest, code version, canonical plan
//   runs.jsonl     one JSON object per (algorithm, function, dimension, run) cell
//   metrics.csv    experiment,pair,function,dimension,checkpoint,metric,value,tie_count
//   metrics.json   the same reports, structured

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "algorithm_config.hpp"
#include "metrics.hpp"
#include "objectives.hpp"
#include "random.hpp"
#include "run.hpp"

namespace ppswarm {

inline constexpr const char* kCodeVersion = "1.0.0";

/// Bad plan file or inconsistent plan contents.
class PlanError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The store on disk was produced by a different plan.
class ManifestMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Seed of one run cell: a frozen mix of the master seed and the cell's
/// canonical encoding "algorithm|function|dimension|run".
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view algorithm,
                                 std::string_view function, std::size_t dimension,
                                 std::size_t run)
{
    std::string key;
    key.reserve(algorithm.size() + function.size() + 24);
    key.append(algorithm).append("|").append(function).append("|");
    key.append(std::to_string(dimension)).append("|").append(std::to_string(run));
    return mix64(mix64(master) ^ fnv1a64(key));
}

/// Default checkpoint grid, cut at max_iter (which is always included).
inline std::vector<std::size_t> default_checkpoints(std::size_t max_iter)
{
    std::vector<std::size_t> out;
    for (const std::size_t t : {50, 100, 200, 400, 1000, 3000, 10000})
        if (t <= max_iter)
            out.push_back(t);
    if (out.empty() || out.back() != max_iter)
        out.push_back(max_iter);
    return out;
}

struct ExperimentPlan {
    std::string experiment = "experiment";
    std::vector<std::string> algorithms;
    std::vector<std::pair<std::string, std::string>> pairs; // (A, B): B is compared against A
    std::vector<std::size_t> dimensions = {2, 5, 10, 20, 40};
    std::vector<std::string> functions; // empty = all
    std::size_t runs = 100;
    std::size_t max_iter = 10000;
    std::vector<std::size_t> checkpoints = default_checkpoints(10000);
    std::uint64_t master_seed = 0;
    NoiseModel noise;
    std::size_t n = 32;
    std::size_t parallelism = 1;
    /// Give A and B the same seed for a given cell (common random numbers).
    bool paired_seeds = false;
    /// Template for per-algorithm constants; family and variant come from the label.
    AlgorithmConfig parameters;

    AlgorithmConfig config_for(const std::string& label) const
    {
        AlgorithmConfig c = parameters;
        const AlgorithmConfig parsed = parse_algorithm(label);
        c.family = parsed.family;
        c.variant = parsed.variant;
        c.n = n;
        c.noise = noise;
        return c;
    }

    FunctionCollection collection() const
    {
        FunctionCollection out;
        for (const std::size_t d : dimensions)
            for (const auto& fi : list_collection(d))
                if (functions.empty() ||
                    std::find(functions.begin(), functions.end(), fi.spec->label) != functions.end())
                    out.push_back(fi);
        return out;
    }

    std::uint64_t seed_for(const std::string& algorithm, const FunctionInstance& fi,
                           std::size_t run) const
    {
        return derive_seed(master_seed, paired_seeds ? std::string_view{} : algorithm,
                           fi.spec->label, fi.dim, run);
    }

    /// Throws PlanError on any inconsistency.
    void validate() const
    {
        if (pairs.empty())
            throw PlanError("plan: at least one pair is required");
        if (runs == 0)
            throw PlanError("plan: runs must be >= 1");
        if (parallelism == 0)
            throw PlanError("plan: parallelism must be >= 1");
        if (dimensions.empty())
            throw PlanError("plan: no dimensions");
        for (const std::size_t d : dimensions)
            if (!is_collection_dim(d))
                throw PlanError("plan: dimension " + std::to_string(d) +
                                " is not one of 2, 5, 10, 20, 40");
        for (const auto& f : functions) {
            try {
                find_objective(f);
            } catch (const std::invalid_argument& e) {
                throw PlanError(std::string("plan: ") + e.what());
            }
        }
        try {
            validate_checkpoints(checkpoints, max_iter);
            for (const auto& a : algorithms)
                config_for(a).validate();
        } catch (const std::invalid_argument& e) {
            throw PlanError(std::string("plan: ") + e.what());
        }
        for (const auto& [a, b] : pairs)
            for (const auto& x : {a, b})
                if (std::find(algorithms.begin(), algorithms.end(), x) == algorithms.end())
                    throw PlanError("plan: pair member " + x + " is not a listed algorithm");
        if (checkpoints.empty())
            throw PlanError("plan: no checkpoints");
        if (collection().empty())
            throw PlanError("plan: function filter selects no collection members");
    }

    // JSON ----------------------------------------------------------------

    nlohmann::ordered_json to_json(bool include_parallelism = true) const
    {
        nlohmann::ordered_json j;
        j["experiment"] = experiment;
        j["algorithms"] = algorithms;
        auto& pj = j["pairs"] = nlohmann::ordered_json::array();
        for (const auto& [a, b] : pairs)
            pj.push_back(a + ":" + b);
        j["dimensions"] = dimensions;
        j["functions"] = functions;
        j["runs"] = runs;
        j["max_iter"] = max_iter;
        j["checkpoints"] = checkpoints;
        j["master_seed"] = master_seed;
        if (noise.kind == NoiseModel::Kind::gaussian)
            j["noise"] = {{"kind", "gaussian"}, {"sigma", noise.sigma}};
        else
            j["noise"] = {{"kind", "scaled_t"}, {"df", noise.df}};
        j["n"] = n;
        if (include_parallelism)
            j["parallelism"] = parallelism;
        j["paired_seeds"] = paired_seeds;
        const auto& p = parameters;
        j["parameters"] = {{"w", p.pso.w},
                           {"c1", p.pso.c1},
                           {"c2", p.pso.c2},
                           {"q_min", p.bat.q_min},
                           {"q_max", p.bat.q_max},
                           {"pulse_rate", p.bat.pulse_rate},
                           {"loudness", p.bat.loudness},
                           {"local_step_sigma", p.bat.local_step_sigma},
                           {"bat_sign", p.bat.sign},
                           {"phi", p.cso.phi},
                           {"de_weight", p.de.weight},
                           {"de_crossover", p.de.crossover},
                           {"base_projection", p.base_projection}};
        return j;
    }

    /// Digest of everything that influences stored numbers (parallelism excluded).
    std::string digest() const
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(to_json(false).dump())));
        return buf;
    }

    static ExperimentPlan from_json(const nlohmann::json& j)
    {
        if (!j.is_object())
            throw PlanError("plan: top level must be a JSON object");
        static const std::set<std::string> known = {
            "experiment", "algorithms", "pairs", "dimensions", "functions", "runs",
            "max_iter", "checkpoints", "master_seed", "noise", "n", "parallelism",
            "paired_seeds", "parameters"};
        for (const auto& [key, _] : j.items())
            if (!known.count(key))
                throw PlanError("plan: unknown field '" + key + "'");

        ExperimentPlan p;
        try {
            if (j.contains("experiment")) p.experiment = j.at("experiment").get<std::string>();
            if (j.contains("algorithms"))
                p.algorithms = j.at("algorithms").get<std::vector<std::string>>();
            if (j.contains("pairs")) {
                for (const auto& e : j.at("pairs")) {
                    std::string a, b;
                    if (e.is_string()) {
                        const auto s = e.get<std::string>();
                        const auto colon = s.find(':');
                        if (colon == std::string::npos)
                            throw PlanError("plan: pair '" + s + "' must look like A:B");
                        a = s.substr(0, colon);
                        b = s.substr(colon + 1);
                    } else if (e.is_array() && e.size() == 2) {
                        a = e[0].get<std::string>();
                        b = e[1].get<std::string>();
                    } else {
                        throw PlanError("plan: pairs must be \"A:B\" strings or [A, B] arrays");
                    }
                    p.pairs.emplace_back(a, b);
                }
            }
            if (j.contains("dimensions"))
                p.dimensions = j.at("dimensions").get<std::vector<std::size_t>>();
            if (j.contains("functions"))
                p.functions = j.at("functions").get<std::vector<std::string>>();
            if (j.contains("runs")) p.runs = j.at("runs").get<std::size_t>();
            if (j.contains("max_iter")) p.max_iter = j.at("max_iter").get<std::size_t>();
            p.checkpoints = j.contains("checkpoints")
                                ? j.at("checkpoints").get<std::vector<std::size_t>>()
                                : default_checkpoints(p.max_iter);
            if (j.contains("master_seed")) p.master_seed = j.at("master_seed").get<std::uint64_t>();
            if (j.contains("noise")) p.noise = noise_from_json(j.at("noise"));
            if (j.contains("n")) p.n = j.at("n").get<std::size_t>();
            if (j.contains("parallelism")) p.parallelism = j.at("parallelism").get<std::size_t>();
            if (j.contains("paired_seeds")) p.paired_seeds = j.at("paired_seeds").get<bool>();
            if (j.contains("parameters")) apply_parameters(p.parameters, j.at("parameters"));
        } catch (const nlohmann::json::exception& e) {
            throw PlanError(std::string("plan: ") + e.what());
        }
        // algorithms named only in pairs are implied
        for (const auto& [a, b] : p.pairs)
            for (const auto& x : {a, b})
                if (std::find(p.algorithms.begin(), p.algorithms.end(), x) == p.algorithms.end())
                    p.algorithms.push_back(x);
        try {
            for (const auto& a : p.algorithms)
                parse_algorithm(a);
        } catch (const std::invalid_argument& e) {
            throw PlanError(std::string("plan: ") + e.what());
        }
        p.validate();
        return p;
    }

    static ExperimentPlan load(const std::filesystem::path& path)
    {
        std::ifstream in(path);
        if (!in)
            throw PlanError("cannot open plan file " + path.string());
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw PlanError("plan " + path.string() + ": " + e.what());
        }
        return from_json(j);
    }

private:
    static NoiseModel noise_from_json(const nlohmann::json& j)
    {
        NoiseModel m;
        const auto kind = j.value("kind", std::string("gaussian"));
        if (kind == "gaussian") {
            m.kind = NoiseModel::Kind::gaussian;
            m.sigma = j.value("sigma", 0.005);
        } else if (kind == "scaled_t" || kind == "t") {
            m.kind = NoiseModel::Kind::scaled_t;
            m.df = j.value("df", 5);
        } else {
            throw PlanError("plan: noise.kind must be gaussian or scaled_t");
        }
        try {
            m.validate();
        } catch (const std::invalid_argument& e) {
            throw PlanError(std::string("plan: ") + e.what());
        }
        return m;
    }

    static void apply_parameters(AlgorithmConfig& c, const nlohmann::json& j)
    {
        for (const auto& [key, v] : j.items()) {
            if (key == "w") c.pso.w = v.get<double>();
            else if (key == "c1") c.pso.c1 = v.get<double>();
            else if (key == "c2") c.pso.c2 = v.get<double>();
            else if (key == "q_min") c.bat.q_min = v.get<double>();
            else if (key == "q_max") c.bat.q_max = v.get<double>();
            else if (key == "pulse_rate") c.bat.pulse_rate = v.get<double>();
            else if (key == "loudness") c.bat.loudness = v.get<double>();
            else if (key == "local_step_sigma") c.bat.local_step_sigma = v.get<double>();
            else if (key == "bat_sign") c.bat.sign = v.get<double>();
            else if (key == "phi") c.cso.phi = v.get<double>();
            else if (key == "de_weight") c.de.weight = v.get<double>();
            else if (key == "de_crossover") c.de.crossover = v.get<double>();
            else if (key == "base_projection") c.base_projection = v.get<bool>();
            else throw PlanError("plan: unknown parameter '" + key + "'");
        }
    }
};

// Store records -----------------------------------------------------------

/// One persisted run cell.
struct StoredRun {
    std::string experiment;
    std::string algorithm;
    std::string function; // label, e.g. "F16"
    std::size_t dimension = 0;
    std::size_t run = 0;
    bool failed = false;
    std::string error;
    RunRecord record;

    std::string key() const
    {
        return algorithm + "|" + function + "|" + std::to_string(dimension) + "|" +
               std::to_string(run);
    }

    nlohmann::ordered_json to_json() const
    {
        nlohmann::ordered_json j;
        j["experiment"] = experiment;
        j["algorithm"] = algorithm;
        j["function"] = function;
        j["dimension"] = dimension;
        j["run"] = run;
        j["seed"] = record.seed;
        j["config_digest"] = record.config_digest;
        j["status"] = failed ? "failed" : "ok";
        if (failed) {
            j["error"] = error;
            return j;
        }
        auto& cp = j["checkpoints"] = nlohmann::ordered_json::array();
        for (const auto& [t, v] : record.checkpoints)
            cp.push_back({t, v});
        j["final_best_value"] = record.final_best_value;
        j["final_best_point"] = record.final_best_point;
        j["evaluations"] = record.evaluations;
        j["violations"] = {{"containment", record.violations.containment},
                           {"monotonicity", record.violations.monotonicity}};
        return j;
    }

    static StoredRun from_json(const nlohmann::json& j)
    {
        StoredRun s;
        s.experiment = j.at("experiment").get<std::string>();
        s.algorithm = j.at("algorithm").get<std::string>();
        s.function = j.at("function").get<std::string>();
        s.dimension = j.at("dimension").get<std::size_t>();
        s.run = j.at("run").get<std::size_t>();
        s.record.seed = j.at("seed").get<std::uint64_t>();
        s.record.algorithm = s.algorithm;
        s.record.config_digest = j.at("config_digest").get<std::string>();
        s.failed = j.at("status").get<std::string>() == "failed";
        if (s.failed) {
            s.error = j.value("error", std::string());
            return s;
        }
        for (const auto& e : j.at("checkpoints"))
            s.record.checkpoints.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<double>());
        s.record.final_best_value = j.at("final_best_value").get<double>();
        s.record.final_best_point = j.at("final_best_point").get<std::vector<double>>();
        s.record.evaluations = j.at("evaluations").get<std::size_t>();
        s.record.violations.containment = j.at("violations").at("containment").get<std::size_t>();
        s.record.violations.monotonicity = j.at("violations").at("monotonicity").get<std::size_t>();
        return s;
    }
};

/// Append-only run store in one directory.
class ResultStore {
public:
    explicit ResultStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path manifest_path() const { return dir_ / "manifest.json"; }
    std::filesystem::path runs_path() const { return dir_ / "runs.jsonl"; }
    std::filesystem::path metrics_path() const { return dir_ / "metrics.csv"; }
    std::filesystem::path metrics_json_path() const { return dir_ / "metrics.json"; }

    bool has_manifest() const { return std::filesystem::exists(manifest_path()); }

    /// Start over: wipe the store files and write a fresh manifest.
    void reset(const ExperimentPlan& plan) const
    {
        std::filesystem::create_directories(dir_);
        for (const auto& p : {runs_path(), metrics_path(), metrics_json_path()})
            std::filesystem::remove(p);
        nlohmann::ordered_json m;
        m["experiment"] = plan.experiment;
        m["plan_digest"] = plan.digest();
        m["code_version"] = kCodeVersion;
        m["plan"] = plan.to_json(false);
        std::ofstream out(manifest_path());
        out << m.dump(2) << '\n';
        std::ofstream touch(runs_path(), std::ios::app);
    }

    nlohmann::json read_manifest() const
    {
        std::ifstream in(manifest_path());
        if (!in)
            throw std::runtime_error("no manifest in " + dir_.string());
        nlohmann::json m;
        in >> m;
        return m;
    }

    /// Refuse to continue a store written for a different plan.
    void check_manifest(const ExperimentPlan& plan) const
    {
        const auto m = read_manifest();
        const auto stored = m.value("plan_digest", std::string());
        if (stored != plan.digest())
            throw ManifestMismatch("store " + dir_.string() + " was written by a different plan (digest " +
                                   stored + ", plan has " + plan.digest() +
                                   "); rerun with --force to overwrite");
    }

    /// All complete lines of runs.jsonl. A torn final line (interrupted write) is skipped.
    std::vector<StoredRun> load() const
    {
        std::vector<StoredRun> out;
        std::ifstream in(runs_path());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            try {
                out.push_back(StoredRun::from_json(nlohmann::json::parse(line)));
            } catch (const nlohmann::json::exception&) {
                if (in.peek() != std::char_traits<char>::eof())
                    throw std::runtime_error("corrupt record in " + runs_path().string());
            }
        }
        return out;
    }

    /// Drop a torn trailing line so later appends start on a fresh line.
    void repair_tail() const
    {
        std::ifstream in(runs_path());
        std::stringstream buf;
        buf << in.rdbuf();
        std::string content = buf.str();
        if (content.empty() || content.back() == '\n')
            return;
        const auto last = content.rfind('\n');
        content.resize(last == std::string::npos ? 0 : last + 1);
        in.close();
        std::ofstream out(runs_path(), std::ios::trunc);
        out << content;
    }

private:
    std::filesystem::path dir_;
};

// Metrics over a store ------------------------------------------------------

namespace detail {

inline std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// Compute every declared pair's reports (one per dimension) from stored runs.
/// Runs that failed are dropped together with the partner algorithm's same run.
inline std::vector<ComparisonReport> compute_reports(const ExperimentPlan& plan,
                                                     const std::vector<StoredRun>& stored,
                                                     std::ostream* log = nullptr)
{
    std::map<std::string, const StoredRun*> by_key;
    for (const auto& s : stored)
        if (s.experiment == plan.experiment)
            by_key[s.key()] = &s;

    const auto members = plan.collection();
    std::vector<std::size_t> dims = plan.dimensions;
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());

    std::vector<ComparisonReport> reports;
    for (const auto& [alg_a, alg_b] : plan.pairs) {
        for (const std::size_t d : dims) {
            std::vector<CheckpointMatrix> ma, mb;
            for (const auto& fi : members) {
                if (fi.dim != d)
                    continue;
                CheckpointMatrix a{alg_a, fi.id(), plan.checkpoints, {}};
                CheckpointMatrix b{alg_b, fi.id(), plan.checkpoints, {}};
                for (std::size_t r = 0; r < plan.runs; ++r) {
                    const auto key = [&](const std::string& alg) {
                        return alg + "|" + fi.spec->label + "|" + std::to_string(d) + "|" +
                               std::to_string(r);
                    };
                    const auto ia = by_key.find(key(alg_a));
                    const auto ib = by_key.find(key(alg_b));
                    if (ia == by_key.end() || ib == by_key.end())
                        throw std::runtime_error("store is missing run " + std::to_string(r) +
                                                 " of " + fi.id() + " for pair " + alg_a + ":" +
                                                 alg_b);
                    if (ia->second->failed || ib->second->failed) {
                        if (log)
                            *log << "warning: excluding run " << r << " of " << fi.id()
                                 << " from " << alg_a << ":" << alg_b << " (failed run)\n";
                        continue;
                    }
                    auto row = [&](const StoredRun& s) {
                        std::vector<double> v;
                        for (const auto& [t, val] : s.record.checkpoints)
                            v.push_back(val);
                        if (v.size() != plan.checkpoints.size())
                            throw std::runtime_error("stored run has a different checkpoint grid");
                        return v;
                    };
                    a.values.push_back(row(*ia->second));
                    b.values.push_back(row(*ib->second));
                }
                if (a.values.empty()) {
                    if (log)
                        *log << "warning: no usable runs of " << fi.id() << " for " << alg_a
                             << ":" << alg_b << "\n";
                    continue;
                }
                a.validate();
                b.validate();
                ma.push_back(std::move(a));
                mb.push_back(std::move(b));
            }
            if (!ma.empty())
                reports.push_back(compare(ma, mb, d));
        }
    }
    return reports;
}

inline const char* kMetricsHeader = "experiment,pair,function,dimension,checkpoint,metric,value,tie_count";

/// Long-format CSV of all reports. Aggregate rows use function "ALL".
inline std::string metrics_csv(const std::string& experiment,
                               const std::vector<ComparisonReport>& reports)
{
    std::ostringstream out;
    out << kMetricsHeader << '\n';
    auto emit = [&](const ComparisonReport& r, const std::string& fn, std::size_t t,
                    const char* metric, double v, std::size_t ties) {
        out << experiment << ',' << r.pair() << ',' << fn << ',' << r.dimension << ',' << t << ','
            << metric << ',' << detail::fmt_double(v) << ',' << ties << '\n';
    };
    for (const auto& r : reports) {
        for (std::size_t k = 0; k < r.checkpoints.size(); ++k) {
            const auto t = r.checkpoints[k];
            emit(r, "ALL", t, "winning_proportion", r.wins[k].proportion(), r.wins[k].ties);
            emit(r, "ALL", t, "relerr_a", r.relerr_a[k], 0);
            emit(r, "ALL", t, "relerr_b", r.relerr_b[k], 0);
        }
        for (const auto& fc : r.per_function) {
            for (std::size_t k = 0; k < r.checkpoints.size(); ++k) {
                const auto t = r.checkpoints[k];
                emit(r, fc.function, t, "winning_proportion", fc.wins[k].proportion(),
                     fc.wins[k].ties);
                emit(r, fc.function, t, "relerr_a", fc.re[k].a, 0);
                emit(r, fc.function, t, "relerr_b", fc.re[k].b, 0);
            }
        }
    }
    return out.str();
}

inline nlohmann::ordered_json metrics_json(const std::string& experiment,
                                           const std::vector<ComparisonReport>& reports)
{
    // ordered_json stores members in a vector: build children fully, then insert
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json wp = nlohmann::ordered_json::array(), ties = wp, pf = wp;
        for (const auto& w : r.wins) {
            wp.push_back(w.proportion());
            ties.push_back(w.ties);
        }
        for (const auto& fc : r.per_function) {
            nlohmann::ordered_json fw = nlohmann::ordered_json::array(), fa = fw, fb = fw;
            for (std::size_t k = 0; k < fc.wins.size(); ++k) {
                fw.push_back(fc.wins[k].proportion());
                fa.push_back(fc.re[k].a);
                fb.push_back(fc.re[k].b);
            }
            nlohmann::ordered_json f;
            f["function"] = fc.function;
            f["winning_proportion"] = std::move(fw);
            f["relerr_a"] = std::move(fa);
            f["relerr_b"] = std::move(fb);
            pf.push_back(std::move(f));
        }
        nlohmann::ordered_json e;
        e["pair"] = r.pair();
        e["dimension"] = r.dimension;
        e["checkpoints"] = r.checkpoints;
        e["winning_proportion"] = std::move(wp);
        e["tie_count"] = std::move(ties);
        e["relerr_a"] = r.relerr_a;
        e["relerr_b"] = r.relerr_b;
        e["functions"] = std::move(pf);
        arr.push_back(std::move(e));
    }
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["reports"] = std::move(arr);
    return j;
}

// Execution -----------------------------------------------------------------

struct ExecuteOptions {
    /// Stop after this many newly executed cells (simulates an interruption).
    std::optional<std::size_t> cell_limit;
    std::ostream* log = nullptr;
};

struct ExecutionResult {
    std::vector<ComparisonReport> reports;
    std::size_t cells_total = 0;
    std::size_t cells_run = 0; // newly executed this call
    std::size_t cells_failed = 0;
    bool complete = false;
};

namespace detail {

struct Cell {
    std::string algorithm;
    FunctionInstance fi;
    std::size_t run;

    std::string key() const
    {
        return algorithm + "|" + fi.spec->label + "|" + std::to_string(fi.dim) + "|" +
               std::to_string(run);
    }
};

inline std::vector<Cell> enumerate_cells(const ExperimentPlan& plan)
{
    std::vector<Cell> cells;
    for (const auto& fi : plan.collection())
        for (const auto& alg : plan.algorithms)
            for (std::size_t r = 0; r < plan.runs; ++r)
                cells.push_back({alg, fi, r});
    return cells;
}

inline StoredRun execute_cell(const ExperimentPlan& plan, const Cell& c)
{
    StoredRun s;
    s.experiment = plan.experiment;
    s.algorithm = c.algorithm;
    s.function = c.fi.spec->label;
    s.dimension = c.fi.dim;
    s.run = c.run;
    const auto config = plan.config_for(c.algorithm);
    const auto seed = plan.seed_for(c.algorithm, c.fi, c.run);
    try {
        s.record = run(config, c.fi, c.fi.spec->default_domain(c.fi.dim), seed, plan.max_iter,
                       plan.checkpoints);
    } catch (const RunFailure& e) {
        s.failed = true;
        s.error = e.what();
        s.record.seed = seed;
        s.record.algorithm = config.label();
        s.record.config_digest = config.digest();
    }
    return s;
}

/// Run the given cells on `threads` workers; results reach runs.jsonl in cell order.
inline std::size_t run_cells(const ExperimentPlan& plan, const std::vector<Cell>& todo,
                             const ResultStore& store, std::ostream* log)
{
    std::ofstream out(store.runs_path(), std::ios::app);
    if (!out)
        throw std::runtime_error("cannot append to " + store.runs_path().string());

    std::vector<std::optional<StoredRun>> slots(todo.size());
    std::size_t next_write = 0, failed = 0;
    std::atomic<std::size_t> next_cell{0};
    std::mutex mu;
    std::exception_ptr error;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next_cell.fetch_add(1);
            if (i >= todo.size())
                return;
            StoredRun result;
            try {
                result = execute_cell(plan, todo[i]);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!error)
                    error = std::current_exception();
                next_cell = todo.size();
                return;
            }
            std::lock_guard lock(mu);
            slots[i] = std::move(result);
            while (next_write < slots.size() && slots[next_write]) {
                const auto& s = *slots[next_write];
                if (s.failed) {
                    ++failed;
                    if (log)
                        *log << "warning: run failed: " << s.key() << ": " << s.error << '\n';
                }
                out << s.to_json().dump() << '\n';
                out.flush();
                slots[next_write].reset();
                ++next_write;
            }
        }
    };

    const std::size_t threads = std::max<std::size_t>(1, std::min(plan.parallelism, todo.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (error)
        std::rethrow_exception(error);
    return failed;
}

inline ExecutionResult continue_store(const ExperimentPlan& plan, const ResultStore& store,
                                      const ExecuteOptions& opts)
{
    store.repair_tail();
    const auto existing = store.load();
    std::set<std::string> done;
    for (const auto& s : existing)
        done.insert(s.key());

    const auto cells = enumerate_cells(plan);
    std::vector<Cell> todo;
    for (const auto& c : cells)
        if (!done.count(c.key()))
            todo.push_back(c);
    if (opts.cell_limit && todo.size() > *opts.cell_limit)
        todo.resize(*opts.cell_limit);

    ExecutionResult res;
    res.cells_total = cells.size();
    res.cells_run = todo.size();
    res.cells_failed = run_cells(plan, todo, store, opts.log);
    res.complete = done.size() + todo.size() >= cells.size();
    if (!res.complete)
        return res;

    res.reports = compute_reports(plan, store.load(), opts.log);
    {
        std::ofstream csv(store.metrics_path(), std::ios::trunc);
        csv << metrics_csv(plan.experiment, res.reports);
    }
    {
        std::ofstream js(store.metrics_json_path(), std::ios::trunc);
        js << metrics_json(plan.experiment, res.reports).dump(2) << '\n';
    }
    return res;
}

} // namespace detail

/// Run a plan from scratch into `outdir`, replacing whatever store is there.
inline ExecutionResult execute(const ExperimentPlan& plan, const std::filesystem::path& outdir,
                               const ExecuteOptions& opts = {})
{
    plan.validate();
    ResultStore store(outdir);
    store.reset(plan);
    return detail::continue_store(plan, store, opts);
}

/// Complete only the cells missing from an existing store written by the same plan.
inline ExecutionResult resume(const ExperimentPlan& plan, const std::filesystem::path& outdir,
                              const ExecuteOptions& opts = {})
{
    plan.validate();
    ResultStore store(outdir);
    store.check_manifest(plan);
    return detail::continue_store(plan, store, opts);
}

// Sweeps --------------------------------------------------------------------

/// Noise-sweep variants of a plan: one per sigma (gaussian) and one per df (scaled t).
inline std::vector<ExperimentPlan> sweep_plans(const ExperimentPlan& base,
                                               const std::vector<double>& sigmas,
                                               const std::vector<int>& dfs)
{
    std::vector<ExperimentPlan> out;
    for (const double s : sigmas) {
        ExperimentPlan p = base;
        p.noise = NoiseModel::gaussian(s);
        char tag[32];
        std::snprintf(tag, sizeof tag, "-sigma%g", s);
        p.experiment = base.experiment + tag;
        p.validate();
        out.push_back(std::move(p));
    }
    for (const int df : dfs) {
        ExperimentPlan p = base;
        p.noise = NoiseModel::scaled_t(df);
        p.experiment = base.experiment + "-t" + std::to_string(df);
        p.validate();
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace ppswarm
