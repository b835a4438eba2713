#pragma once

// Command-line surface. Exit codes: 0 success, 1 runtime failure, 2 usage or config error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "harness.hpp"
#include "objectives.hpp"
#include "report.hpp"

namespace ppswarm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

namespace cli_detail {

inline std::string fmt(double v, const char* spec = "%g")
{
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

inline std::string domain_text(const ObjectiveSpec& s)
{
    const std::size_t d = s.collection_dims().front();
    const Box box = s.domain(d);
    bool cube = true;
    for (std::size_t k = 1; k < d; ++k)
        cube = cube && box.lower(k) == box.lower(0) && box.upper(k) == box.upper(0);
    if (cube) {
        if (s.label == "F25")
            return "[-d^2, d^2]^d";
        return "[" + fmt(box.lower(0)) + ", " + fmt(box.upper(0)) + "]^" +
               (s.fixed_dim ? std::to_string(d) : std::string("d"));
    }
    std::string out;
    for (std::size_t k = 0; k < d; ++k)
        out += (k ? " x " : "") + std::string("[") + fmt(box.lower(k)) + ", " + fmt(box.upper(k)) + "]";
    return out;
}

inline bool min_depends_on_d(const ObjectiveSpec& s)
{
    return !s.fixed_dim && s.known_min(5) != s.known_min(10);
}

inline std::string known_min_text(const ObjectiveSpec& s)
{
    if (s.label == "F24")
        return "-418.9829d";
    if (s.label == "F25")
        return "-d(d+4)(d-1)/6";
    return fmt(s.known_min(s.collection_dims().front()), "%.7g");
}

inline std::string dims_text(const ObjectiveSpec& s)
{
    std::string out;
    for (const auto d : s.collection_dims())
        out += (out.empty() ? "" : ",") + std::to_string(d);
    return out;
}

inline nlohmann::ordered_json registry_json()
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : registry()) {
        nlohmann::ordered_json e;
        e["label"] = s.label;
        e["name"] = s.name;
        e["dims"] = s.collection_dims();
        nlohmann::ordered_json dom, mins;
        for (const auto d : s.collection_dims()) {
            const Box b = s.domain(d);
            dom[std::to_string(d)] = {{"lower", b.lower()}, {"upper", b.upper()}};
            mins[std::to_string(d)] = s.known_min(d);
        }
        e["domain"] = dom;
        if (min_depends_on_d(s))
            e["known_min"] = mins;
        else
            e["known_min"] = s.known_min(s.collection_dims().front());
        e["unimodal"] = s.unimodal;
        e["separable"] = s.separable;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, sep))
        if (!cell.empty())
            out.push_back(cell);
    return out;
}

} // namespace cli_detail

inline int cmd_list(std::optional<std::size_t> dim, bool as_json, std::ostream& out,
                    std::ostream& err)
{
    if (dim && !is_collection_dim(*dim)) {
        err << "error: no test functions at d=" << *dim << " (expected 2, 5, 10, 20 or 40)\n";
        return kExitUsage;
    }
    if (as_json) {
        out << cli_detail::registry_json().dump(2) << '\n';
        return kExitOk;
    }
    char line[256];
    std::snprintf(line, sizeof line, "%-5s %-15s %-12s %-26s %-16s %-9s %-9s\n", "label", "name",
                  "dims", "domain", "known_min", "unimodal", "separable");
    out << line;
    for (const auto& s : registry()) {
        const auto dims = s.collection_dims();
        if (dim && std::find(dims.begin(), dims.end(), *dim) == dims.end())
            continue;
        std::snprintf(line, sizeof line, "%-5s %-15s %-12s %-26s %-16s %-9s %-9s\n",
                      s.label.c_str(), s.name.c_str(), cli_detail::dims_text(s).c_str(),
                      cli_detail::domain_text(s).c_str(), cli_detail::known_min_text(s).c_str(),
                      s.unimodal ? "yes" : "no", s.separable ? "yes" : "no");
        out << line;
    }
    return kExitOk;
}

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    std::optional<std::size_t> parallelism;
    bool force = false;
};

namespace cli_detail {

inline void apply(ExperimentPlan& plan, const RunOverrides& o)
{
    if (o.seed) plan.master_seed = *o.seed;
    if (o.runs) plan.runs = *o.runs;
    if (o.parallelism) plan.parallelism = *o.parallelism;
    plan.validate();
}

/// Execute or resume one plan into `outdir`, printing a short summary.
inline int run_plan(const ExperimentPlan& plan, const std::filesystem::path& outdir, bool force,
                    std::ostream& out, std::ostream& err)
{
    ResultStore store(outdir);
    ExecutionResult res;
    if (!force && store.has_manifest()) {
        res = resume(plan, outdir, {std::nullopt, &err});
        out << "resumed " << outdir.string() << ": " << res.cells_run << " of " << res.cells_total
            << " cells executed\n";
    } else {
        res = execute(plan, outdir, {std::nullopt, &err});
        out << "ran " << res.cells_run << " cells into " << outdir.string() << '\n';
    }
    if (res.cells_failed)
        err << "warning: " << res.cells_failed << " run(s) failed and were excluded pairwise\n";
    for (const auto& r : res.reports) {
        const auto t = r.checkpoints.back();
        out << "  " << r.pair() << " d=" << r.dimension << " t=" << t
            << "  P=" << fmt(r.winning_proportion_at(t), "%.3f")
            << "  RE_a=" << fmt(r.relerr_at(t, false), "%.3f")
            << "  RE_b=" << fmt(r.relerr_at(t, true), "%.3f") << '\n';
    }
    return kExitOk;
}

} // namespace cli_detail

inline int cmd_run(const std::filesystem::path& plan_path, const std::filesystem::path& outdir,
                   const RunOverrides& overrides, std::ostream& out, std::ostream& err)
{
    ExperimentPlan plan;
    try {
        plan = ExperimentPlan::load(plan_path);
        cli_detail::apply(plan, overrides);
    } catch (const PlanError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    try {
        return cli_detail::run_plan(plan, outdir, overrides.force, out, err);
    } catch (const ManifestMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

inline int cmd_sweep(const std::filesystem::path& plan_path, const std::filesystem::path& outdir,
                     const std::vector<double>& sigmas, const std::vector<int>& dfs,
                     const RunOverrides& overrides, std::ostream& out, std::ostream& err)
{
    std::vector<ExperimentPlan> plans;
    try {
        auto base = ExperimentPlan::load(plan_path);
        cli_detail::apply(base, overrides);
        if (sigmas.empty() && dfs.empty())
            throw PlanError("sweep: give --sigma and/or --tdf values");
        plans = sweep_plans(base, sigmas, dfs);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    try {
        std::ostringstream combined;
        combined << kMetricsHeader << '\n';
        for (const auto& p : plans) {
            const auto sub = outdir / p.experiment;
            cli_detail::run_plan(p, sub, overrides.force, out, err);
            std::ifstream in(ResultStore(sub).metrics_path());
            std::string line;
            std::getline(in, line);
            while (std::getline(in, line))
                combined << line << '\n';
        }
        std::ofstream(outdir / "sweep_metrics.csv") << combined.str();
        out << "wrote " << (outdir / "sweep_metrics.csv").string() << '\n';
        return kExitOk;
    } catch (const ManifestMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

/// Writes <prefix>.svg and <prefix>.csv; the prefix defaults to <dir>/<kind>_<A>_<B>.
inline int cmd_report(const std::filesystem::path& dir, const std::string& kind_name,
                      const std::string& pair, std::optional<std::filesystem::path> prefix,
                      std::ostream& out, std::ostream& err)
{
    PlotKind kind;
    if (kind_name == "winning")
        kind = PlotKind::winning;
    else if (kind_name == "relerr")
        kind = PlotKind::relerr;
    else {
        err << "error: --plot must be winning or relerr\n";
        return kExitUsage;
    }
    std::ifstream in(ResultStore(dir).metrics_path());
    if (!in) {
        err << "error: no metrics.csv in " << dir.string() << '\n';
        return kExitUsage;
    }
    std::vector<MetricRow> rows;
    try {
        rows = read_metrics_csv(in);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    if (rows.empty()) {
        err << "error: store " << dir.string() << " has no metrics\n";
        return kExitUsage;
    }
    const auto panels = build_panels(rows, kind, pair);
    if (panels.empty()) {
        err << "error: pair " << pair << " not found in " << dir.string() << "/metrics.csv\n";
        return kExitUsage;
    }
    std::string stem = kind_name + "_" + pair;
    std::replace(stem.begin(), stem.end(), ':', '_');
    const auto base = prefix.value_or(dir / stem);
    const std::string title = (kind == PlotKind::winning ? "Winning proportion, " : "Relative error, ") + pair;
    std::ofstream(base.string() + ".svg") << panels_svg(panels, kind, title);
    std::ofstream(base.string() + ".csv") << panels_csv(panels);
    out << "wrote " << base.string() << ".svg and " << base.string() << ".csv\n";
    return kExitOk;
}

/// Parse argv and dispatch.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr)
{
    CLI::App app{"Swarm optimizers with perturbation-projection exploration: benchmark runner"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "Print the test-function registry");
    std::optional<std::size_t> list_dim;
    bool list_json = false;
    list->add_option("--dim", list_dim, "Only functions in the collection at this dimension");
    list->add_flag("--json", list_json, "Emit the registry as JSON");

    RunOverrides ov;
    std::string plan_path, outdir;
    auto add_overrides = [&](CLI::App* sc) {
        sc->add_option("plan", plan_path, "Plan JSON file")->required();
        sc->add_option("--out", outdir, "Output directory")->required();
        sc->add_option("--seed", ov.seed, "Override the master seed");
        sc->add_option("--runs", ov.runs, "Override the number of runs");
        sc->add_option("--parallelism,-j", ov.parallelism, "Worker threads");
        sc->add_flag("--force", ov.force, "Discard an existing store instead of resuming");
    };
    auto* run_cmd = app.add_subcommand("run", "Execute (or resume) an experiment plan");
    add_overrides(run_cmd);

    auto* sweep = app.add_subcommand("sweep", "Run a plan once per noise setting");
    add_overrides(sweep);
    std::string sigma_list, tdf_list;
    sweep->add_option("--sigma", sigma_list, "Comma-separated Gaussian sigmas");
    sweep->add_option("--tdf", tdf_list, "Comma-separated scaled-t degrees of freedom");

    auto* report = app.add_subcommand("report", "Plot metrics of a populated store");
    std::string report_dir, plot_kind, pair;
    std::optional<std::string> report_out;
    report->add_option("dir", report_dir, "Store directory")->required();
    report->add_option("--plot", plot_kind, "winning or relerr")->required();
    report->add_option("--pair", pair, "Algorithm pair A:B")->required();
    report->add_option("--out", report_out, "Output path prefix (without extension)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (*list)
        return cmd_list(list_dim, list_json, out, err);
    if (*run_cmd)
        return cmd_run(plan_path, outdir, ov, out, err);
    if (*sweep) {
        std::vector<double> sigmas;
        std::vector<int> dfs;
        try {
            for (const auto& s : cli_detail::split(sigma_list, ','))
                sigmas.push_back(std::stod(s));
            for (const auto& s : cli_detail::split(tdf_list, ','))
                dfs.push_back(std::stoi(s));
        } catch (const std::exception&) {
            err << "error: --sigma / --tdf take comma-separated numbers\n";
            return kExitUsage;
        }
        return cmd_sweep(plan_path, outdir, sigmas, dfs, ov, out, err);
    }
    if (*report) {
        std::optional<std::filesystem::path> prefix;
        if (report_out)
            prefix = *report_out;
        return cmd_report(report_dir, plot_kind, pair, prefix, out, err);
    }
    return kExitUsage;
}

} // namespace ppswarm
