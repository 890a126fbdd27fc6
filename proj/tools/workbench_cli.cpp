// Command-line front end: synthesize, analyze, simulate, evaluate, or run
// the whole pipeline with file-based handoff between stages.

#include "ftc/workbench.hpp"

#include "CLI11.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace ftc;

namespace {

constexpr int kExitSynth = 2;
constexpr int kExitAnalyze = 3;
constexpr int kExitSimulate = 4;
constexpr int kExitEvaluate = 5;

struct CliOptions {
    std::string config_path;
    WorkbenchConfig wb;
};

void apply_config_file(CliOptions& opt) {
    if (opt.config_path.empty()) return;
    const Fixture f = Fixture::load(opt.config_path);
    if (f.has("paths.aircraft")) opt.wb.aircraft_path = f.text("paths.aircraft");
    if (f.has("paths.weights")) opt.wb.weights_path = f.text("paths.weights");
    if (f.has("paths.scenarios")) opt.wb.scenario_dir = f.text("paths.scenarios");
    if (f.has("seed")) opt.wb.seed = static_cast<std::uint64_t>(f.scalar("seed"));
}

std::string export_path(const WorkbenchConfig& c) { return c.out_dir + "/synthesis.txt"; }
std::string log_path(const WorkbenchConfig& c, const std::string& cs, const std::string& var) {
    return c.out_dir + "/sim_" + cs + "_" + var + ".csv";
}

int cmd_synth(const Workbench& wb) {
    try {
        const auto rows = wb.synthesize();
        fs::create_directories(wb.config().out_dir);
        save_synthesis_export(export_path(wb.config()), rows, wb.config().seed);
        stamp_artifact(export_path(wb.config()), wb.config_hash(), wb.config().seed);
        std::cout << "wrote " << rows.size() << " tuned controllers to "
                  << export_path(wb.config()) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "synthesis failed: " << e.what() << "\n";
        return kExitSynth;
    }
}

int cmd_analyze(const Workbench& wb) {
    try {
        const auto rows = load_synthesis_export(export_path(wb.config()));
        const auto poles = wb.pole_report(rows);
        const MuReport report = wb.analyze(rows);

        fs::create_directories(wb.config().out_dir);
        std::ofstream pf(wb.config().out_dir + "/poles.txt");
        for (const PoleReportEntry& p : poles) {
            pf << p.axis << " " << p.point << (p.stable ? " stable" : " UNSTABLE");
            for (const Complex& z : p.closed_loop_poles)
                pf << " (" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "j)";
            pf << "\n";
        }
        pf.close();
        save_mu_report_csv(wb.config().out_dir + "/mu_report.csv", report);
        stamp_artifact(wb.config().out_dir + "/mu_report.csv", wb.config_hash(), wb.config().seed);
        std::ofstream tf(wb.config().out_dir + "/mu_report.txt");
        tf << mu_report_table(report);
        tf.close();
        std::cout << mu_report_table(report);

        bool rp_ok = true;
        for (const MuEntry& e : report.entries)
            if (e.point >= 3 && !e.pass_rp) rp_ok = false;
        for (const PoleReportEntry& p : poles)
            if (!p.stable) rp_ok = false;
        if (!rp_ok) {
            std::cerr << "robust-performance gate failed for design points 3-6\n";
            return kExitAnalyze;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "analysis failed: " << e.what() << "\n";
        return kExitAnalyze;
    }
}

int cmd_simulate(const Workbench& wb, const std::string& case_name, const std::string& variant) {
    try {
        const auto rows = load_synthesis_export(export_path(wb.config()));
        const GainSchedule schedule = GainSchedule::from_rows(rows);
        const SimLog log = wb.simulate(case_name, variant_from_name(variant), schedule);
        fs::create_directories(wb.config().out_dir);
        const std::string path = log_path(wb.config(), case_name, variant);
        log.save_csv(path);
        stamp_artifact(path, wb.config_hash(), wb.config().seed);
        std::cout << "wrote " << log.records.size() << " samples to " << path << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "simulation failed: " << e.what() << "\n";
        return kExitSimulate;
    }
}

int cmd_evaluate(const Workbench& wb) {
    try {
        std::vector<TrackingReport> reports;
        for (const std::string& cs : {std::string("case1"), std::string("case2")}) {
            const SimLog lqr = SimLog::load_csv(log_path(wb.config(), cs, "lqr"));
            const SimLog shif = SimLog::load_csv(log_path(wb.config(), cs, "shif"));
            const SimLog gs = SimLog::load_csv(log_path(wb.config(), cs, "gs_shif"));
            reports.push_back(compare(cs, lqr, shif, gs));
        }
        save_report_csv(wb.config().out_dir + "/tracking_report.csv", reports);
        stamp_artifact(wb.config().out_dir + "/tracking_report.csv", wb.config_hash(),
                       wb.config().seed);
        save_chart_csv(wb.config().out_dir + "/tracking_chart.csv", reports);
        std::ofstream tf(wb.config().out_dir + "/tracking_report.txt");
        tf << report_table(reports);
        tf.close();
        std::cout << report_table(reports);
        for (const TrackingReport& r : reports)
            if (!r.pass()) {
                std::cerr << "tracking comparison gate failed for " << r.case_name << "\n";
                return kExitEvaluate;
            }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "evaluation failed: " << e.what() << "\n";
        return kExitEvaluate;
    }
}

int cmd_all(const Workbench& wb) {
    int rc = cmd_synth(wb);
    if (rc != 0) return rc;
    rc = cmd_analyze(wb);
    if (rc != 0) return rc;
    for (const std::string& cs : {std::string("case1"), std::string("case2")})
        for (const std::string& var : {std::string("lqr"), std::string("shif"), std::string("gs_shif")}) {
            rc = cmd_simulate(wb, cs, var);
            if (rc != 0) return rc;
        }
    return cmd_evaluate(wb);
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("FTC_WORKBENCH_THREADS")) {
#ifdef _OPENMP
        const int n = std::atoi(threads);
        if (n > 0) omp_set_num_threads(n);
#else
        (void)threads;
#endif
    }

    CLI::App app{"gain-scheduled fault-tolerant control workbench"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --out/--seed/--config after the subcommand

    CliOptions opt;
    app.add_option("--config", opt.config_path, "workbench config file");
    app.add_option("--out", opt.wb.out_dir, "output directory");
    app.add_option("--seed", opt.wb.seed, "optimizer seed");

    auto* synth = app.add_subcommand("synth", "tune controllers at every design point");
    synth->add_option("--points", opt.wb.points, "design point subset (1..6)");

    auto* analyze = app.add_subcommand("analyze", "pole + robustness report from the export");

    std::string case_name = "case1", variant = "gs_shif";
    auto* simulate = app.add_subcommand("simulate", "run one fault scenario");
    simulate->add_option("--case", case_name, "scenario name (case1, case2, none)");
    simulate->add_option("--variant", variant, "controller variant (lqr, shif, gs_shif)")
        ->check(CLI::IsMember({"lqr", "shif", "gs_shif"}));

    auto* evaluate = app.add_subcommand("evaluate", "tracking comparison across variants");
    auto* all = app.add_subcommand("all", "full pipeline: synth, analyze, 6 runs, evaluate");

    CLI11_PARSE(app, argc, argv);

    try {
        apply_config_file(opt);
        for (int p : opt.wb.points)
            if (p < 1 || p > 6) {
                std::cerr << "design points must be in 1..6\n";
                return kExitSynth;
            }
        const Workbench wb = Workbench::load(opt.wb);
        if (synth->parsed()) return cmd_synth(wb);
        if (analyze->parsed()) return cmd_analyze(wb);
        if (simulate->parsed()) return cmd_simulate(wb, case_name, variant);
        if (evaluate->parsed()) return cmd_evaluate(wb);
        if (all->parsed()) return cmd_all(wb);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
