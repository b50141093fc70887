#include "cli_app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmem/errors.hpp"
#include "qmem/optics.hpp"
#include "qmem/verify/acceptance.hpp"

namespace qmem::cli {
namespace {

std::string format_bool(bool b) { return b ? "true" : "false"; }

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open '" + path + "' for writing");
    return f;
}

struct SweepRow {
    double omega = 0.0;
    Trajectory trajectory;
    LoopReport report;
};

SweepRow sweep_point(const RunConfig& config, double omega) {
    SweepRow row;
    row.omega = omega;
    row.trajectory = run_scenario(make_drive(config, omega), make_law(config), config.periods,
                                  config.steps_per_period);
    if (config.with_entropy) row.trajectory = attach_entropy(std::move(row.trajectory));
    row.report = loop_report(row.trajectory);
    return row;
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

int cmd_run(const RunConfig& config, std::ostream& out) {
    std::ofstream csv;
    std::ofstream json;
    if (!config.output_path.empty()) csv = open_output(config.output_path);
    if (!config.json_path.empty()) json = open_output(config.json_path);

    const SweepRow row = sweep_point(config, config.omega);
    if (csv.is_open()) write_trajectory_csv(csv, row.trajectory);
    const Summary summary = run_summary(config, row.trajectory, row.report);
    write_summary(out, summary);
    if (json.is_open()) write_summary_json(json, summary);
    return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::vector<double> omegas, const std::string& dump_dir,
              std::ostream& out) {
    if (omegas.size() < 2) throw std::invalid_argument("sweep needs at least two frequencies");
    std::sort(omegas.begin(), omegas.end());
    if (std::adjacent_find(omegas.begin(), omegas.end()) != omegas.end()) {
        throw std::invalid_argument("sweep frequencies must be distinct");
    }
    for (double w : omegas) validate(make_drive(config, w), make_law(config));
    std::ofstream json;
    if (!config.json_path.empty()) json = open_output(config.json_path);
    if (!dump_dir.empty()) std::filesystem::create_directories(dump_dir);

    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(omegas.size());
    for (double w : omegas) {
        jobs.push_back(std::async(std::launch::async, [&config, w] { return sweep_point(config, w); }));
    }
    std::vector<SweepRow> rows;
    rows.reserve(jobs.size());
    for (auto& job : jobs) rows.push_back(job.get());

    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        monotone = monotone && rows[i].report.area_geometric < rows[i - 1].report.area_geometric;
    }

    out << "omega,area_geometric,area_integral,analytic_area,ratio_numeric_to_analytic,"
           "crossings_per_lobe,predicted_crossings,pinched\n";
    nlohmann::json json_rows = nlohmann::json::array();
    for (const SweepRow& row : rows) {
        const LoopReport& r = row.report;
        out << format_number(row.omega) << ',' << format_number(r.area_geometric) << ','
            << format_number(r.area_integral) << ',' << optional_number(r.analytic_area) << ','
            << optional_number(r.ratio_numeric_to_analytic) << ',' << format_number(r.crossings_per_lobe)
            << ',' << r.predicted_crossings << ',' << format_bool(r.pinched) << '\n';
        if (!dump_dir.empty()) {
            const auto path = std::filesystem::path(dump_dir) /
                              (std::string(to_string(config.scenario)) + "_omega_" +
                               format_number(row.omega) + ".csv");
            std::ofstream f = open_output(path.string());
            write_trajectory_csv(f, row.trajectory);
        }
        if (json.is_open()) {
            nlohmann::json j;
            j["omega"] = row.omega;
            j["area_geometric"] = r.area_geometric;
            j["area_integral"] = r.area_integral;
            j["analytic_area"] = r.analytic_area ? nlohmann::json(*r.analytic_area) : nlohmann::json();
            j["crossings_per_lobe"] = r.crossings_per_lobe;
            j["predicted_crossings"] = r.predicted_crossings;
            j["pinched"] = r.pinched;
            json_rows.push_back(std::move(j));
        }
    }
    out << "monotone_decreasing = " << format_bool(monotone) << '\n';
    if (json.is_open()) {
        nlohmann::json doc;
        doc["scenario"] = std::string(to_string(config.scenario));
        doc["rows"] = std::move(json_rows);
        doc["monotone_decreasing"] = monotone;
        json << doc.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_compose(double theta, double phi_t, double phi_r, std::ostream& out) {
    if (!std::isfinite(theta) || !std::isfinite(phi_t) || !std::isfinite(phi_r)) {
        throw std::invalid_argument("compose: angles must be finite");
    }
    const MZEffective mz = mz_effective({theta, phi_t, phi_r});
    Summary s = {
        {"Theta", format_number(mz.effective.theta)},
        {"Phi_T", format_number(mz.effective.phi_t)},
        {"Phi_R", format_number(mz.effective.phi_r)},
        {"global_phase", format_number(mz.global_phase)},
    };
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const std::string key = "m" + std::to_string(r) + std::to_string(c);
            s.emplace_back(key + "_re", format_number(mz.matrix(r, c).real()));
            s.emplace_back(key + "_im", format_number(mz.matrix(r, c).imag()));
        }
    }
    s.emplace_back("identity_defect", format_number(mz.identity_defect()));
    write_summary(out, s);
    return kExitOk;
}

int cmd_verify(std::ostream& out) {
    const auto results = verify::run_acceptance();
    verify::print_results(out, results);
    return verify::all_passed(results) ? kExitOk : kExitVerifyFailed;
}

void add_run_options(CLI::App& cmd, RunConfig& c, std::string& scenario) {
    cmd.add_option("--scenario", scenario, "coherent | squeezed | fock")
        ->check(CLI::IsMember({"coherent", "squeezed", "fock"}))
        ->capture_default_str();
    cmd.add_option("--omega0", c.omega0, "Feedback rate")->capture_default_str();
    cmd.add_option("--x0", c.x0, "Feedback scale constant")->capture_default_str();
    cmd.add_option("--amplitude", c.amplitude,
                   "x_max for coherent (default 1), alpha in (0,1) for squeezed (default 0.5)");
    cmd.add_option("--theta0", c.theta0, "Initial splitter angle")->capture_default_str();
    cmd.add_option("--periods", c.periods, "Drive periods to integrate")->capture_default_str();
    cmd.add_option("--steps-per-period", c.steps_per_period, "RK4 steps per period")->capture_default_str();
    cmd.add_option("--cutoff", c.cutoff, "Fock grid cutoff for the qubit scenario")->capture_default_str();
    cmd.add_flag("--with-entropy", c.with_entropy, "Record the entanglement entropy per sample");
    cmd.add_option("--json", c.json_path, "Also write the summary as JSON to this path");
}

}  // namespace

DriveSignal make_drive(const RunConfig& config, double omega) {
    DriveSignal d;
    d.omega = omega;
    switch (config.scenario) {
        case Scenario::coherent:
            d.kind = DriveKind::coherent_x;
            d.amplitude = config.amplitude.value_or(1.0);
            break;
        case Scenario::squeezed:
            d.kind = DriveKind::squeezed_var;
            d.amplitude = config.amplitude.value_or(0.5);
            break;
        case Scenario::fock:
            d.kind = DriveKind::fock_angle;
            d.amplitude = 0.0;
            d.fock_cutoff = config.cutoff;
            break;
    }
    return d;
}

FeedbackLaw make_law(const RunConfig& config) {
    const DriveKind kind = make_drive(config, config.omega).kind;
    return {matching_law(kind), config.omega0, config.x0, config.theta0};
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (res.ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
    return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    out << "t,drive,theta,n_out_b1,n_out_b2,input_obs,entropy\n";
    for (const TrajectorySample& s : trajectory.samples) {
        out << format_number(s.t) << ',' << format_number(s.drive) << ',' << format_number(s.theta) << ','
            << format_number(s.n_b1) << ',' << format_number(s.n_b2) << ',' << format_number(s.input_obs)
            << ',' << (s.entropy ? format_number(*s.entropy) : "") << '\n';
    }
}

Summary run_summary(const RunConfig& config, const Trajectory& trajectory, const LoopReport& report) {
    Summary s = {
        {"scenario", std::string(to_string(config.scenario))},
        {"omega", format_number(trajectory.drive.omega)},
        {"omega0", format_number(trajectory.law.omega0)},
        {"x0", format_number(trajectory.law.x0)},
    };
    if (config.scenario == Scenario::fock) {
        s.emplace_back("cutoff", std::to_string(trajectory.drive.fock_cutoff));
    } else {
        s.emplace_back("amplitude", format_number(trajectory.drive.amplitude));
    }
    s.emplace_back("theta0", format_number(trajectory.law.theta0));
    s.emplace_back("periods", std::to_string(trajectory.period_count));
    s.emplace_back("steps_per_period", std::to_string(trajectory.steps_per_period));
    s.emplace_back("samples", std::to_string(trajectory.samples.size()));
    s.emplace_back("area_geometric", format_number(report.area_geometric));
    s.emplace_back("area_integral", format_number(report.area_integral));
    if (report.analytic_area) s.emplace_back("analytic_area", format_number(*report.analytic_area));
    if (report.analytic_printed) s.emplace_back("analytic_area_printed", format_number(*report.analytic_printed));
    s.emplace_back("analytic_valid", format_bool(report.analytic_validity));
    if (report.ratio_numeric_to_analytic) {
        s.emplace_back("ratio_numeric_to_analytic", format_number(*report.ratio_numeric_to_analytic));
    }
    s.emplace_back("crossing_count", std::to_string(report.crossing_count));
    s.emplace_back("transversal_count", std::to_string(report.transversal_count));
    s.emplace_back("degenerate_count", std::to_string(report.degenerate_count));
    s.emplace_back("sub_loop_count", std::to_string(report.sub_loop_count));
    s.emplace_back("crossings_per_lobe", format_number(report.crossings_per_lobe));
    s.emplace_back("predicted_crossings", std::to_string(report.predicted_crossings));
    s.emplace_back("pinched", format_bool(report.pinched));
    if (config.with_entropy && !trajectory.samples.empty()) {
        double lo = *trajectory.samples.front().entropy;
        double hi = lo;
        for (const TrajectorySample& x : trajectory.samples) {
            lo = std::min(lo, *x.entropy);
            hi = std::max(hi, *x.entropy);
        }
        s.emplace_back("entropy_min", format_number(lo));
        s.emplace_back("entropy_max", format_number(hi));
    }
    if (!config.output_path.empty()) s.emplace_back("csv", config.output_path);
    return s;
}

void write_summary(std::ostream& out, const Summary& summary) {
    for (const auto& [key, value] : summary) out << key << " = " << value << '\n';
}

void write_summary_json(std::ostream& out, const Summary& summary) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [key, value] : summary) {
        double number = 0.0;
        const auto res = std::from_chars(value.data(), value.data() + value.size(), number);
        if (value == "true" || value == "false") {
            j[key] = value == "true";
        } else if (res.ec == std::errc{} && res.ptr == value.data() + value.size()) {
            j[key] = number;
        } else {
            j[key] = value;
        }
    }
    out << j.dump(2) << '\n';
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Photonic quantum memristor simulator"};
    app.require_subcommand(1);

    RunConfig run_cfg;
    std::string run_scenario_name = "coherent";
    CLI::App* run = app.add_subcommand("run", "Simulate one scenario and summarise its loop");
    add_run_options(*run, run_cfg, run_scenario_name);
    run->add_option("--omega", run_cfg.omega, "Drive angular frequency")->capture_default_str();
    run->add_option("-o,--output", run_cfg.output_path, "Trajectory CSV path");

    RunConfig sweep_cfg;
    std::string sweep_scenario_name = "coherent";
    std::vector<double> omegas;
    std::string dump_dir;
    CLI::App* sweep = app.add_subcommand("sweep", "Loop summaries over several drive frequencies");
    add_run_options(*sweep, sweep_cfg, sweep_scenario_name);
    sweep->add_option("--omegas", omegas, "Drive frequencies, comma separated")
        ->delimiter(',')
        ->required();
    sweep->add_option("--dump-dir", dump_dir, "Write one trajectory CSV per frequency here");

    double theta = 0.0, phi_t = 0.0, phi_r = 0.0;
    CLI::App* compose = app.add_subcommand("compose", "Effective splitter of the Mach-Zehnder array");
    compose->add_option("--theta", theta, "Retarder phase")->capture_default_str();
    compose->add_option("--phi-t", phi_t, "Transmission phase of the 50:50 splitters")->capture_default_str();
    compose->add_option("--phi-r", phi_r, "Reflection phase of the 50:50 splitters")->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "Run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInvalidConfig;
    }

    try {
        if (run->parsed()) {
            run_cfg.scenario = scenario_from_string(run_scenario_name);
            return cmd_run(run_cfg, out);
        }
        if (sweep->parsed()) {
            sweep_cfg.scenario = scenario_from_string(sweep_scenario_name);
            return cmd_sweep(sweep_cfg, omegas, dump_dir, out);
        }
        if (compose->parsed()) return cmd_compose(theta, phi_t, phi_r, out);
        if (verify->parsed()) return cmd_verify(out);
    } catch (const NumericalError& e) {
        err << "numerical abort: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::domain_error& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    }
    return kExitInvalidConfig;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("qmem");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qmem::cli
