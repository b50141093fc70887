#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qmem/hysteresis.hpp"
#include "qmem/memristor.hpp"

namespace qmem::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
    Scenario scenario = Scenario::coherent;
    double omega = 1.0;
    double omega0 = 1.0;
    double x0 = 1.0;
    std::optional<double> amplitude;  // x_max (coherent, default 1) or alpha (squeezed, default 0.5)
    double theta0 = 1.5707963267948966;
    int periods = 1;
    int steps_per_period = kDefaultStepsPerPeriod;
    int cutoff = 1;
    bool with_entropy = false;
    std::string output_path;  // trajectory CSV; empty for none
    std::string json_path;    // summary mirror; empty for none
};

DriveSignal make_drive(const RunConfig& config, double omega);
FeedbackLaw make_law(const RunConfig& config);

/// Number formatting shared by every output: shortest form that keeps 17
/// significant digits, '.' separator, no locale.
std::string format_number(double value);

/// Header plus one line per sample; the entropy column stays empty unless the
/// trajectory carries entropies.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// Ordered key/value pairs of a run summary, values already formatted.
using Summary = std::vector<std::pair<std::string, std::string>>;

Summary run_summary(const RunConfig& config, const Trajectory& trajectory, const LoopReport& report);

/// "key = value" lines.
void write_summary(std::ostream& out, const Summary& summary);

/// JSON object with numeric values as numbers and flags as booleans.
void write_summary_json(std::ostream& out, const Summary& summary);

/// Parses argv and dispatches to run | sweep | compose | verify.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmem::cli
