#pragma once

#include <string>
#include <vector>

#include "wpk/config.hpp"
#include "wpk/field.hpp"

namespace wpk {

struct CheckResult {
    std::string name;
    double value = 0, threshold = 0;
    std::string relation;  // "<=", ">=" or "==" against threshold
    bool pass = false;
};

struct CommandResult {
    std::string command, csv_path, plt_path, summary_path;
    std::vector<CheckResult> checks;
    bool ok() const;
};

// amplitude exp(-|X - center|^2 / width^2) e^{j kappa_y Y} with the center in the middle of the grid
ComplexField gaussian_envelope(const Grid& g, double amplitude, double width, double kappa_y);

// runs the configured command and writes <outdir>/<command>-<timestamp>.{csv,plt} plus a line in summary.jsonl
CommandResult run_command(const RunConfig& cfg);

// the CSV body alone (deterministic for a given config), with its check results
struct CommandTable {
    std::string check;  // name printed in the header line
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;  // trailing '#' lines
    std::vector<CheckResult> checks;
    std::string plot;  // gnuplot body; "@CSV@" stands for the CSV file name
};
CommandTable compute_command(const RunConfig& cfg);
std::string render_csv(const CommandTable& t);

}  // namespace wpk
