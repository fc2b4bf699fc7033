#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpk {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& where, const std::string& what) : std::runtime_error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

const std::vector<std::string>& command_names();

struct RunConfig {
    std::string command;
    double k = 1.0;
    double eps = 0.1;
    std::vector<double> eps_list{0.2, 0.1, 0.05};
    int n_fast = 256;
    int n_slow = 64;
    double slow_length = 0;  // set by parse; default 8 pi
    double fast_length = 0;  // 0: slow_length / eps
    double s = 2.0;
    unsigned seed = 1;
    std::string outdir = "out";
    std::string timestamp;  // empty: wall clock

    // initial envelope A = amplitude exp(-|X - c|^2 / width^2) e^{j kappa_y Y}
    double amplitude = 0.5;
    double width = 2.0;
    double kappa_y = 0.5;

    // run-hnls
    double dt = 1e-3;
    double T_final = 1.0;
    int every = 100;
    std::string scheme = "strang";

    // build-packet
    double t = 0.0;

    // verify-dispersion
    double omega = 0;  // 0: sqrt(k)

    // verify-expansion
    bool printed_k_sign = false;
    std::string sign = "plus";

    // verify-normal-form
    int samples = 100000;

    // sweep-residual
    int orders = 3;
    double y_sign = 1.0;
    std::string lambda3 = "corrected";
    int max_order = 5;

    // check-ledger
    std::string corrupt;

    // source line (or "--set") of each key that was given
    std::map<std::string, std::string> origin;
};

// Parses key = value text with optional [command] sections. Keys before any section apply to every command;
// keys in the section of the selected command override them. `command` may be empty when the text names it.
// Overrides are "key=value" strings applied last.
RunConfig parse_config(const std::string& text, const std::string& command, const std::vector<std::string>& overrides = {},
                       const std::string& source = "config");

RunConfig load_config(const std::string& path, const std::string& command, const std::vector<std::string>& overrides = {});

// numeric literal, "pi", or a product of these (e.g. "2*pi*64")
double parse_number(const std::string& s);

}  // namespace wpk
