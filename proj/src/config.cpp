#include "wpk/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "wpk/field.hpp"

namespace wpk {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& s) {
    double v = parse_number(s);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw std::invalid_argument(fmt::format("'{}' is not an integer", s));
    return int(v);
}

int parse_grid_size(const std::string& s) {
    int n = parse_int(s);
    if (!is_pow2(n)) throw std::invalid_argument(fmt::format("grid size {} is not a power of two", n));
    return n;
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw std::invalid_argument(fmt::format("'{}' is not a boolean", s));
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item)));
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::string parse_choice(const std::string& s, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (s == a) return s;
    std::string list;
    for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    throw std::invalid_argument(fmt::format("'{}' is not one of {}", s, list));
}

struct KeySpec {
    // empty: valid in every section
    std::vector<std::string> commands;
    std::function<void(RunConfig&, const std::string&)> set;
};

const std::map<std::string, KeySpec>& key_table() {
    static const std::map<std::string, KeySpec> t = {
        {"command", {{}, [](RunConfig& c, const std::string& v) { c.command = v; }}},
        {"k", {{}, [](RunConfig& c, const std::string& v) { c.k = parse_number(v); }}},
        {"eps", {{}, [](RunConfig& c, const std::string& v) { c.eps = parse_number(v); }}},
        {"eps_list", {{}, [](RunConfig& c, const std::string& v) { c.eps_list = parse_list(v); }}},
        {"n_fast", {{}, [](RunConfig& c, const std::string& v) { c.n_fast = parse_grid_size(v); }}},
        {"n_slow", {{}, [](RunConfig& c, const std::string& v) { c.n_slow = parse_grid_size(v); }}},
        {"slow_length", {{}, [](RunConfig& c, const std::string& v) { c.slow_length = parse_number(v); }}},
        {"fast_length", {{}, [](RunConfig& c, const std::string& v) { c.fast_length = parse_number(v); }}},
        {"s", {{}, [](RunConfig& c, const std::string& v) { c.s = parse_number(v); }}},
        {"seed", {{}, [](RunConfig& c, const std::string& v) { c.seed = unsigned(parse_int(v)); }}},
        {"outdir", {{}, [](RunConfig& c, const std::string& v) { c.outdir = v; }}},
        {"timestamp", {{}, [](RunConfig& c, const std::string& v) { c.timestamp = v; }}},
        {"amplitude", {{}, [](RunConfig& c, const std::string& v) { c.amplitude = parse_number(v); }}},
        {"width", {{}, [](RunConfig& c, const std::string& v) { c.width = parse_number(v); }}},
        {"kappa_y", {{}, [](RunConfig& c, const std::string& v) { c.kappa_y = parse_number(v); }}},
        {"dt", {{"run-hnls"}, [](RunConfig& c, const std::string& v) { c.dt = parse_number(v); }}},
        {"T_final", {{"run-hnls"}, [](RunConfig& c, const std::string& v) { c.T_final = parse_number(v); }}},
        {"every", {{"run-hnls"}, [](RunConfig& c, const std::string& v) { c.every = parse_int(v); }}},
        {"scheme", {{"run-hnls"}, [](RunConfig& c, const std::string& v) { c.scheme = parse_choice(v, {"strang", "rk4"}); }}},
        {"t", {{"build-packet", "verify-dispersion"}, [](RunConfig& c, const std::string& v) { c.t = parse_number(v); }}},
        {"omega", {{"verify-dispersion"}, [](RunConfig& c, const std::string& v) { c.omega = parse_number(v); }}},
        {"printed_k_sign", {{"verify-expansion"}, [](RunConfig& c, const std::string& v) { c.printed_k_sign = parse_bool(v); }}},
        {"sign", {{"verify-expansion"}, [](RunConfig& c, const std::string& v) { c.sign = parse_choice(v, {"plus", "minus"}); }}},
        {"samples", {{"verify-normal-form"}, [](RunConfig& c, const std::string& v) { c.samples = parse_int(v); }}},
        {"orders", {{"sweep-residual"}, [](RunConfig& c, const std::string& v) { c.orders = parse_int(v); }}},
        {"y_sign", {{"sweep-residual"}, [](RunConfig& c, const std::string& v) { c.y_sign = parse_number(v); }}},
        {"lambda3",
         {{"sweep-residual"}, [](RunConfig& c, const std::string& v) { c.lambda3 = parse_choice(v, {"corrected", "printed"}); }}},
        {"max_order", {{"sweep-residual"}, [](RunConfig& c, const std::string& v) { c.max_order = parse_int(v); }}},
        {"corrupt", {{"check-ledger"}, [](RunConfig& c, const std::string& v) { c.corrupt = v; }}},
    };
    return t;
}

struct Entry {
    std::string key, value, where;
};

bool uses_eps_list(const std::string& cmd) {
    return cmd == "verify-expansion" || cmd == "sweep-residual" || cmd == "verify-normal-form";
}
bool uses_eps(const std::string& cmd) { return cmd == "build-packet" || cmd == "verify-dispersion"; }

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> n = {"run-hnls",           "build-packet",   "verify-dispersion", "verify-expansion",
                                               "verify-normal-form", "sweep-residual", "check-ledger"};
    return n;
}

double parse_number(const std::string& s_in) {
    std::string s = trim(s_in);
    if (s.empty()) throw std::invalid_argument("empty value");
    double v = 1.0;
    std::stringstream ss(s);
    std::string f;
    while (std::getline(ss, f, '*')) {
        f = trim(f);
        double sign = 1.0;
        if (!f.empty() && f[0] == '-') {
            sign = -1.0;
            f = trim(f.substr(1));
        }
        if (f == "pi") {
            v *= sign * kPi;
            continue;
        }
        double x = 0;
        auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), x);
        if (ec != std::errc() || p != f.data() + f.size() || f.empty())
            throw std::invalid_argument(fmt::format("'{}' is not a number", s));
        v *= sign * x;
    }
    return v;
}

RunConfig parse_config(const std::string& text, const std::string& command, const std::vector<std::string>& overrides,
                       const std::string& source) {
    const auto& keys = key_table();
    const auto& cmds = command_names();
    std::vector<Entry> global;
    std::map<std::string, std::vector<Entry>> sections;

    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    auto check_key = [&](const std::string& key, const std::string& sec, const std::string& where) {
        auto it = keys.find(key);
        if (it == keys.end()) throw ConfigError(where, fmt::format("unknown key '{}'", key));
        const auto& allowed = it->second.commands;
        if (!sec.empty() && !allowed.empty() && std::find(allowed.begin(), allowed.end(), sec) == allowed.end())
            throw ConfigError(where, fmt::format("key '{}' does not apply to [{}]", key, sec));
        if (!sec.empty() && key == "command") throw ConfigError(where, "'command' is only allowed outside sections");
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = fmt::format("{}:{}", source, lineno);
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where, fmt::format("malformed section header '{}'", line));
            section = trim(line.substr(1, line.size() - 2));
            if (std::find(cmds.begin(), cmds.end(), section) == cmds.end())
                throw ConfigError(where, fmt::format("unknown section [{}]", section));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where, fmt::format("expected key = value, got '{}'", line));
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where, "missing key before '='");
        check_key(key, section, where);
        if (value.empty()) throw ConfigError(where, fmt::format("missing value for '{}'", key));
        (section.empty() ? global : sections[section]).push_back({key, value, where});
    }

    std::vector<Entry> sets;
    for (const auto& o : overrides) {
        std::string where = fmt::format("--set {}", o);
        auto eq = o.find('=');
        if (eq == std::string::npos) throw ConfigError(where, "expected key=value");
        std::string key = trim(o.substr(0, eq)), value = trim(o.substr(eq + 1));
        check_key(key, "", where);
        if (value.empty()) throw ConfigError(where, fmt::format("missing value for '{}'", key));
        sets.push_back({key, value, where});
    }

    RunConfig c;
    auto apply = [&](const std::vector<Entry>& es) {
        for (const auto& e : es) {
            try {
                keys.at(e.key).set(c, e.value);
            } catch (const std::invalid_argument& ex) {
                throw ConfigError(e.where, fmt::format("bad value for '{}': {}", e.key, ex.what()));
            }
            c.origin[e.key] = e.where;
        }
    };
    apply(global);
    if (!command.empty()) {
        c.command = command;
        c.origin["command"] = "command line";
    }
    if (c.command.empty()) throw ConfigError(source, "missing required field 'command'");
    if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end())
        throw ConfigError(c.origin["command"], fmt::format("unknown command '{}'", c.command));
    if (auto it = sections.find(c.command); it != sections.end()) apply(it->second);
    apply(sets);

    auto where = [&](const std::string& key) {
        auto it = c.origin.find(key);
        return it == c.origin.end() ? source + " (default " + key + ")" : it->second;
    };
    if (!(c.k > 0)) throw ConfigError(where("k"), fmt::format("k must be positive, got {}", c.k));
    for (auto [key, n] : {std::pair<const char*, int>{"n_fast", c.n_fast}, {"n_slow", c.n_slow}})
        if (n < 8 || n % 2 != 0) throw ConfigError(where(key), fmt::format("{} must be even and at least 8, got {}", key, n));
    if (!(c.eps > 0 && c.eps < 1)) throw ConfigError(where("eps"), fmt::format("eps must lie in (0, 1), got {}", c.eps));
    for (std::size_t i = 0; i < c.eps_list.size(); ++i) {
        if (!(c.eps_list[i] > 0 && c.eps_list[i] < 1))
            throw ConfigError(where("eps_list"), fmt::format("eps_list entries must lie in (0, 1), got {}", c.eps_list[i]));
        if (i > 0 && !(c.eps_list[i] < c.eps_list[i - 1]))
            throw ConfigError(where("eps_list"), "eps_list must be strictly decreasing");
    }
    if (c.eps_list.size() < 2) throw ConfigError(where("eps_list"), "eps_list needs at least two values");
    if (!(c.dt > 0)) throw ConfigError(where("dt"), "dt must be positive");
    if (!(c.T_final > 0)) throw ConfigError(where("T_final"), "T_final must be positive");
    if (c.every < 1) throw ConfigError(where("every"), "every must be at least 1");
    if (c.samples < 1) throw ConfigError(where("samples"), "samples must be at least 1");
    if (c.orders != 1 && c.orders != 3) throw ConfigError(where("orders"), fmt::format("orders must be 1 or 3, got {}", c.orders));
    if (c.y_sign != 1.0 && c.y_sign != -1.0) throw ConfigError(where("y_sign"), "y_sign must be 1 or -1");
    if (c.max_order < 4 || c.max_order > 8) throw ConfigError(where("max_order"), "max_order must lie in 4..8");
    if (!(c.width > 0)) throw ConfigError(where("width"), "width must be positive");
    if (c.omega < 0) throw ConfigError(where("omega"), "omega must be non-negative");

    // grid lengths and the frequency lattice
    bool has_slow = c.origin.count("slow_length"), has_fast = c.fast_length != 0;
    if (has_fast && !(c.fast_length > 0)) throw ConfigError(where("fast_length"), "fast_length must be positive");
    if (has_fast && uses_eps_list(c.command))
        throw ConfigError(where("fast_length"), fmt::format("fast_length cannot be fixed for '{}', which sweeps eps_list", c.command));
    if (!has_slow) c.slow_length = has_fast ? c.eps * c.fast_length : 8 * kPi;
    if (!(c.slow_length > 0)) throw ConfigError(where("slow_length"), "slow_length must be positive");
    if (has_fast && has_slow && std::abs(c.eps * c.fast_length - c.slow_length) > 1e-9 * c.slow_length)
        throw ConfigError(where("fast_length"),
                          fmt::format("eps * fast_length = {} does not match slow_length = {}", c.eps * c.fast_length, c.slow_length));

    auto lattice = [&](double eps, const std::string& eps_key) {
        double L = c.slow_length / eps;
        double q = c.k * L / (2 * kPi);
        if (std::abs(q - std::round(q)) > 1e-9 * std::max(1.0, q)) {
            std::string at = c.origin.count(eps_key) ? where(eps_key) : where("k");
            throw ConfigError(at, fmt::format("k = {} is not a frequency of the fast grid for eps = {} (k L / 2pi = {:.6g} with L = {:.6g})",
                                              c.k, eps, q, L));
        }
    };
    if (uses_eps(c.command)) lattice(c.eps, "eps");
    if (uses_eps_list(c.command))
        for (double e : c.eps_list) lattice(e, "eps_list");
    return c;
}

RunConfig load_config(const std::string& path, const std::string& command, const std::vector<std::string>& overrides) {
    std::ifstream f(path);
    if (!f) throw ConfigError(path, "cannot open config file");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), command, overrides, path);
}

}  // namespace wpk
