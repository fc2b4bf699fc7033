#include "wpk/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "wpk/hilbert_expansion.hpp"
#include "wpk/hnls.hpp"
#include "wpk/multiscale.hpp"
#include "wpk/normal_form.hpp"
#include "wpk/spectral.hpp"
#include "wpk/verify.hpp"
#include "wpk/wavepacket.hpp"

namespace wpk {

namespace fs = std::filesystem;

namespace {

std::string num(double v) { return fmt::format("{:.10e}", v); }

CheckResult check(const std::string& name, double value, const std::string& rel, double threshold) {
    bool pass = rel == "<=" ? value <= threshold : rel == ">=" ? value >= threshold : value == threshold;
    return {name, value, threshold, rel, pass};
}

PacketParams params(const RunConfig& c, double eps) { return PacketParams::make(c.k, eps); }

Grid slow_grid(const RunConfig& c, int n) { return Grid::square(n, c.slow_length); }

const char* gen_name(Gen g) {
    switch (g) {
        case Gen::A: return "A";
        case Gen::Abar: return "Abar";
        case Gen::B: return "B";
        case Gen::Bbar: return "Bbar";
        case Gen::dX: return "dX";
        case Gen::dY: return "dY";
        case Gen::dT: return "dT";
        case Gen::R1: return "R1";
        case Gen::R2: return "R2";
    }
    return "?";
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

const char* kLogPlot =
    "set datafile separator ','\n"
    "set logscale xy\n"
    "set key left top\n";

CommandTable run_hnls(const RunConfig& c) {
    CommandTable t;
    t.check = "hnls-conservation";
    t.columns = {"T", "mass", "hamiltonian", "mass_drift", "hamiltonian_drift"};
    PacketParams p = params(c, c.eps);
    Envelope A0{gaussian_envelope(slow_grid(c, c.n_slow), c.amplitude, c.width, c.kappa_y), 0.0};
    std::vector<Envelope> path;
    if (c.scheme == "strang") {
        path = evolve_A_path(A0, p, c.T_final, c.dt, c.every);
    } else {
        path.push_back(A0);
        int nsteps = int(std::llround(c.T_final / c.dt));
        for (int done = 0; done < nsteps;) {
            int chunk = std::min(c.every, nsteps - done);
            path.push_back(evolve_A_rk4(path.back(), p, chunk * c.dt, c.dt));
            done += chunk;
        }
    }
    double m0 = mass(A0.values), h0 = hamiltonian(A0.values, p);
    double md = 0, hd = 0;
    for (const auto& e : path) {
        double m = mass(e.values), h = hamiltonian(e.values, p);
        double dm = std::abs(m - m0) / m0, dh = std::abs(h - h0) / std::max(std::abs(h0), 1e-300);
        md = std::max(md, dm);
        hd = std::max(hd, dh);
        t.rows.push_back({num(e.T), num(m), num(h), num(dm), num(dh)});
    }
    t.checks.push_back(check("mass_drift", md, "<=", 1e-8));
    t.checks.push_back(check("hamiltonian_drift", hd, "<=", 1e-6));
    t.plot = std::string("set datafile separator ','\nset logscale y\n") +
             "plot '@CSV@' using 1:4 with linespoints title 'mass drift', '' using 1:5 with linespoints title 'hamiltonian drift'\n";
    return t;
}

CommandTable build_packet(const RunConfig& c) {
    CommandTable t;
    t.check = "approximate-solution-build";
    t.columns = {"field", "order", "l2", "hs"};
    PacketParams p = params(c, c.eps);
    Grid sg = slow_grid(c, c.n_slow);
    ComplexField A = gaussian_envelope(sg, c.amplitude, c.width, c.kappa_y);
    ComplexField B(sg);
    Grid fast(c.n_fast, c.n_fast, c.slow_length / c.eps, c.slow_length / c.eps);
    ApproximateSolution s = build_approximate_solution(A, B, p, c.t, fast);
    for (std::size_t o = 0; o < s.lambda_orders.size(); ++o)
        t.rows.push_back({"lambda", std::to_string(o + 1), num(l2_norm(s.lambda_orders[o])), num(sobolev_norm(s.lambda_orders[o], c.s))});
    for (std::size_t o = 0; o < s.z_orders.size(); ++o)
        t.rows.push_back({"z", std::to_string(o + 1), num(l2_norm(s.z_orders[o])), num(sobolev_norm(s.z_orders[o], c.s))});
    t.rows.push_back({"b_tilde", "2", num(l2_norm(s.b_tilde)), num(sobolev_norm(s.b_tilde, c.s))});
    QuaternionField lt = s.lambda_tilde();
    t.rows.push_back({"lambda_tilde", "1-3", num(l2_norm(lt)), num(sobolev_norm(lt, c.s))});

    // lambda^(1) = (I + H^(0)) z^(1) k on the multiscale level
    ms::Context ctx = ms::Context::make(sg, p, 3);
    ms::Jet Aj{{A}};
    ms::Field zk = ms::rmul_k(ms_z1(ctx, Aj));
    double id = ms::max_abs(ms_lambda1(ctx, Aj) - (zk + ms::hilbert0(zk, 0)));
    t.notes.push_back(fmt::format("lambda1_identity_max={}", num(id)));
    t.checks.push_back(check("lambda1_identity", id, "<=", 1e-10));
    t.plot = "set datafile separator ','\nset style data histograms\nset logscale y\nplot '@CSV@' using 3:xtic(1) title 'L2'\n";
    return t;
}

CommandTable verify_dispersion(const RunConfig& c) {
    CommandTable t;
    t.check = "dispersion-relation";
    t.columns = {"case", "k", "omega", "residual", "expected"};
    Grid sg = slow_grid(c, c.n_slow);
    ComplexField one(sg);
    for (auto& v : one.v) v = 1.0;
    ComplexField A = gaussian_envelope(sg, c.amplitude, c.width, c.kappa_y);
    PacketParams p = params(c, c.eps);
    double r1 = dispersion_residual(one, p, c.t), r2 = dispersion_residual(A, p, c.t);
    t.rows.push_back({"constant", num(c.k), num(p.omega), num(r1), num(0)});
    t.rows.push_back({"gaussian", num(c.k), num(p.omega), num(r2), num(0)});
    t.checks.push_back(check("constant_residual", r1, "<=", 1e-10));
    t.checks.push_back(check("gaussian_residual", r2, "<=", 1e-10));
    if (c.omega > 0 && c.omega * c.omega != c.k) {
        PacketParams q = p;
        q.omega = c.omega;
        double r = dispersion_residual(A, q, c.t);
        double e = std::abs(c.k - c.omega * c.omega) * dispersion_profile_norm(A, q, c.t);
        t.rows.push_back({"detuned", num(c.k), num(c.omega), num(r), num(e)});
        t.checks.push_back(check("detuned_vs_mode_calculus", std::abs(r - e) / std::max(e, 1e-300), "<=", 1e-10));
    }
    double g1 = group_velocity_residual(A, traveling_frame_t1(A, p), p);
    double g2 = group_velocity_residual(A, ComplexField(sg), p);
    double e2 = 2 * p.omega * p.omega_p * l2_norm(cdx(A));
    t.rows.push_back({"group_velocity_traveling", num(c.k), num(p.omega), num(g1), num(0)});
    t.rows.push_back({"group_velocity_static", num(c.k), num(p.omega), num(g2), num(e2)});
    t.checks.push_back(check("group_velocity_traveling", g1, "<=", 1e-11));
    t.checks.push_back(check("group_velocity_static", std::abs(g2 - e2) / e2, "<=", 1e-12));
    t.plot = "set datafile separator ','\nset style data histograms\nplot '@CSV@' using 4:xtic(1) title 'residual'\n";
    return t;
}

CommandTable verify_expansion(const RunConfig& c) {
    CommandTable t;
    t.check = "flat-hilbert-truncation";
    t.columns = {"eps", "selected", "plus_corrected", "minus_corrected", "plus_printed_k_sign"};
    Grid sg = slow_grid(c, c.n_fast);
    ComplexField F = gaussian_envelope(sg, 1.0, c.width, 0.0);
    TruncationSign sel = c.sign == "plus" ? TruncationSign::Plus : TruncationSign::Minus;
    std::vector<double> selected;
    for (double eps : c.eps_list) {
        Packet pk{F, c.k, eps};
        double e_sel = h0_truncation_error(pk, int(c.s), sel, {c.printed_k_sign});
        double e_plus = h0_truncation_error(pk, int(c.s), TruncationSign::Plus, {false});
        double e_minus = h0_truncation_error(pk, int(c.s), TruncationSign::Minus, {false});
        double e_print = h0_truncation_error(pk, int(c.s), TruncationSign::Plus, {true});
        selected.push_back(e_sel);
        t.rows.push_back({num(eps), num(e_sel), num(e_plus), num(e_minus), num(e_print)});
    }
    double slope = fit_slope(c.eps_list, selected);
    t.notes.push_back(fmt::format("sign_convention={} printed_k_sign={}", c.sign, c.printed_k_sign ? "true" : "false"));
    t.notes.push_back(fmt::format("slope_selected={:.4f}", slope));
    t.checks.push_back(check("truncation_slope", slope, ">=", 2.7));
    t.plot = std::string(kLogPlot) +
             "plot '@CSV@' using 1:2 with linespoints title 'selected', '' using 1:3 with linespoints title 'plus', "
             "'' using 1:4 with linespoints title 'minus', '' using 1:5 with linespoints title 'printed k sign'\n";
    return t;
}

CommandTable verify_normal_form(const RunConfig& c) {
    CommandTable t;
    t.check = "normal-form-kernels";
    t.columns = {"item", "value", "threshold", "pass"};
    auto row = [&](const CheckResult& r, bool counted) {
        t.rows.push_back({r.name, num(r.value), r.relation + " " + num(r.threshold), r.pass ? "1" : "0"});
        if (counted) t.checks.push_back(r);
    };
    auto info = [&](const std::string& name, double v) { t.rows.push_back({name, num(v), "", ""}); };

    LemmaSweep L = denominator_lemma_sweep(c.samples, c.seed);
    row(check("denominator_C0_fit", L.C0_fit, "<=", 16), true);
    row(check("denominator_b_corrected_violations", L.b_corrected_violations, "==", 0), true);
    info("denominator_b_printed_violations", L.b_printed_violations);
    row(check("denominator_c_violations", L.c_violations, "==", 0), true);

    std::vector<std::pair<std::string, NormalFormKernel>> kernels = {
        {"particular1", NormalFormKernel::particular1(c.k)},
        {"particular7_l1", NormalFormKernel::particular7(c.k, 1)},
        {"particular7_l2", NormalFormKernel::particular7(c.k, 2)},
        {"generic", NormalFormKernel::generic(c.k, [](double a, double b) { return cplx(a - b, 0.5 * b); },
                                              [](double a, double b) { return cplx(1 + b, -a); })},
    };
    for (const auto& [name, K] : kernels) {
        BackSubstitution bs = back_substitution_sweep(K, c.samples, c.seed + 1);
        row(check("back_substitution_" + name, bs.max_residual, "<=", 1e-12), true);
        if (name != "generic") {
            info("sup_Q0_" + name, bs.sup_Q0);
            info("sup_Q1_" + name, bs.sup_Q1);
        }
    }
    GainReport g = derivative_gain_check(c.k, c.samples, c.seed + 2);
    row(check("derivative_gain_C_fit", g.C_fit, "<=", 6 * c.k), true);
    row(check("derivative_gain_violations", g.violations, "==", 0), true);

    BilinearStudy bst = bilinear_estimate_study(c.k, c.eps_list, c.seed + 3);
    for (std::size_t i = 0; i < bst.eps_list.size(); ++i) info(fmt::format("bilinear_ratio_eps_{}", bst.eps_list[i]), bst.ratio[i]);
    info("bilinear_C_fit", bst.C_fit);
    row(check("bilinear_slope", bst.slope, ">=", 0.9), true);
    t.plot = "set datafile separator ','\nset style data histograms\nset logscale y\nplot '@CSV@' using 2:xtic(1) title 'value'\n";
    return t;
}

CommandTable sweep_residual(const RunConfig& c) {
    CommandTable t;
    t.check = "multiscale-residual-order";
    t.columns = {"eps", "fast_na", "fast_nb", "L2_residual", "Hs_residual", "projected_residual"};
    Grid sg = slow_grid(c, c.n_slow);
    ComplexField A = gaussian_envelope(sg, c.amplitude, c.width, c.kappa_y);
    ResidualOptions opt;
    opt.orders = c.orders;
    opt.y_sign = c.y_sign;
    opt.form = c.lambda3 == "printed" ? Lambda3Form::Printed : Lambda3Form::Corrected;
    opt.max_order = c.max_order;
    opt.min_fast_na = c.n_fast;
    ConvergenceStudy st = residual_sweep(A, params(c, c.eps_list.front()), c.eps_list, c.s, opt);
    for (std::size_t i = 0; i < st.eps_list.size(); ++i)
        t.rows.push_back({num(st.eps_list[i]), std::to_string(st.fast_grids[i].na), std::to_string(st.fast_grids[i].nb), num(st.l2[i]),
                          num(st.hs[i]), num(st.projected[i])});
    t.notes.push_back(fmt::format("orders={} y_sign={} lambda3={} s={}", c.orders, c.y_sign, c.lambda3, c.s));
    t.notes.push_back(fmt::format("slope_L2={:.4f}", st.slope_l2));
    t.notes.push_back(fmt::format("slope_Hs={:.4f}", st.slope_hs));
    t.notes.push_back(fmt::format("slope_projected={:.4f}", st.slope_projected));
    for (std::size_t o = 0; o < st.order_norms.size(); ++o) t.notes.push_back(fmt::format("order_{}_slow_norm={}", o, num(st.order_norms[o])));
    bool decreasing = true;
    for (std::size_t i = 1; i < st.hs.size(); ++i) decreasing = decreasing && st.hs[i] < st.hs[i - 1];
    t.checks.push_back(check("residual_decreasing", decreasing ? 1 : 0, "==", 1));
    if (c.orders == 3) {
        t.checks.push_back(check("full_residual_slope", st.slope_hs, ">=", 3.0));
        t.checks.push_back(check("projected_residual_slope", st.slope_projected, ">=", 3.5));
    } else {
        t.checks.push_back(check("ablation_slope", st.slope_hs, "<=", 2.5));
    }
    t.plot = std::string(kLogPlot) +
             "plot '@CSV@' using 1:4 with linespoints title 'L2', '' using 1:5 with linespoints title 'H^s', "
             "'' using 1:6 with linespoints title 'projected H^s'\n";
    return t;
}

CommandTable check_ledger(const RunConfig& c) {
    CommandTable t;
    t.check = "term-ledger";
    t.columns = {"name", "signature", "eps_power", "phase", "signature_order", "signature_phase"};
    std::vector<LedgerEntry> entries = builtin_ledger();
    if (!c.corrupt.empty()) {
        bool found = false;
        for (auto& e : entries)
            if (e.name == c.corrupt) {
                e.phase += 1;
                found = true;
            }
        if (!found) throw ConfigError(c.origin.count("corrupt") ? c.origin.at("corrupt") : "corrupt",
                                      fmt::format("no ledger entry named '{}'", c.corrupt));
    }
    Grid sg = slow_grid(c, c.n_slow);
    ComplexField A = gaussian_envelope(sg, c.amplitude, c.width, c.kappa_y);
    ComplexField B = gaussian_envelope(sg, 0.3, c.width, 0.0);
    ms::Context ctx = ms::Context::make(sg, params(c, c.eps), 3);
    LedgerReport r = ledger_check(entries, builtin_terms(ctx, ms::Jet{{A}}, ms::Jet{{B}}));
    for (const auto& e : entries) {
        std::string sig;
        for (Gen g : e.sig.factors) sig += (sig.empty() ? "" : " ") + std::string(gen_name(g));
        t.rows.push_back({csv_quote(e.name), csv_quote(sig), std::to_string(e.eps_power), std::to_string(e.phase),
                          std::to_string(term_order(e.sig)), std::to_string(term_phase(e.sig))});
    }
    for (const auto& v : r.violations) t.notes.push_back("violation: " + v);
    t.checks.push_back(check("ledger_violations", double(r.violations.size()), "==", 0));
    t.plot = "set datafile separator ','\nplot '@CSV@' using 3:4 with points title 'eps power vs phase'\n";
    return t;
}

std::string timestamp_now() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

}  // namespace

bool CommandResult::ok() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

ComplexField gaussian_envelope(const Grid& g, double amplitude, double width, double kappa_y) {
    ComplexField A(g);
    // kappa_y snapped to the grid so the envelope stays periodic
    double dk = kTwoPi / g.lb, ky = dk * std::round(kappa_y / dk);
    for (int i = 0; i < g.na; ++i)
        for (int j = 0; j < g.nb; ++j) {
            double x = g.alpha(i) - g.la / 2, y = g.beta(j) - g.lb / 2;
            A(i, j) = amplitude * std::exp(-(x * x + y * y) / (width * width)) * std::exp(cplx(0, ky * y));
        }
    return A;
}

CommandTable compute_command(const RunConfig& c) {
    if (c.command == "run-hnls") return run_hnls(c);
    if (c.command == "build-packet") return build_packet(c);
    if (c.command == "verify-dispersion") return verify_dispersion(c);
    if (c.command == "verify-expansion") return verify_expansion(c);
    if (c.command == "verify-normal-form") return verify_normal_form(c);
    if (c.command == "sweep-residual") return sweep_residual(c);
    if (c.command == "check-ledger") return check_ledger(c);
    throw std::invalid_argument(fmt::format("unknown command '{}'", c.command));
}

std::string render_csv(const CommandTable& t) {
    std::string out = "# check=" + t.check + "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
    out += "\n";
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
        out += "\n";
    }
    for (const auto& n : t.notes) out += "# " + n + "\n";
    for (const auto& ch : t.checks)
        out += fmt::format("# {} {} {} {} -> {}\n", ch.name, num(ch.value), ch.relation, num(ch.threshold), ch.pass ? "pass" : "fail");
    return out;
}

CommandResult run_command(const RunConfig& c) {
    CommandTable t = compute_command(c);
    fs::path dir(c.outdir);
    fs::create_directories(dir);
    std::string stamp = c.timestamp.empty() ? timestamp_now() : c.timestamp;
    std::string stem = c.command + "-" + stamp;
    for (int n = 1; fs::exists(dir / (stem + ".csv")); ++n) stem = fmt::format("{}-{}-{}", c.command, stamp, n);

    CommandResult r;
    r.command = c.command;
    r.checks = t.checks;
    r.csv_path = (dir / (stem + ".csv")).string();
    r.plt_path = (dir / (stem + ".plt")).string();
    r.summary_path = (dir / "summary.jsonl").string();
    {
        std::ofstream f(r.csv_path, std::ios::binary);
        f << render_csv(t);
    }
    {
        std::string plot = t.plot;
        std::string csv_name = stem + ".csv";
        for (auto p = plot.find("@CSV@"); p != std::string::npos; p = plot.find("@CSV@")) plot.replace(p, 5, csv_name);
        std::ofstream f(r.plt_path, std::ios::binary);
        f << "# " << t.check << "\n" << plot << "pause -1\n";
    }
    nlohmann::json j;
    j["command"] = c.command;
    j["check"] = t.check;
    j["csv"] = r.csv_path;
    j["plot"] = r.plt_path;
    j["seed"] = c.seed;
    j["status"] = r.ok() ? "pass" : "fail";
    j["checks"] = nlohmann::json::array();
    for (const auto& ch : t.checks)
        j["checks"].push_back({{"name", ch.name}, {"value", ch.value}, {"relation", ch.relation}, {"threshold", ch.threshold}, {"pass", ch.pass}});
    std::ofstream f(r.summary_path, std::ios::app);
    f << j.dump() << "\n";
    return r;
}

}  // namespace wpk
