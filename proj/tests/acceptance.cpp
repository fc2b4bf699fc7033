// One line per acceptance criterion. Exit status is 0 when every criterion passes, except those named with
// --known-fail, which must still fail (so a fix is noticed).
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "helpers.hpp"
#include "wpk/commands.hpp"
#include "wpk/hilbert_expansion.hpp"
#include "wpk/normal_form.hpp"
#include "wpk/verify.hpp"

using namespace wpk;
using namespace wpk::test;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit;  // seconds
    std::function<Outcome()> run;
};

const double kSlowLength = 8 * M_PI;

ComplexField default_envelope(int n) { return gaussian_envelope(Grid::square(n, kSlowLength), 0.5, 2.0, 0.5); }

Outcome algebra() {
    std::mt19937_64 rng(1);
    const int n = 10000;
    const Quaternion I = Quaternion::i(), J = Quaternion::j(), K = Quaternion::k(), one = Quaternion::one();
    double ham = qdiff(I * I, -one) + qdiff(J * J, -one) + qdiff(K * K, -one) + qdiff(I * J * K, -one);
    double assoc = 0, mult = 0, anti = 0, triple = 0;
    for (int t = 0; t < n; ++t) {
        Quaternion p = random_q(rng), q = random_q(rng), r = random_q(rng), v = vec(random_q(rng));
        double s = abs(p) * abs(q);
        assoc = std::max(assoc, qdiff((p * q) * r, p * (q * r)) / (s * abs(r)));
        mult = std::max(mult, std::abs(abs(p * q) - s) / s);
        anti = std::max(anti, qdiff(conj(p * q), conj(q) * conj(p)) / s);
        auto [a, b] = triple_product_pair(p, q, v);
        triple = std::max(triple, std::abs(a + b) / (s * abs(v)));
    }
    double worst = std::max({ham, assoc, mult, anti, triple});
    return {worst <= 1e-13, fmt::format("hamilton {:.1e} assoc {:.1e} norm {:.1e} conj {:.1e} triple {:.1e} over {} cases (tol 1e-13)",
                                        ham, assoc, mult, anti, triple, n)};
}

Outcome fourier() {
    std::mt19937_64 rng(2);
    Grid g = Grid::square(256, kTwoPi * 16);
    QuaternionField f = random_field(g, rng);
    double rt = std::max(rel_l2_diff(inverse(fft_left(f)), f), rel_l2_diff(inverse(fft_right(f)), f));
    double pl = std::max(std::abs(spectral_inner(fft_left(f), fft_left(f)) - inner(f, f)),
                         std::abs(spectral_inner(fft_right(f), fft_right(f)) - inner(f, f))) /
                inner(f, f);
    // zero mean, Nyquist lines removed: the odd symbols are exact there
    SpectralField s = fft_left(band_limited(g, 127, rng));
    s.at(0, 0) = {};
    QuaternionField h = inverse(s);
    double hh = rel_l2_diff(flat_hilbert(flat_hilbert(h)), h);
    double dd = rel_l2_diff(flat_hilbert(k_dirac(h)), fractional_derivative(h, 1));
    bool ok = rt <= 1e-12 && pl <= 1e-12 && hh <= 1e-11 && dd <= 1e-11;
    return {ok, fmt::format("round trip {:.1e} plancherel {:.1e} (tol 1e-12); H0^2 - I {:.1e} |D| - H0 kD {:.1e} (tol 1e-11) on 256^2", rt,
                            pl, hh, dd)};
}

Outcome mode_filter_tail() {
    const int m = 4;
    ComplexField A = default_envelope(64);
    ms::Context ctx = ms::Context::make(A.grid, PacketParams::make(1.0, 0.1), 0);
    ms::Field x = ms::term_a(ctx, 0, 1, ms::Jet{{A}});
    std::vector<double> eps{0.2, 0.1, 0.05}, tail;
    for (double e : eps) {
        Grid fast = ms::fast_grid_for(x, e, 256);
        QuaternionField f = ms::realize(x, e, fast);
        tail.push_back(l2_norm(f - mode_filter(f, 1.0)));
    }
    double slope = fit_slope(eps, tail);
    double C = tail[0] / (std::pow(eps[0], m - 1) * csobolev_norm(A, m));
    return {slope >= m - 1.3, fmt::format("tail {:.3e} {:.3e} {:.3e}, slope {:.2f} >= {:.1f}; C at eps 0.2 = {:.3e}", tail[0], tail[1], tail[2],
                                          slope, m - 1.3, C)};
}

Outcome truncation() {
    Grid slow = Grid::square(256, kSlowLength);
    ComplexField F = gaussian_envelope(slow, 0.5, 2.0, 0.5);
    std::vector<double> eps{0.2, 0.1, 0.05}, plus, minus;
    for (double e : eps) {
        plus.push_back(h0_truncation_error({F, 1.0, e}, 2, TruncationSign::Plus));
        minus.push_back(h0_truncation_error({F, 1.0, e}, 2, TruncationSign::Minus));
    }
    double sp = fit_slope(eps, plus), sm = fit_slope(eps, minus);
    return {sp >= 2.7, fmt::format("H^2 error {:.3e} {:.3e} {:.3e}, slope {:.2f} >= 2.7 with H0 ~ sum eps^j H0^(j); "
                                   "alternating-sign grouping slope {:.2f}",
                                   plus[0], plus[1], plus[2], sp, sm)};
}

Outcome hnls() {
    PacketParams p = PacketParams::make(1.0, 0.1);
    Envelope A0{default_envelope(128), 0.0};
    std::vector<Envelope> path = evolve_A_path(A0, p, 1.0, 1e-3, 100);
    double m0 = mass(A0.values), h0 = hamiltonian(A0.values, p), md = 0, hd = 0;
    for (const auto& e : path) {
        md = std::max(md, std::abs(mass(e.values) - m0) / m0);
        hd = std::max(hd, std::abs(hamiltonian(e.values, p) - h0) / std::abs(h0));
    }
    std::vector<double> dts{1e-2, 5e-3, 2.5e-3}, err;
    Envelope ref = evolve_A_rk4(A0, p, 1.0, dts.back() / 16);
    for (double dt : dts) {
        ComplexField d = evolve_A(A0, p, 1.0, dt).values;
        for (std::size_t n = 0; n < d.v.size(); ++n) d.v[n] -= ref.values.v[n];
        err.push_back(l2_norm(d));
    }
    double order = fit_slope(dts, err);
    bool ok = md <= 1e-8 && hd <= 1e-6 && order >= 1.8 && order <= 2.2;
    return {ok, fmt::format("128^2, T = 1, dt = 1e-3: mass drift {:.1e} (<= 1e-8), hamiltonian drift {:.1e} (<= 1e-6); Strang order {:.3f} in [1.8, 2.2]",
                            md, hd, order)};
}

Outcome closure() {
    Grid gs = Grid::square(64, kSlowLength);
    PacketParams p = PacketParams::make(1.0, 0.1);
    ms::Context c = ms::Context::make(gs, p, 1);
    std::mt19937_64 rng(6);
    double i69 = 0, simp = 0;
    for (int t = 0; t < 5; ++t) {
        ComplexField A = random_complex(gs, 8, rng), B = random_complex(gs, 8, rng);
        ComplexField AT = hnls_rhs(A, hnls_rhs_coefficients(p));
        Eps3Forcing F = epsilon3_forcing(c, A, AT, B, m2_closure(A, p.k));
        i69 = std::max(i69, ms::max_abs(F.terms.at(6) + F.terms.at(9)));
        simp = std::max(simp, ms::max_abs(F.combined - F.simplified) / (1 + ms::max_abs(F.combined)));
    }
    std::vector<Envelope> path = evolve_A_path({default_envelope(64), 0.0}, p, 0.5 + 1e-3, 1e-3, 1);
    ClosureReport ev = hnls_closure_residual(path[500].values, central_difference(path, 500), ComplexField(gs), p);
    bool ok = i69 <= 1e-12 && simp <= 1e-9 && ev.forcing <= 10 * ev.defect;
    return {ok, fmt::format("I6 + I9 {:.1e} (<= 1e-12); sum I_j vs collected {:.1e} (<= 1e-9); evolved forcing {:.3e} <= 10 x defect {:.3e}", i69,
                            simp, ev.forcing, ev.defect)};
}

Outcome normal_form() {
    auto gen = NormalFormKernel::generic(1.0, [](double a, double b) { return cplx(a, b); }, [](double a, double b) { return cplx(b, -a); });
    double back = 0;
    for (const auto& K : {NormalFormKernel::particular1(1.0), NormalFormKernel::particular7(1.0, 1), NormalFormKernel::particular7(1.0, 2), gen})
        back = std::max(back, back_substitution_sweep(K, 100000, 3).max_residual);
    LemmaSweep L = denominator_lemma_sweep(100000, 7);
    GainReport G = derivative_gain_check(1.0, 100000, 5);
    BilinearStudy B = bilinear_estimate_study(1.0, {0.2, 0.1}, 11);
    bool ok = back <= 1e-12 && L.C0_fit <= 16 && L.b_printed_violations == 0 && L.c_violations == 0 && G.violations == 0 &&
              G.C_fit <= 6.0 && B.slope >= 0.9;
    return {ok, fmt::format("back substitution {:.1e} (<= 1e-12); C0 fit {:.2f} (<= 16); (b) violations {} of {} as stated, {} with 2 min(|xi'|, "
                            "|xi - xi'|); (c) violations {}; gain C {:.2f} (<= 6k, {} violations); bilinear slope {:.2f} (>= 0.9)",
                            back, L.C0_fit, L.b_printed_violations, L.samples, L.b_corrected_violations, L.c_violations, G.C_fit,
                            G.violations, B.slope)};
}

Outcome sweep() {
    ComplexField A = default_envelope(64);
    PacketParams p = PacketParams::make(1.0, 0.1);
    std::vector<double> eps{0.2, 0.1, 0.05};
    ConvergenceStudy full = residual_sweep(A, p, eps, 2);
    ResidualOptions o1;
    o1.orders = 1;
    ConvergenceStudy ab = residual_sweep(A, p, eps, 2, o1);
    std::string grids;
    for (const auto& g : full.fast_grids) grids += fmt::format("{}{}x{}", grids.empty() ? "" : ",", g.na, g.nb);
    bool ok = full.slope_projected >= 3.5 && full.slope_hs >= 3.0 && ab.slope_hs <= 2.5;
    return {ok, fmt::format("H^2 slopes: projected {:.2f} (>= 3.5), full {:.2f} (>= 3.0), order-1 ablation {:.2f} (<= 2.5); slow 64^2, fast {}",
                            full.slope_projected, full.slope_hs, ab.slope_hs, grids)};
}

Outcome energy() {
    std::mt19937_64 rng(9);
    Grid g = Grid::square(64, kTwoPi * 4);
    double worst = 0, minval = 1e300;
    for (int t = 0; t < 1000; ++t) {
        SpectralField s = fft_left(band_limited(g, 12, rng));
        s.at(0, 0) = {};
        QuaternionField th = project_minus_h0(inverse(s));
        double form = flat_energy_form(th), h = homogeneous_norm(th, 0.5);
        worst = std::max(worst, std::abs(form - h * h) / (h * h));
        minval = std::min(minval, form);
    }
    return {worst <= 1e-11 && minval >= 0,
            fmt::format("1000 fields in the -H0 subspace: |form - |theta|^2_(H^1/2)| / norm {:.1e} (<= 1e-11), min form {:.3e} (>= 0)", worst, minval)};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome determinism() {
    fs::path base = fs::temp_directory_path() / "wpk-acceptance";
    fs::remove_all(base);
    int same = 0, total = 0;
    std::string differing;
    for (const auto& cmd : command_names()) {
        std::string a, b;
        for (int rep = 0; rep < 2; ++rep) {
            fs::path dir = base / std::to_string(rep);
            RunConfig c = parse_config("", cmd, {"outdir=" + dir.string(), "timestamp=rerun", "seed=7"});
            (rep == 0 ? a : b) = slurp(run_command(c).csv_path);
        }
        ++total;
        if (!a.empty() && a == b)
            ++same;
        else
            differing += " " + cmd;
    }
    fs::remove_all(base);
    return {same == total, fmt::format("{} of {} commands rerun into separate directories gave byte-identical CSVs{}", same, total,
                                       differing.empty() ? "" : ";" + differing + " differ")};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance report"};
    std::vector<int> known_fail, only;
    app.add_option("--known-fail", known_fail, "criteria expected to fail");
    app.add_option("--only", only, "run only these criteria");
    CLI11_PARSE(app, argc, argv);
    std::set<int> expected(known_fail.begin(), known_fail.end()), selected(only.begin(), only.end());

    std::vector<Criterion> all = {
        {1, "algebra", 5, algebra},
        {2, "fourier", 30, fourier},
        {3, "mode-filter tail", 60, mode_filter_tail},
        {4, "flat-Hilbert truncation", 120, truncation},
        {5, "HNLS solver", 180, hnls},
        {6, "third-order closure", 120, closure},
        {7, "normal form", 120, normal_form},
        {8, "residual sweep", 600, sweep},
        {9, "flat energy", 30, energy},
        {10, "determinism", 600, determinism},
    };
    int unexpected = 0;
    for (const auto& c : all) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, fmt::format("error: {}", e.what())};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass && secs < c.time_limit;
        std::cout << fmt::format("[{:>2}] {} {:<24} {} ({:.2f} s, limit {:.0f} s){}\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail, secs,
                                 c.time_limit, !pass && expected.count(c.id) ? " [known failure]" : "")
                  << std::flush;
        if (pass == bool(expected.count(c.id))) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
