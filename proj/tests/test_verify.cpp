#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "wpk/verify.hpp"

using namespace wpk;
using namespace wpk::test;

namespace {

const double Ls = kTwoPi * 4;
const Grid gs = Grid::square(64, Ls);

ComplexField envelope_A() {
    ComplexField A = gaussian(gs, 2.0);
    for (int i = 0; i < gs.na; ++i)
        for (int j = 0; j < gs.nb; ++j) A(i, j) *= 0.5 * std::exp(cplx(0, 0.5 * (gs.beta(j) - Ls / 2)));
    return A;
}

ComplexField envelope_B() {
    ComplexField B(gs);
    for (int i = 0; i < gs.na; ++i)
        for (int j = 0; j < gs.nb; ++j) {
            double x = gs.alpha(i) - Ls / 2 - 1, y = gs.beta(j) - Ls / 2;
            B(i, j) = cplx(0.3, -0.2) * std::exp(-(x * x + y * y) / 3.0);
        }
    return B;
}

ComplexField constant(cplx v) {
    ComplexField c(gs);
    for (auto& z : c.v) z = v;
    return c;
}

QuaternionField zero_mean(QuaternionField f) {
    Quaternion m = fft_left(f).at(0, 0);
    for (auto& q : f.data) q -= m;
    return f;
}

}  // namespace

TEST_CASE("slope fit") {
    CHECK(fit_slope({1, 2, 4}, {3, 12, 48}) == doctest::Approx(2));
    CHECK(fit_slope({0.2, 0.1, 0.05}, {8e-3, 1e-3, 1.25e-4}) == doctest::Approx(3));
}

TEST_CASE("dispersion relation") {
    PacketParams p = PacketParams::make(1.0, 0.1);
    CHECK(dispersion_residual(ComplexField(gs), p) <= 1e-12);
    CHECK(dispersion_residual(constant(1.0), p) <= 1e-10);
    CHECK(dispersion_residual(envelope_A(), p) <= 1e-10);

    PacketParams q = PacketParams::make(2.0, 0.1);
    q.omega = 1.0;
    double r = dispersion_residual(constant(1.0), q);
    CHECK(r == doctest::Approx(std::abs(q.k - q.omega * q.omega) * dispersion_profile_norm(constant(1.0), q)).epsilon(1e-10));
    CHECK(r > 1.0);

    // the squared residual is quadratic in the detuning
    std::vector<double> det, r2;
    for (double d : {1e-2, 5e-3, 2.5e-3}) {
        PacketParams w = PacketParams::make(1.0, 0.1);
        w.omega = std::sqrt(1.0 - d);
        det.push_back(d);
        double v = dispersion_residual(envelope_A(), w);
        r2.push_back(v * v);
    }
    CHECK(fit_slope(det, r2) == doctest::Approx(2).epsilon(1e-6));
}

TEST_CASE("group velocity frame") {
    PacketParams p = PacketParams::make(1.0, 0.1);
    ComplexField A = envelope_A();
    CHECK(group_velocity_residual(A, traveling_frame_t1(A, p), p) <= 1e-11);
    CHECK(group_velocity_residual(A, ComplexField(gs), p) ==
          doctest::Approx(2 * p.omega * p.omega_p * l2_norm(cdx(A))).epsilon(1e-12));
    ComplexField c = constant({0.3, 0.1});
    CHECK(group_velocity_residual(c, traveling_frame_t1(c, p), p) <= 1e-12);
}

TEST_CASE("third-order forcing") {
    PacketParams p = PacketParams::make(1.0, 0.1);
    ms::Context c = ms::Context::make(gs, p, 1);
    ComplexField Z(gs);
    Eps3Forcing z = epsilon3_forcing(c, Z, Z, Z, Z);
    for (const auto& [j, f] : z.terms) CHECK(ms::max_abs(f) <= 1e-12);
    CHECK(ms::max_abs(z.combined) <= 1e-12);

    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 3; ++trial) {
        ComplexField A = random_complex(gs, 6, rng), B = random_complex(gs, 6, rng), M2 = random_complex(gs, 6, rng);
        ComplexField AT = hnls_rhs(A, hnls_rhs_coefficients(p));
        Eps3Forcing F = epsilon3_forcing(c, A, AT, B, M2);
        CHECK(F.terms.size() == 8);
        CHECK(ms::max_abs(F.terms.at(6) + F.terms.at(9)) <= 1e-12 * (1 + ms::max_abs(F.terms.at(6))));
        CHECK(ms::max_abs(F.combined - F.simplified) <= 1e-9 * (1 + ms::max_abs(F.combined)));
    }
}

TEST_CASE("closure of the envelope equation") {
    PacketParams p = PacketParams::make(1.0, 0.1);
    ComplexField Z(gs);
    CHECK(hnls_closure_residual(Z, Z, Z, p).forcing <= 1e-12);

    // plane wave a0 e^{j(kappa X - nu T)} solves the envelope equation when nu = a kappa^2 - c a0^2
    auto hc = hnls_rhs_coefficients(p);
    double kap = 2 * kTwoPi / Ls, a0 = 0.7, nu = hc.a * kap * kap - hc.c * a0 * a0;
    ComplexField P(gs), PT(gs);
    for (int i = 0; i < gs.na; ++i)
        for (int j = 0; j < gs.nb; ++j) {
            P(i, j) = a0 * std::exp(cplx(0, kap * gs.alpha(i)));
            PT(i, j) = cplx(0, -nu) * P(i, j);
        }
    CHECK(hnls_defect(P, PT, p) <= 1e-10);
    CHECK(hnls_closure_residual(P, PT, Z, p).forcing <= 1e-8);

    // evolved Gaussian: the forcing tracks the solver defect
    std::vector<Envelope> path = evolve_A_path({envelope_A(), 0.0}, p, 0.5 + 1e-3, 1e-3, 1);
    ClosureReport ev = hnls_closure_residual(path[500].values, central_difference(path, 500), Z, p);
    CHECK(path[500].T == doctest::Approx(0.5));
    CHECK(ev.forcing <= 10 * ev.defect);
}

TEST_CASE("multiscale residual order") {
    PacketParams p = PacketParams::make(1.0, 0.1);
    ComplexField A = envelope_A();
    CHECK_THROWS(residual_sweep(A, p, {0.1, 0.2}, 2));
    ConvergenceStudy zero = residual_sweep(ComplexField(gs), p, {0.2, 0.1}, 2);
    for (double v : zero.hs) CHECK(v <= 1e-12);

    ConvergenceStudy st = residual_sweep(A, p, {0.2, 0.1, 0.05}, 2);
    CHECK(st.slope_projected >= 3.5);
    CHECK(st.slope_hs >= 3.0);
    CHECK(st.slope_l2 >= 3.0);
    for (std::size_t i = 1; i < st.hs.size(); ++i) {
        CHECK(st.hs[i] < st.hs[i - 1]);
        CHECK(st.projected[i] < st.projected[i - 1]);
    }
    // orders 1..3 of the multiscale residual vanish
    REQUIRE(st.order_norms.size() >= 4);
    for (int o = 1; o <= 3; ++o) CHECK(st.order_norms[o] <= 1e-9);

    ConvergenceStudy again = residual_sweep(A, p, {0.2, 0.1, 0.05}, 2);
    CHECK(again.slope_hs == st.slope_hs);

    ResidualOptions o1;
    o1.orders = 1;
    ConvergenceStudy ab = residual_sweep(A, p, {0.2, 0.1, 0.05}, 2, o1);
    CHECK(ab.slope_hs <= 2.5);
}

TEST_CASE("flat energy") {
    Grid fg = Grid::square(64, kTwoPi * 4);
    QuaternionField Z(fg);
    CHECK(flat_energy(Z, Z) == 0);

    std::mt19937_64 rng(107);
    for (int n = 0; n < 20; ++n) {
        QuaternionField th = project_minus_h0(zero_mean(band_limited(fg, 12, rng)));
        CHECK(max_abs_diff(flat_hilbert(th), -1.0 * th) <= 1e-12 * max_abs(th));
        double h = homogeneous_norm(th, 0.5);
        CHECK(std::abs(flat_energy_form(th) - h * h) <= 1e-11 * h * h);
        QuaternionField tt = band_limited(fg, 12, rng);
        CHECK(std::abs(flat_energy(th, tt) - (inner(tt, tt) + h * h)) <= 1e-11 * (inner(tt, tt) + h * h));
    }
    int negative = 0;
    for (int n = 0; n < 1000; ++n) negative += flat_energy_form(project_minus_h0(band_limited(Grid::square(16, kTwoPi), 5, rng))) < 0;
    CHECK(negative == 0);
}
