#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "wpk/hilbert_expansion.hpp"
#include "wpk/verify.hpp"

using namespace wpk;
using namespace wpk::test;

namespace {

// random band-limited zero-mean field keeping the components selected by mask (bit c for q_c)
QuaternionField masked(const Grid& g, int band, int mask, std::mt19937_64& rng) {
    SpectralField s = fft_left(band_limited(g, band, rng));
    s.at(0, 0) = {};
    QuaternionField f = inverse(s);
    for (auto& q : f.data) q = {mask & 1 ? q.q0 : 0, mask & 2 ? q.q1 : 0, mask & 4 ? q.q2 : 0, mask & 8 ? q.q3 : 0};
    return f;
}

ComplexField constant(const Grid& g, cplx v) {
    ComplexField c(g);
    for (auto& z : c.v) z = v;
    return c;
}

ComplexField chirped_gaussian(const Grid& g, double width, cplx amp) {
    ComplexField F = gaussian(g, width);
    for (int i = 0; i < g.na; ++i)
        for (int j = 0; j < g.nb; ++j) F(i, j) *= amp * std::exp(cplx(0, 0.3 * (g.alpha(i) - g.la / 2)));
    return F;
}

// n-th Taylor coefficient at 0 of an analytic g, by the trapezoid rule on a circle of radius r
cplx taylor(const std::function<cplx(cplx)>& g, int n, double r = 0.2, int N = 64) {
    cplx s = 0;
    for (int m = 0; m < N; ++m) {
        cplx z = std::polar(r, kTwoPi * m / N);
        s += g(z) * std::pow(z, -n);
    }
    return s / double(N);
}

}  // namespace

TEST_CASE("realized packet matches the envelope at slow points") {
    Grid slow = Grid::square(128, 8 * M_PI);
    Packet pk{chirped_gaussian(slow, 2, {1, 0.5}), 1.0, 0.25};
    QuaternionField f = realize(pk);
    Grid fast = pk.fast_grid();
    double err = 0;
    for (int i = 0; i < slow.na; ++i)
        for (int j = 0; j < slow.nb; ++j)
            err = std::max(err, qdiff(f(i, j), Quaternion::from_1j(pk.F(i, j) * std::exp(cplx(0, fast.alpha(i))))));
    CHECK(err <= 1e-10);
}

TEST_CASE("expansion operators on simple envelopes") {
    Grid slow = Grid::square(128, 8 * M_PI);
    Packet pk{chirped_gaussian(slow, 2, {1, 0.5}), 1.0, 0.1};
    CHECK(max_abs_diff(h0_expansion(pk, 0), -1.0 * realize(pk)) <= 1e-14);
    Packet flat{constant(slow, {0.7, -0.2}), 1.0, 0.1};
    CHECK(max_abs(h0_expansion(flat, 1)) <= 1e-12);
    CHECK_THROWS(h0_expansion(pk, 4));
    CHECK_THROWS(h0_expansion(pk, -1));
}

TEST_CASE("expansion operators match the Taylor series of the symbol on a single mode") {
    // on e^{j xi.x} c the flat Hilbert transform acts as -(xi_1/|xi|) - k (xi_2/|xi|) from the left
    Grid slow = Grid::square(256, kTwoPi * 4);
    double k = 1.0, m1 = 1.0, m2 = 1.0;
    ComplexField F(slow);
    for (int i = 0; i < slow.na; ++i)
        for (int j = 0; j < slow.nb; ++j) F(i, j) = cplx(0.6, 0.8) * std::exp(cplx(0, m1 * slow.alpha(i) + m2 * slow.beta(j)));
    Packet pk{F, k, 0.1};
    QuaternionField f = realize(pk);
    auto norm = [&](cplx e) { return std::sqrt((k + e * m1) * (k + e * m1) + e * e * m2 * m2); };
    for (int n = 0; n <= 3; ++n) {
        cplx c1 = taylor([&](cplx e) { return -(k + e * m1) / norm(e); }, n);
        cplx c2 = taylor([&](cplx e) { return -(e * m2) / norm(e); }, n);
        QuaternionField oracle = c1.real() * f + c2.real() * lmul(Quaternion::k(), f);
        CHECK(std::abs(c1.imag()) + std::abs(c2.imag()) <= 1e-12);
        CHECK(max_abs_diff(h0_expansion(pk, n), oracle) <= 1e-10);
    }
}

TEST_CASE("truncation error decays at third order") {
    Grid slow = Grid::square(256, 8 * M_PI);
    Packet zero{ComplexField(slow), 1.0, 0.1};
    CHECK(h0_truncation_error(zero, 2) == 0);
    std::vector<double> eps{0.2, 0.1, 0.05}, err;
    for (double e : eps) err.push_back(h0_truncation_error({chirped_gaussian(slow, 2, {1, 0.5}), 1.0, e}, 2));
    CHECK(fit_slope(eps, err) >= 2.7);
    CHECK(err[1] <= 0.5 * err[0]);
}

TEST_CASE("compact first-order operator") {
    std::mt19937_64 rng(51);
    Grid g = Grid::square(64, kTwoPi);
    QuaternionField f = masked(g, 8, 15, rng), lam = masked(g, 8, 14, rng);
    SurfaceSlices s = SurfaceSlices::from_lambda(lam);
    CHECK(max_abs_diff(s.lambda(), lam) == 0);
    CHECK(max_abs(h1_full(f, SurfaceSlices::from_lambda(QuaternionField(g)))) == 0);
    QuaternionField one(g);
    for (auto& q : one.data) q = Quaternion(1);
    SurfaceSlices cst{0.5 * one, -2.0 * one, 1.5 * one};
    CHECK(max_abs(h1_full(f, cst)) <= 1e-11 * max_abs(f));
    QuaternionField a = h1_full(f, s);
    CHECK(max_abs_diff(a, h1_three_commutator(f, s)) <= 1e-10 * max_abs(a));
    CHECK(rel_l2_diff(h1_full(f, SurfaceSlices{2.0 * s.x, 2.0 * s.y, 2.0 * s.z}), 2.0 * a) <= 1e-10);
}

TEST_CASE("second-order operator") {
    std::mt19937_64 rng(53);
    Grid g = Grid::square(64, kTwoPi);
    QuaternionField f = masked(g, 8, 15, rng), lam = masked(g, 8, 14, rng);
    SurfaceSlices s = SurfaceSlices::from_lambda(lam);
    CHECK(max_abs(h2_full(f, SurfaceSlices::from_lambda(QuaternionField(g)))) == 0);
    CHECK(rel_l2_diff(h2_full(f, SurfaceSlices{2.0 * s.x, 2.0 * s.y, 2.0 * s.z}), 4.0 * h2_full(f, s)) <= 1e-10);

    // x = x(alpha), y = z = 0, f = f(alpha): only the alpha-alpha pair survives
    QuaternionField x(g), fa(g);
    for (int i = 0; i < g.na; ++i)
        for (int j = 0; j < g.nb; ++j) {
            x(i, j) = Quaternion(0.3 * std::sin(g.alpha(i)) + 0.1 * std::cos(2 * g.alpha(i)));
            fa(i, j) = exp_j(3 * g.alpha(i)) * Quaternion{0.2, -0.4, 0.5, 0.1};
        }
    Operator H = [](const QuaternionField& v) { return flat_hilbert(v); };
    Operator inner = [&](const QuaternionField& v) { return commutator(x, H, v); };
    QuaternionField oracle = -1.0 * commutator(x, H, mul(d_alpha(x), d_alpha(fa))) + 0.5 * commutator(x, inner, d_alpha(d_alpha(fa)));
    QuaternionField out = h2_full(fa, SurfaceSlices{x, QuaternionField(g), QuaternionField(g)});
    CHECK(max_abs_diff(out, oracle) <= 1e-10 * max_abs(oracle));
}

TEST_CASE("Hilbert commutator anticommutes with the Hilbert transform") {
    std::mt19937_64 rng(57);
    Grid g = Grid::square(64, kTwoPi);
    QuaternionField a = masked(g, 8, 5, rng), v = masked(g, 8, 15, rng);
    Operator H = [](const QuaternionField& w) { return flat_hilbert(w); };
    auto comm = [&](const QuaternionField& w) { return flat_hilbert(mul(a, w)) - mul(a, flat_hilbert(w)); };
    // H^2 = I - (mean); v has zero mean, so the mean of a v is the only leftover
    QuaternionField mean(g);
    Quaternion m = fft_left(mul(a, v)).at(0, 0);
    for (auto& q : mean.data) q = m;
    QuaternionField lhs = flat_hilbert(comm(v)) + mean;
    QuaternionField rhs = -1.0 * comm(flat_hilbert(v));
    CHECK(max_abs_diff(lhs, rhs) <= 1e-10 * max_abs(lhs));
}

TEST_CASE("multiscale operators") {
    std::mt19937_64 rng(59);
    Grid slow = Grid::square(32, kTwoPi * 2);
    ms::Context ctx = ms::Context::make(slow, PacketParams::make(1.0, 0.1), 3);
    ComplexField F = random_complex(slow, 4, rng), A = random_complex(slow, 4, rng), B = random_complex(slow, 4, rng);
    ms::Field f = ms::term_a(ctx, 0, 1, ms::Jet{{F}});

    std::map<int, ms::Field> zero{{1, ms::Field(ctx, 1)}, {2, ms::Field(ctx, 1)}};
    for (HWhich w : {HWhich::H1_1, HWhich::H1_2, HWhich::H2_2}) CHECK(ms::slow_norm(h_multiscale(f, zero, w)) == 0);
    CHECK_THROWS(h_multiscale(f, {{1, lambda1_field(ctx, A)}}, HWhich::H1_2));

    ComplexField Z(slow);
    CHECK(ms::slow_norm(h2_wavenumber_formulas(ctx, F, Z, Z, -1)) == 0);
    CHECK_THROWS(h2_wavenumber_formulas(ctx, F, A, B, 0));

    for (double ys : {1.0, -1.0})
        for (int sign : {-1, 1}) {
            std::map<int, ms::Field> lam{{1, lambda1_field(ctx, A)}, {2, lambda2_field(ctx, A, B, ys)}};
            ComplexField G = F;
            if (sign == -1)
                for (auto& z : G.v) z = std::conj(z);
            ms::Field g0 = ms::term_a(ctx, 0, sign, ms::Jet{{G}});
            ms::Field lhs = h_multiscale(g0, lam, HWhich::H1_2) + h_multiscale(g0, lam, HWhich::H2_2);
            ms::Field rhs = h2_wavenumber_formulas(ctx, F, A, B, sign);
            CHECK(ms::slow_norm(lhs - rhs) <= 1e-8 * ms::slow_norm(lhs));
        }

    // F = A, B = 0: the carrier-phase block is -k^2 A^2 conj(A)
    ms::Field out = h2_wavenumber_formulas(ctx, A, A, Z, -1);
    auto [a1, b1] = ms::block_fields(out, 0, 1);
    double err = 0, scale = 0;
    for (std::size_t n = 0; n < slow.size(); ++n) {
        cplx e = -A.v[n] * A.v[n] * std::conj(A.v[n]);
        err = std::max(err, std::abs(a1.v[n] - e) + std::abs(b1.v[n]));
        scale = std::max(scale, std::abs(e));
    }
    CHECK(err <= 1e-10 * scale);
}

TEST_CASE("first-order multiscale commutator with frozen slow variables") {
    Grid slow = Grid::square(32, kTwoPi * 2);
    double eps = 0.1;
    ms::Context ctx = ms::Context::make(slow, PacketParams::make(1.0, eps), 3);
    ComplexField A = constant(slow, {0.4, 0.3}), Abar = constant(slow, {0.4, -0.3});
    ms::Field l1 = lambda1_field(ctx, A);
    for (int label : {1, -1}) {
        ms::Field f = ms::term_a(ctx, 0, label, ms::Jet{{label == 1 ? A : Abar}});
        ms::Field h = h_multiscale(f, {{1, l1}}, HWhich::H1_1);
        Grid fast = ms::fast_grid_for(f, eps, 256);
        QuaternionField lam = ms::realize(l1, eps, fast);
        QuaternionField oracle = h1_full(ms::realize(f, eps, fast), SurfaceSlices::from_lambda(lam));
        CHECK(max_abs_diff(ms::realize(h, eps, fast), oracle) <= 1e-9 * (1 + max_abs(oracle)));
        if (label == -1) CHECK(max_abs(oracle) > 0.1);
    }

    // with no j-component at first order the beta term only sees -i z
    MsSlices s = ms_slices(l1);
    CHECK(ms::max_abs(s.y) == 0);
    CHECK(ms::slow_norm(s.p2() + ms::lmul_i(s.z)) <= 1e-15);
}
