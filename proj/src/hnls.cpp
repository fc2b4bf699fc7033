#include "wpk/hnls.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "wpk/fft.hpp"
#include "wpk/spectral.hpp"

namespace wpk {

PacketParams PacketParams::make(double k, double eps) {
    if (!(k > 0)) throw std::invalid_argument("PacketParams: k must be positive");
    PacketParams p;
    p.k = k;
    p.eps = eps;
    p.omega = std::sqrt(k);
    p.omega_p = 0.5 / std::sqrt(k);
    p.omega_pp = -0.25 / (k * std::sqrt(k));
    return p;
}

HnlsCoefficients hnls_rhs_coefficients(const PacketParams& p) {
    if (!(p.k > 0)) throw std::invalid_argument("hnls_rhs_coefficients: k must be positive");
    return {-p.omega_pp / 2, -p.omega_pp, p.k * p.k * p.omega / 2};
}

ComplexField hnls_rhs(const ComplexField& A, const HnlsCoefficients& c) {
    const cplx I(0, 1);
    ComplexField lin = apply_symbol(A, [&](double x1, double x2) { return -c.a * x1 * x1 + c.b * x2 * x2; }, false);
    ComplexField out(A.grid);
    for (std::size_t n = 0; n < A.v.size(); ++n) out.v[n] = I * (lin.v[n] + c.c * std::norm(A.v[n]) * A.v[n]);
    return out;
}

ComplexField hnls_rhs_dot(const ComplexField& A, const ComplexField& Ad, const HnlsCoefficients& c) {
    const cplx I(0, 1);
    ComplexField lin = apply_symbol(Ad, [&](double x1, double x2) { return -c.a * x1 * x1 + c.b * x2 * x2; }, false);
    ComplexField out(A.grid);
    for (std::size_t n = 0; n < A.v.size(); ++n) {
        cplx a = A.v[n], d = Ad.v[n];
        out.v[n] = I * (lin.v[n] + c.c * (2.0 * std::norm(a) * d + a * a * std::conj(d)));
    }
    return out;
}

void dealias(std::vector<cplx>& c, const Grid& g) {
    int ca = g.na / 3, cb = g.nb / 3;
    for (int i = 0; i < g.na; ++i) {
        bool cut_a = std::abs(Grid::mode(i, g.na)) > ca;
        for (int j = 0; j < g.nb; ++j)
            if (cut_a || std::abs(Grid::mode(j, g.nb)) > cb) c[g.idx(i, j)] = 0.0;
    }
}

namespace {

std::vector<cplx> propagator(const Grid& g, const HnlsCoefficients& c, double dt) {
    std::vector<cplx> e(g.size());
    for (int i = 0; i < g.na; ++i)
        for (int j = 0; j < g.nb; ++j) {
            double x1 = g.xi1(i), x2 = g.xi2(j);
            double ph = (-c.a * x1 * x1 + c.b * x2 * x2) * dt;
            e[g.idx(i, j)] = cplx(std::cos(ph), std::sin(ph));
        }
    return e;
}

void check_finite(const std::vector<cplx>& v, double T) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::runtime_error(fmt::format("non-finite envelope values at T = {}", T));
}

void check_dt(double dt, double T) {
    if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
    if (!(T >= 0)) throw std::invalid_argument("T_final must be nonnegative");
}

// Strang stepper on the coefficient side
struct Strang {
    Grid g;
    HnlsCoefficients c;
    StepOptions opt;
    std::vector<cplx> half, full;

    Strang(const Grid& g_, const HnlsCoefficients& c_, double dt, StepOptions o)
        : g(g_), c(c_), opt(o), half(propagator(g_, c_, dt / 2)), full(propagator(g_, c_, dt)) {}

    void nonlinear(std::vector<cplx>& hat, double dt) const {
        if (opt.linear_only) return;
        ComplexField A = synth(g, hat);
        for (auto& z : A.v) {
            double ph = c.c * std::norm(z) * dt;
            z *= cplx(std::cos(ph), std::sin(ph));
        }
        hat = coeffs(A);
        if (opt.dealias) dealias(hat, g);
    }

    // advances nsteps full steps
    void run(std::vector<cplx>& hat, int nsteps, double dt) const {
        for (int s = 0; s < nsteps; ++s) {
            for (std::size_t n = 0; n < hat.size(); ++n) hat[n] *= half[n];
            nonlinear(hat, dt);
            for (std::size_t n = 0; n < hat.size(); ++n) hat[n] *= half[n];
        }
    }
};

int step_count(double T, double dt) {
    int n = int(std::llround(T / dt));
    if (n == 0 && T > 0) n = 1;
    return n;
}

}  // namespace

ComplexField linear_step(const ComplexField& A, const HnlsCoefficients& c, double dt) {
    std::vector<cplx> hat = coeffs(A);
    auto e = propagator(A.grid, c, dt);
    for (std::size_t n = 0; n < hat.size(); ++n) hat[n] *= e[n];
    return synth(A.grid, std::move(hat));
}

Envelope evolve_A(const Envelope& A0, const PacketParams& p, double T_final, double dt, StepOptions opt) {
    auto path = evolve_A_path(A0, p, T_final, dt, 0, opt);
    return path.back();
}

std::vector<Envelope> evolve_A_path(const Envelope& A0, const PacketParams& p, double T_final, double dt, int every,
                                    StepOptions opt) {
    check_dt(dt, T_final);
    const Grid& g = A0.values.grid;
    int nsteps = step_count(T_final, dt);
    double h = nsteps > 0 ? T_final / nsteps : dt;
    Strang st(g, hnls_rhs_coefficients(p), h, opt);
    std::vector<cplx> hat = coeffs(A0.values);
    std::vector<Envelope> out{A0};
    int done = 0;
    while (done < nsteps) {
        int chunk = every > 0 ? std::min(every, nsteps - done) : nsteps - done;
        st.run(hat, chunk, h);
        done += chunk;
        check_finite(hat, A0.T + done * h);
        if (every > 0 || done == nsteps) out.push_back({synth(g, hat), A0.T + done * h});
    }
    if (nsteps == 0) out.push_back(A0);
    return out;
}

Envelope evolve_A_rk4(const Envelope& A0, const PacketParams& p, double T_final, double dt, StepOptions opt) {
    check_dt(dt, T_final);
    const Grid& g = A0.values.grid;
    HnlsCoefficients c = hnls_rhs_coefficients(p);
    int nsteps = step_count(T_final, dt);
    double h = nsteps > 0 ? T_final / nsteps : dt;
    auto eh = propagator(g, c, h / 2);
    const cplx I(0, 1);
    // N in interaction picture, evaluated on coefficients
    auto N = [&](const std::vector<cplx>& hat) {
        ComplexField A = synth(g, hat);
        for (auto& z : A.v) z = opt.linear_only ? cplx(0) : I * c.c * std::norm(z) * z;
        auto r = coeffs(A);
        if (opt.dealias) dealias(r, g);
        return r;
    };
    std::vector<cplx> v = coeffs(A0.values);
    std::size_t n = v.size();
    std::vector<cplx> tmp(n);
    for (int s = 0; s < nsteps; ++s) {
        auto k1 = N(v);
        for (std::size_t m = 0; m < n; ++m) tmp[m] = eh[m] * (v[m] + 0.5 * h * k1[m]);
        auto k2 = N(tmp);
        std::vector<cplx> vh(n);
        for (std::size_t m = 0; m < n; ++m) vh[m] = eh[m] * v[m];
        for (std::size_t m = 0; m < n; ++m) tmp[m] = vh[m] + 0.5 * h * k2[m];
        auto k3 = N(tmp);
        for (std::size_t m = 0; m < n; ++m) tmp[m] = eh[m] * (vh[m] + h * k3[m]);
        auto k4 = N(tmp);
        for (std::size_t m = 0; m < n; ++m) {
            cplx e1 = eh[m] * eh[m];
            v[m] = e1 * v[m] + h / 6 * (e1 * k1[m] + 2.0 * eh[m] * (k2[m] + k3[m]) + k4[m]);
        }
        check_finite(v, A0.T + (s + 1) * h);
    }
    return {synth(g, v), A0.T + nsteps * h};
}

ComplexField EnvelopePath::at(double T) const {
    if (snaps.empty()) throw std::invalid_argument("EnvelopePath: empty");
    if (T <= snaps.front().T) return snaps.front().values;
    if (T >= snaps.back().T) return snaps.back().values;
    std::size_t r = 1;
    while (snaps[r].T < T) ++r;
    const Envelope& a = snaps[r - 1];
    const Envelope& b = snaps[r];
    double w = (T - a.T) / (b.T - a.T);
    ComplexField out(a.values.grid);
    for (std::size_t n = 0; n < out.v.size(); ++n) out.v[n] = (1 - w) * a.values.v[n] + w * b.values.v[n];
    return out;
}

namespace {

cplx phi1(cplx z) {
    if (std::abs(z) < 1e-8) return 1.0 + z / 2.0;
    return (std::exp(z) - 1.0) / z;
}

}  // namespace

Envelope evolve_B(const Envelope& B0, const EnvelopePath& A_path, const PacketParams& p, const BSources& src,
                  double T_final, double dt) {
    check_dt(dt, T_final);
    const Grid& g = B0.values.grid;
    HnlsCoefficients c = hnls_rhs_coefficients(p);
    int nsteps = step_count(T_final, dt);
    double h = nsteps > 0 ? T_final / nsteps : dt;
    std::size_t n = g.size();
    std::vector<cplx> Lh(n);
    for (int i = 0; i < g.na; ++i)
        for (int j = 0; j < g.nb; ++j) {
            double x1 = g.xi1(i), x2 = g.xi2(j);
            Lh[g.idx(i, j)] = cplx(0, -c.a * x1 * x1 + c.b * x2 * x2);
        }
    std::vector<cplx> e_half(n), e_full(n), p_half(n), p_full(n);
    for (std::size_t m = 0; m < n; ++m) {
        e_half[m] = std::exp(Lh[m] * (h / 2));
        e_full[m] = std::exp(Lh[m] * h);
        p_half[m] = (h / 2) * phi1(Lh[m] * (h / 2));
        p_full[m] = h * phi1(Lh[m] * h);
    }
    auto forcing = [&](const std::vector<cplx>& hat, double T) {
        std::vector<cplx> r(n, 0.0);
        if (!src.F1 && !src.F2 && !src.F3) return r;
        ComplexField A = A_path.snaps.empty() ? ComplexField(g) : A_path.at(T);
        ComplexField B = synth(g, hat);
        ComplexField Nf(g);
        ComplexField f1 = src.F1 ? src.F1(T, A) : ComplexField();
        ComplexField f2 = src.F2 ? src.F2(T, A) : ComplexField();
        ComplexField f3 = src.F3 ? src.F3(T, A) : ComplexField();
        for (std::size_t m = 0; m < n; ++m) {
            cplx v = 0.0;
            if (src.F1) v += f1.v[m] * B.v[m];
            if (src.F2) v += f2.v[m] * std::conj(B.v[m]);
            if (src.F3) v += f3.v[m];
            Nf.v[m] = v;
        }
        return coeffs(Nf);
    };
    std::vector<cplx> b = coeffs(B0.values), mid(n);
    double T = B0.T;
    for (int s = 0; s < nsteps; ++s) {
        auto N0 = forcing(b, T);
        for (std::size_t m = 0; m < n; ++m) mid[m] = e_half[m] * b[m] + p_half[m] * N0[m];
        auto N1 = forcing(mid, T + h / 2);
        for (std::size_t m = 0; m < n; ++m) b[m] = e_full[m] * b[m] + p_full[m] * N1[m];
        T = B0.T + (s + 1) * h;
        check_finite(b, T);
    }
    return {synth(g, b), T};
}

double mass(const ComplexField& A) {
    double s = 0.0;
    for (const auto& z : A.v) s += std::norm(z);
    return s * A.grid.cell();
}

double hamiltonian(const ComplexField& A, const PacketParams& p) {
    HnlsCoefficients c = hnls_rhs_coefficients(p);
    ComplexField ax = cdx(A), ay = cdy(A);
    double s = 0.0;
    for (std::size_t n = 0; n < A.v.size(); ++n) {
        double m = std::norm(A.v[n]);
        s += c.a * std::norm(ax.v[n]) - c.b * std::norm(ay.v[n]) - 0.5 * c.c * m * m;
    }
    return s * A.grid.cell();
}

double decay_norm(const ComplexField& A, double delta) {
    if (delta < 0 || delta > 1) throw std::invalid_argument("decay_norm: delta must lie in [0, 1]");
    return cweighted_norm(A, 3, delta);
}

}  // namespace wpk
