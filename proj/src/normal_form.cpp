#include "wpk/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "wpk/hilbert_expansion.hpp"
#include "wpk/spectral.hpp"
#include "wpk/verify.hpp"

namespace wpk {

namespace {

double norm(const Freq2& x) { return std::hypot(x[0], x[1]); }
Freq2 sub(const Freq2& a, const Freq2& b) { return {a[0] - b[0], a[1] - b[1]}; }
double cross2(const Freq2& a, const Freq2& b) { return a[0] * b[1] - a[1] * b[0]; }

constexpr cplx J{0.0, 1.0};

Quaternion scalar(cplx c) { return from_pair(c, cplx(0)); }

Freq2 random_freq(std::mt19937_64& rng, double rmin, double rmax) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = rmin * std::pow(rmax / rmin, u(rng));
    double th = kTwoPi * u(rng);
    return {r * std::cos(th), r * std::sin(th)};
}

}  // namespace

double resonance_denominator(const Freq2& xi, const Freq2& xp) {
    double a = norm(sub(xi, xp)), b = norm(xp), c = norm(xi);
    double d = c - a - b;
    return d * d - 4 * a * b;
}

double kernel_denominator(double k, const Freq2& xp) { return resonance_denominator({xp[0] - k, xp[1]}, xp); }

bool is_resonant(double k, const Freq2& xp) {
    double r2 = xp[0] * xp[0] + xp[1] * xp[1];
    return std::abs(kernel_denominator(k, xp)) < 1e-9 * (1 + r2);
}

DenominatorReport denominator_inequalities(const Freq2& xi, const Freq2& xp, double C0) {
    DenominatorReport r;
    Freq2 dx = sub(xi, xp);
    double a = norm(dx), b = norm(xp), c = norm(xi);
    r.b_lhs = std::abs(c - b - a);
    r.b_rhs_printed = std::min(2 * a, b);
    r.b_rhs_corrected = 2 * std::min(a, b);
    r.degenerate = a == 0 || b == 0 || c == 0;
    if (r.degenerate) return r;
    double D = resonance_denominator(xi, xp);
    r.a_ratio = std::abs(D) * (a + b + c) / (a * b * c);
    r.c_lhs = std::abs(cross2(xi, xp) / D);
    r.c_rhs = C0 * (std::abs(cross2(xi, xp)) / (c * b) + std::abs(cross2(xi, dx)) / (c * a) + std::abs(cross2(xp, dx)) / (b * a));
    return r;
}

LemmaSweep denominator_lemma_sweep(int samples, unsigned seed, double rmin, double rmax) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Freq2, Freq2>> pts;
    pts.reserve(samples);
    LemmaSweep out;
    out.samples = samples;
    for (int n = 0; n < samples; ++n) {
        Freq2 xi = random_freq(rng, rmin, rmax), xp = random_freq(rng, rmin, rmax);
        pts.emplace_back(xi, xp);
        DenominatorReport r = denominator_inequalities(xi, xp, 1.0);
        if (r.degenerate) continue;
        out.C0_fit = std::max({out.C0_fit, r.a_ratio, 1.0 / r.a_ratio});
    }
    const double tol = 1e-12;
    for (auto& [xi, xp] : pts) {
        DenominatorReport r = denominator_inequalities(xi, xp, out.C0_fit);
        double sc = tol * (1 + r.b_lhs);
        if (r.b_lhs > r.b_rhs_printed + sc) ++out.b_printed_violations;
        if (r.b_lhs > r.b_rhs_corrected + sc) ++out.b_corrected_violations;
        if (!r.degenerate && r.c_lhs > r.c_rhs * (1 + tol)) ++out.c_violations;
    }
    return out;
}

NormalFormKernel NormalFormKernel::generic(double k, Source F0, Source F1) {
    NormalFormKernel K;
    K.k = k;
    K.variant = Variant::Generic;
    K.F0 = std::move(F0);
    K.F1 = std::move(F1);
    return K;
}

NormalFormKernel NormalFormKernel::particular1(double k) {
    NormalFormKernel K;
    K.k = k;
    K.variant = Variant::Particular1;
    return K;
}

NormalFormKernel NormalFormKernel::particular7(double k, int l) {
    if (l != 1 && l != 2) throw std::invalid_argument(fmt::format("particular7: l must be 1 or 2, got {}", l));
    NormalFormKernel K;
    K.k = k;
    K.variant = Variant::Particular7;
    K.l = l;
    return K;
}

bool NormalFormKernel::admissible(const Freq2& xp) const { return variant != Variant::Particular7 || norm(xp) >= 4 * k; }

cplx NormalFormKernel::f0(const Freq2& xp) const {
    switch (variant) {
        case Variant::Generic:
            return F0 ? F0(xp[0], xp[1]) : cplx(0);
        case Variant::Particular1:
            return -k * xp[1];
        case Variant::Particular7: {
            Freq2 xi{xp[0] - k, xp[1]};
            double g = xp[l - 1] / norm(xp) - xi[l - 1] / norm(xi);
            return J * (k * xp[1] * g);
        }
    }
    return 0;
}

cplx NormalFormKernel::f1(const Freq2& xp) const {
    if (variant == Variant::Generic && F1) return F1(xp[0], xp[1]);
    return 0;
}

KernelValue kernel_values(const NormalFormKernel& K, const Freq2& xp) {
    if (!K.admissible(xp))
        throw std::domain_error(fmt::format("kernel below the |xi'| >= 4k cutoff at ({}, {})", xp[0], xp[1]));
    if (is_resonant(K.k, xp)) throw ResonanceError(fmt::format("resonant frequency ({}, {})", xp[0], xp[1]), {xp});
    double r = norm(xp), w = std::sqrt(K.k);
    double d = std::hypot(xp[0] - K.k, xp[1]) - r - K.k;
    double D = d * d - 4 * K.k * r;
    cplx F0 = K.f0(xp), F1 = K.f1(xp);
    return {(d * F0 - 2.0 * J * w * r * F1) / D, (2.0 * J * w * F0 + d * F1) / D};
}

double kernel_system_residual(const NormalFormKernel& K, const Freq2& xp, const KernelValue& q) {
    double r = norm(xp), w = std::sqrt(K.k);
    double d = std::hypot(xp[0] - K.k, xp[1]) - r - K.k;
    cplx e0 = d * q.Q0 + 2.0 * J * w * r * q.Q1 - K.f0(xp);
    cplx e1 = d * q.Q1 - 2.0 * J * w * q.Q0 - K.f1(xp);
    return std::max(std::abs(e0), std::abs(e1));
}

BackSubstitution back_substitution_sweep(const NormalFormKernel& K, int samples, unsigned seed, double rmax) {
    std::mt19937_64 rng(seed);
    BackSubstitution out;
    out.samples = samples;
    for (int n = 0; n < samples; ++n) {
        Freq2 xp = random_freq(rng, 1e-2 * K.k, rmax * K.k);
        if (!K.admissible(xp) || is_resonant(K.k, xp)) {
            ++out.skipped;
            continue;
        }
        KernelValue q = kernel_values(K, xp);
        double r = norm(xp), d = std::abs(std::hypot(xp[0] - K.k, xp[1]) - r - K.k), w2 = 2 * std::sqrt(K.k);
        double scale = 1 + std::abs(K.f0(xp)) + std::abs(K.f1(xp)) + (d + w2 * (1 + r)) * (std::abs(q.Q0) + std::abs(q.Q1));
        out.max_residual = std::max(out.max_residual, kernel_system_residual(K, xp, q) / scale);
        out.sup_Q0 = std::max(out.sup_Q0, std::abs(q.Q0));
        out.sup_Q1 = std::max(out.sup_Q1, std::abs(q.Q1));
    }
    return out;
}

double derivative_gain_lhs(const Freq2& xi, const Freq2& xp, int l) {
    return std::abs(xp[l - 1] / norm(xp) - xi[l - 1] / norm(xi));
}

GainReport derivative_gain_check(double k, int samples, unsigned seed, double C_bound_over_k) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GainReport out;
    out.samples = samples;
    out.C_bound = C_bound_over_k * k;
    for (int n = 0; n < samples; ++n) {
        Freq2 xp = random_freq(rng, 4 * k, 1e4 * k);
        double rho = 1.5 * k * std::sqrt(u(rng)), th = kTwoPi * u(rng);
        Freq2 xi{xp[0] + rho * std::cos(th), xp[1] + rho * std::sin(th)};
        double r = norm(xp);
        for (int l = 1; l <= 2; ++l) {
            double lhs = derivative_gain_lhs(xi, xp, l);
            out.C_fit = std::max(out.C_fit, lhs * r);
            if (lhs > out.C_bound / r) ++out.violations;
        }
    }
    return out;
}

QuaternionField packet_factor(const ComplexField& S, double k, double eps, const Grid& fast) {
    QuaternionField p = conj(realize_modulated(S, k, eps, fast));
    return eps * mode_filter(p, -k);
}

QuaternionField apply_bilinear(const ComplexField& S, const QuaternionField& theta, const NormalFormKernel& K, double eps,
                               int which, BilinearSide side) {
    if (which != 0 && which != 1) throw std::invalid_argument(fmt::format("apply_bilinear: which must be 0 or 1, got {}", which));
    const Grid& g = theta.grid;
    QuaternionField P = packet_factor(S, K.k, eps, g);
    bool left = side == BilinearSide::Left;
    SpectralField a = left ? fft_left(P) : fft_right(P);
    SpectralField b = left ? fft_left(theta) : fft_right(theta);

    auto support = [](const SpectralField& s) {
        double m = 0;
        for (auto& c : s.coeffs) m = std::max(m, abs(c));
        std::vector<std::size_t> idx;
        if (m == 0) return idx;
        for (std::size_t n = 0; n < s.coeffs.size(); ++n)
            if (abs(s.coeffs[n]) > 1e-15 * m) idx.push_back(n);
        return idx;
    };
    std::vector<std::size_t> sa = support(a), sb = support(b);

    SpectralField out{g, left ? Flavor::Left : Flavor::Right, std::vector<Quaternion>(g.size())};
    if (sa.empty() || sb.empty()) return inverse(out);

    // kernel times theta coefficients
    std::vector<Quaternion> qb(sb.size());
    std::vector<Freq2> resonant;
    for (std::size_t n = 0; n < sb.size(); ++n) {
        int i = int(sb[n] / g.nb), j = int(sb[n] % g.nb);
        Freq2 xp{g.xi1(i), g.xi2(j)};
        if (!K.admissible(xp)) continue;
        if (is_resonant(K.k, xp)) {
            resonant.push_back(xp);
            continue;
        }
        KernelValue q = kernel_values(K, xp);
        Quaternion Q = scalar(which == 0 ? q.Q0 : q.Q1);
        qb[n] = left ? Q * b.coeffs[sb[n]] : b.coeffs[sb[n]] * Q;
    }
    if (!resonant.empty()) {
        std::string list;
        for (auto& x : resonant) list += fmt::format(" ({:.6g}, {:.6g})", x[0], x[1]);
        throw ResonanceError("apply_bilinear: resonant modes in the support:" + list, resonant);
    }

    // modes combine modulo the grid, as in a pointwise product
    for (std::size_t m : sa) {
        int ia = int(m / g.nb), ja = int(m % g.nb);
        const Quaternion& am = a.coeffs[m];
        for (std::size_t n = 0; n < sb.size(); ++n) {
            int ib = int(sb[n] / g.nb), jb = int(sb[n] % g.nb);
            int io = (ia + ib) % g.na, jo = (ja + jb) % g.nb;
            out.at(io, jo) = out.at(io, jo) + (left ? am * qb[n] : qb[n] * am);
        }
    }
    return inverse(out);
}

BilinearStudy bilinear_estimate_study(double k, const std::vector<double>& eps_list, unsigned seed, int n_slow,
                                      double slow_length) {
    Grid sg = Grid::square(n_slow, slow_length);
    ComplexField S(sg);
    for (int i = 0; i < sg.na; ++i)
        for (int j = 0; j < sg.nb; ++j) {
            double x = sg.alpha(i) - slow_length / 2, y = sg.beta(j) - slow_length / 2;
            S(i, j) = std::exp(-(x * x + y * y) / 4);
        }
    double s_h3 = csobolev_norm(S, 3);
    NormalFormKernel K = NormalFormKernel::particular1(k);
    BilinearStudy st;
    st.eps_list = eps_list;
    for (double eps : eps_list) {
        int n = 64;
        while (kTwoPi / 2 * n * eps / slow_length < 3.5 * k) n *= 2;
        Grid fg(n, n, slow_length / eps, slow_length / eps);
        QuaternionField th(fg);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> nd;
        for (auto& q : th.data) q = Quaternion{nd(rng), nd(rng), nd(rng), nd(rng)};
        th = apply_multiplier(th, {[k](double a, double b) {
                                       double r = std::hypot(a, b);
                                       bool keep = r < 2 * k && !is_resonant(k, {a, b});
                                       return keep ? cplx(1) : cplx(0);
                                   },
                                   {},
                                   false});
        double r = l2_norm(apply_bilinear(S, th, K, eps)) / (s_h3 * l2_norm(th));
        st.fast_n.push_back(n);
        st.ratio.push_back(r);
        st.C_fit = std::max(st.C_fit, r / eps);
    }
    st.slope = fit_slope(eps_list, st.ratio);
    return st;
}

}  // namespace wpk
