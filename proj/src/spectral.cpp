#include "wpk/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "wpk/fft.hpp"

namespace wpk {

namespace {

// left spectrum in pair form: c = U + V i
struct PairSpectrum {
    Grid grid;
    std::vector<cplx> u, v;
};

PairSpectrum left_pairs(const QuaternionField& f) {
    ComplexField a(f.grid), b(f.grid);
    for (std::size_t n = 0; n < f.size(); ++n) {
        auto [x, y] = to_pair(f.data[n]);
        a.v[n] = x;
        b.v[n] = y;
    }
    return {f.grid, coeffs(a), coeffs(b)};
}

QuaternionField from_left_pairs(PairSpectrum p) {
    ComplexField a = synth(p.grid, std::move(p.u));
    ComplexField b = synth(p.grid, std::move(p.v));
    QuaternionField f(p.grid);
    for (std::size_t n = 0; n < f.size(); ++n) f.data[n] = from_pair(a.v[n], b.v[n]);
    return f;
}

double freq1(const Grid& g, int i, bool odd) { return odd ? g.xi1_odd(i) : g.xi1(i); }
double freq2(const Grid& g, int j, bool odd) { return odd ? g.xi2_odd(j) : g.xi2(j); }

void check_finite(cplx s, double x1, double x2) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw std::domain_error(fmt::format("multiplier symbol is not finite at xi = ({}, {})", x1, x2));
}

}  // namespace

SpectralField fft_left(const QuaternionField& f) {
    if (f.data.size() != f.grid.size()) throw std::invalid_argument("fft_left: data size does not match grid");
    PairSpectrum p = left_pairs(f);
    SpectralField s{f.grid, Flavor::Left, std::vector<Quaternion>(f.size())};
    for (std::size_t n = 0; n < f.size(); ++n) s.coeffs[n] = from_pair(p.u[n], p.v[n]);
    return s;
}

SpectralField fft_right(const QuaternionField& f) {
    if (f.data.size() != f.grid.size()) throw std::invalid_argument("fft_right: data size does not match grid");
    // f = u + i v', u = f0 + f2 j, v' = f1 + f3 j
    ComplexField u(f.grid), w(f.grid);
    for (std::size_t n = 0; n < f.size(); ++n) {
        const Quaternion& q = f.data[n];
        u.v[n] = cplx(q.q0, q.q2);
        w.v[n] = cplx(q.q1, q.q3);
    }
    auto cu = coeffs(u), cw = coeffs(w);
    SpectralField s{f.grid, Flavor::Right, std::vector<Quaternion>(f.size())};
    for (std::size_t n = 0; n < f.size(); ++n) s.coeffs[n] = {cu[n].real(), cw[n].real(), cu[n].imag(), cw[n].imag()};
    return s;
}

QuaternionField inverse(const SpectralField& s) {
    std::size_t n = s.grid.size();
    std::vector<cplx> a(n), b(n);
    for (std::size_t m = 0; m < n; ++m) {
        const Quaternion& c = s.coeffs[m];
        if (s.flavor == Flavor::Left) {
            auto [x, y] = to_pair(c);
            a[m] = x;
            b[m] = y;
        } else {
            a[m] = cplx(c.q0, c.q2);
            b[m] = cplx(c.q1, c.q3);
        }
    }
    ComplexField fa = synth(s.grid, std::move(a));
    ComplexField fb = synth(s.grid, std::move(b));
    QuaternionField f(s.grid);
    for (std::size_t m = 0; m < n; ++m) {
        if (s.flavor == Flavor::Left)
            f.data[m] = from_pair(fa.v[m], fb.v[m]);
        else
            f.data[m] = {fa.v[m].real(), fb.v[m].real(), fa.v[m].imag(), fb.v[m].imag()};
    }
    return f;
}

double spectral_inner(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a.grid, b.grid, "spectral_inner");
    if (a.flavor != b.flavor) throw std::invalid_argument("spectral_inner: flavor mismatch");
    double s = 0.0;
    for (std::size_t n = 0; n < a.coeffs.size(); ++n) s += dot(a.coeffs[n], b.coeffs[n]);
    return s * a.grid.la * a.grid.lb;
}

QuaternionField apply_multiplier(const QuaternionField& f, const MultiplierSymbol& m) {
    const Grid& g = f.grid;
    PairSpectrum p = left_pairs(f);
    PairSpectrum out{g, std::vector<cplx>(g.size()), std::vector<cplx>(g.size())};
    const cplx I(0, 1);
    for (int i = 0; i < g.na; ++i) {
        double x1 = freq1(g, i, m.odd);
        for (int j = 0; j < g.nb; ++j) {
            double x2 = freq2(g, j, m.odd);
            std::size_t n = g.idx(i, j);
            cplx sp = m.plain ? m.plain(x1, x2) : cplx(0);
            check_finite(sp, x1, x2);
            cplx u = sp * p.u[n], v = sp * p.v[n];
            if (m.kflip) {
                cplx sk = m.kflip(x1, x2);
                check_finite(sk, x1, x2);
                // F[k f](xi) = k c(-xi)
                std::size_t r = g.idx(g.neg_a(i), g.neg_b(j));
                u += sk * (I * std::conj(p.v[r]));
                v += sk * (-I * std::conj(p.u[r]));
            }
            out.u[n] = u;
            out.v[n] = v;
        }
    }
    return from_left_pairs(std::move(out));
}

MultiplierSymbol identity_symbol() {
    return {[](double, double) { return cplx(1); }, {}, false};
}

MultiplierSymbol riesz_symbol(int l) {
    if (l != 1 && l != 2) throw std::invalid_argument("riesz index must be 1 or 2");
    return {[l](double x1, double x2) {
                double r = std::hypot(x1, x2);
                if (r == 0.0) return cplx(0);
                return cplx(0, -(l == 1 ? x1 : x2) / r);
            },
            {},
            true};
}

MultiplierSymbol hilbert_symbol() {
    return {[](double x1, double x2) {
                double r = std::hypot(x1, x2);
                return r == 0.0 ? cplx(0) : cplx(-x1 / r);
            },
            [](double x1, double x2) {
                double r = std::hypot(x1, x2);
                return r == 0.0 ? cplx(0) : cplx(x2 / r);
            },
            true};
}

MultiplierSymbol abs_d_symbol(double q) {
    return {[q](double x1, double x2) {
                double r = std::hypot(x1, x2);
                return r == 0.0 ? cplx(0) : cplx(std::pow(r, q));
            },
            {},
            false};
}

QuaternionField riesz(const QuaternionField& f, int l) { return apply_multiplier(f, riesz_symbol(l)); }
QuaternionField flat_hilbert(const QuaternionField& f) { return apply_multiplier(f, hilbert_symbol()); }

QuaternionField fractional_derivative(const QuaternionField& f, double q) {
    if (!(q > -2.0 && q <= 4.0)) throw std::invalid_argument(fmt::format("fractional_derivative: q = {} outside (-2, 4]", q));
    return apply_multiplier(f, abs_d_symbol(q));
}

QuaternionField mode_filter(const QuaternionField& f, double k) {
    if (k == 0.0) throw std::invalid_argument("mode_filter: k must be nonzero");
    double r = std::abs(k) / 2;
    return apply_multiplier(f, {[k, r](double x1, double x2) { return std::hypot(x1 - k, x2) > r ? cplx(0) : cplx(1); }, {}, false});
}

QuaternionField d_alpha(const QuaternionField& f) {
    return apply_multiplier(f, {[](double x1, double) { return cplx(0, x1); }, {}, true});
}
QuaternionField d_beta(const QuaternionField& f) {
    return apply_multiplier(f, {[](double, double x2) { return cplx(0, x2); }, {}, true});
}

QuaternionField k_dirac(const QuaternionField& f) {
    return lmul(Quaternion::j(), d_alpha(f)) - lmul(Quaternion::i(), d_beta(f));
}

namespace {

double weighted_spectral_sum(const QuaternionField& f, double s, bool include_l2) {
    SpectralField c = fft_left(f);
    const Grid& g = f.grid;
    double acc = 0.0;
    for (int i = 0; i < g.na; ++i)
        for (int j = 0; j < g.nb; ++j) {
            double r = std::hypot(g.xi1(i), g.xi2(j));
            double w = (r == 0.0 ? 0.0 : std::pow(r, 2 * s)) + (include_l2 ? 1.0 : 0.0);
            acc += w * norm2(c.at(i, j));
        }
    return acc * g.la * g.lb;
}

QuaternionField apply_weight(const QuaternionField& f, double d) {
    const Grid& g = f.grid;
    QuaternionField w(g);
    for (int i = 0; i < g.na; ++i) {
        double x = g.alpha(i) - g.la / 2;
        for (int j = 0; j < g.nb; ++j) {
            double y = g.beta(j) - g.lb / 2;
            w(i, j) = std::pow(1 + x * x + y * y, d / 2) * f(i, j);
        }
    }
    return w;
}

}  // namespace

double sobolev_norm(const QuaternionField& f, double s) {
    if (s < 0) throw std::invalid_argument("sobolev_norm: s must be nonnegative");
    return std::sqrt(weighted_spectral_sum(f, s, true));
}

double homogeneous_norm(const QuaternionField& f, double s) { return std::sqrt(weighted_spectral_sum(f, s, false)); }

double weighted_norm(const QuaternionField& f, int s, double d) {
    if (s < 0 || d < 0) throw std::invalid_argument("weighted_norm: s and d must be nonnegative");
    return sobolev_norm(apply_weight(f, d), s);
}

double holder_norm(const QuaternionField& f, int s) {
    if (s < 0) throw std::invalid_argument("holder_norm: s must be nonnegative");
    double total = 0.0;
    for (int a = 0; a <= s; ++a)
        for (int b = 0; a + b <= s; ++b) {
            MultiplierSymbol m{[a, b](double x1, double x2) { return std::pow(cplx(0, x1), a) * std::pow(cplx(0, x2), b); }, {}, true};
            total += max_abs(apply_multiplier(f, m));
        }
    return total;
}

ComplexField apply_symbol(const ComplexField& f, const std::function<cplx(double, double)>& s, bool odd) {
    const Grid& g = f.grid;
    std::vector<cplx> c = coeffs(f);
    for (int i = 0; i < g.na; ++i) {
        double x1 = freq1(g, i, odd);
        for (int j = 0; j < g.nb; ++j) c[g.idx(i, j)] *= s(x1, freq2(g, j, odd));
    }
    return synth(g, std::move(c));
}

ComplexField cdx(const ComplexField& f) { return cderiv(f, 1, 0); }
ComplexField cdy(const ComplexField& f) { return cderiv(f, 0, 1); }

ComplexField cderiv(const ComplexField& f, int nx, int ny) {
    bool odd = (nx % 2 == 1) || (ny % 2 == 1);
    return apply_symbol(
        f, [nx, ny](double x1, double x2) { return std::pow(cplx(0, x1), nx) * std::pow(cplx(0, x2), ny); }, odd);
}

double csobolev_norm(const ComplexField& f, double s) { return sobolev_norm(to_quaternion(f), s); }
double cweighted_norm(const ComplexField& f, int s, double d) { return weighted_norm(to_quaternion(f), s, d); }
double cholder_norm(const ComplexField& f, int s) { return holder_norm(to_quaternion(f), s); }

}  // namespace wpk
