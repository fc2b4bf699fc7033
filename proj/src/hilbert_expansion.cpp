#include "wpk/hilbert_expansion.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "wpk/hnls.hpp"
#include "wpk/spectral.hpp"

namespace wpk {

namespace {

ComplexField cconj(const ComplexField& f) {
    ComplexField out = f;
    for (auto& z : out.v) z = std::conj(z);
    return out;
}

ComplexField cmul(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a.grid, b.grid, "complex product");
    ComplexField out(a.grid);
    for (std::size_t m = 0; m < out.v.size(); ++m) out.v[m] = a.v[m] * b.v[m];
    return out;
}

ComplexField cscale(cplx s, const ComplexField& a) {
    ComplexField out = a;
    for (auto& z : out.v) z *= s;
    return out;
}

ms::Jet jet1(const ComplexField& f) { return ms::Jet{{f}}; }

ms::Context packet_context(const Packet& pk, int max_order) {
    return ms::Context::make(pk.F.grid, PacketParams::make(pk.k, pk.eps), max_order);
}

}  // namespace

Grid Packet::fast_grid() const {
    if (!(eps > 0)) throw std::invalid_argument(fmt::format("packet eps must be positive, got {}", eps));
    return Grid(F.grid.na, F.grid.nb, F.grid.la / eps, F.grid.lb / eps);
}

QuaternionField realize_modulated(const ComplexField& G, double k, double eps, const Grid& fast) {
    ms::Context c = ms::Context::make(G.grid, PacketParams::make(k == 0 ? 1.0 : k, eps), 0);
    if (k == 0) {
        ms::Field x = ms::term_a(c, 0, 0, jet1(G));
        return ms::realize_order(x, 0, eps, fast);
    }
    c.k = k;
    ms::Field x = ms::term_a(c, 0, 1, jet1(G));
    return ms::realize_order(x, 0, eps, fast);
}

QuaternionField realize(const Packet& pk) { return realize_modulated(pk.F, pk.k, pk.eps, pk.fast_grid()); }

QuaternionField h0_expansion(const Packet& pk, int order, H0Options opt) {
    if (order < 0 || order > 3) throw std::invalid_argument(fmt::format("h0_expansion: order must be 0..3, got {}", order));
    Grid fast = pk.fast_grid();
    if (pk.k == 0) {
        if (order > 0) return QuaternionField(fast);
        QuaternionField h = flat_hilbert(to_quaternion(pk.F));
        ms::Context c = ms::Context::make(pk.F.grid, PacketParams::make(1.0, pk.eps), 0);
        ms::Field x(c, 1);
        ms::Block& blk = x.block(0, 0);
        for (std::size_t m = 0; m < h.size(); ++m) {
            auto [u, v] = to_pair(h.data[m]);
            blk.a[m] = u;
            blk.b[m] = v;
        }
        return ms::realize_order(x, 0, pk.eps, fast);
    }
    ms::Context c = packet_context(pk, 0);
    double k = pk.k, K = std::abs(k), s = k > 0 ? 1.0 : -1.0;
    auto mod = [&](const ComplexField& G) { return ms::term_a(c, 0, 1, jet1(G)); };
    const ComplexField& F = pk.F;
    ms::Field out(c, 1);
    switch (order) {
        case 0: out = -s * mod(F); break;
        case 1: out = -(1.0 / K) * ms::lmul_i(mod(cderiv(F, 0, 1))); break;
        case 2: {
            double ks = opt.printed_k_sign ? 1.0 : -1.0;
            out = -(1.0 / (2 * k * K)) * mod(cderiv(F, 0, 2)) + (ks / (k * K)) * ms::lmul_k(mod(cderiv(F, 1, 1)));
            break;
        }
        case 3: {
            double K3 = K * K * K;
            out = -(1.0 / K3) * ms::lmul_j(mod(cderiv(F, 1, 2))) + (1.0 / K3) * ms::lmul_i(mod(cderiv(F, 2, 1))) -
                  (1.0 / (2 * K3)) * ms::lmul_i(mod(cderiv(F, 0, 3)));
            break;
        }
    }
    return ms::realize_order(out, 0, pk.eps, fast);
}

double h0_truncation_error(const Packet& pk, int s, TruncationSign sign, H0Options opt) {
    QuaternionField f = realize(pk);
    QuaternionField diff = flat_hilbert(f) - h0_expansion(pk, 0, opt);
    if (pk.k != 0) {
        double sg = sign == TruncationSign::Plus ? 1.0 : -1.0;
        for (int j = 1; j <= 3; ++j) diff -= (sg * std::pow(pk.eps, j)) * h0_expansion(pk, j, opt);
    }
    return sobolev_norm(diff, s);
}

SurfaceSlices SurfaceSlices::from_lambda(const QuaternionField& lambda) {
    return {component(lambda, 1), component(lambda, 2), component(lambda, 3)};
}

QuaternionField SurfaceSlices::p1() const { return x + lmul(Quaternion::j(), z); }
QuaternionField SurfaceSlices::p2() const { return y - lmul(Quaternion::i(), z); }
QuaternionField SurfaceSlices::lambda() const {
    return rmul(x, Quaternion::i()) + rmul(y, Quaternion::j()) + rmul(z, Quaternion::k());
}

QuaternionField commutator(const QuaternionField& p, const Operator& T, const QuaternionField& g) {
    require_same_grid(p.grid, g.grid, "commutator");
    return mul(p, T(g)) - T(mul(p, g));
}

namespace {

const Operator kH0 = [](const QuaternionField& g) { return flat_hilbert(g); };

QuaternionField partial(const QuaternionField& f, int i) { return i == 0 ? d_alpha(f) : d_beta(f); }

}  // namespace

QuaternionField h1_full(const QuaternionField& f, const SurfaceSlices& s) {
    require_same_grid(f.grid, s.x.grid, "h1_full");
    return commutator(s.p1(), kH0, d_alpha(f)) + commutator(s.p2(), kH0, d_beta(f));
}

QuaternionField h1_three_commutator(const QuaternionField& f, const SurfaceSlices& s) {
    require_same_grid(f.grid, s.x.grid, "h1_three_commutator");
    return commutator(s.x, kH0, d_alpha(f)) + commutator(s.y, kH0, d_beta(f)) + commutator(s.z, kH0, k_dirac(f));
}

QuaternionField h2_full(const QuaternionField& f, const SurfaceSlices& s) {
    require_same_grid(f.grid, s.x.grid, "h2_full");
    QuaternionField p[2] = {s.p1(), s.p2()};
    QuaternionField df[2] = {d_alpha(f), d_beta(f)};
    QuaternionField out(f.grid);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            out -= commutator(p[i], kH0, mul(partial(p[j], i), df[j]));
            Operator inner = [&, j](const QuaternionField& g) { return commutator(p[j], kH0, g); };
            out += 0.5 * commutator(p[i], inner, partial(df[j], i));
        }
    return out;
}

ms::Field MsSlices::p1() const { return x + ms::lmul_j(z); }
ms::Field MsSlices::p2() const { return y - ms::lmul_i(z); }

MsSlices ms_slices(const ms::Field& lambda) {
    return {-ms::rmul_i(ms::part(lambda, 1)), -ms::rmul_j(ms::part(lambda, 2)), -ms::rmul_k(ms::part(lambda, 3))};
}

ms::Field collapse(const ms::Field& x) {
    if (!x.ctx) return x;
    ms::Field out(*x.ctx, x.levels);
    std::size_t n = x.ctx->n() * x.levels;
    for (const auto& [key, blk] : x.terms) {
        ms::Block& d = out.block(0, key.second);
        for (std::size_t m = 0; m < n; ++m) {
            d.a[m] += blk.a[m];
            d.b[m] += blk.b[m];
        }
    }
    return out + ms::Field(*x.ctx, x.levels);
}

namespace {

using MsOp = std::function<ms::Field(const ms::Field&)>;

ms::Field ms_commutator(const ms::Field& p, const MsOp& T, const ms::Field& g) { return ms::mul(p, T(g)) - T(ms::mul(p, g)); }

const ms::Field& need(const std::map<int, ms::Field>& m, int order) {
    auto it = m.find(order);
    if (it == m.end()) throw std::invalid_argument(fmt::format("h_multiscale: corrector lambda^({}) not supplied", order));
    return it->second;
}

}  // namespace

ms::Field h_multiscale(const ms::Field& f, const std::map<int, ms::Field>& lambda_by_order, HWhich which) {
    if (!f.ctx) throw std::invalid_argument("h_multiscale: field without context");
    MsOp H = [](const ms::Field& g) { return collapse(ms::hilbert0(g, 0)); };
    MsOp H1 = [](const ms::Field& g) { return collapse(ms::hilbert0(g, 1)); };
    const ms::Field& l1 = need(lambda_by_order, 1);
    MsSlices s1 = ms_slices(l1);
    ms::Field p1 = s1.p1();
    ms::Field fa = ms::d_alpha0(f);
    switch (which) {
        case HWhich::H1_1: return ms_commutator(p1, H, fa);
        case HWhich::H1_2: {
            if (f.ctx->max_order < 1) throw std::invalid_argument("h_multiscale: context max_order must be at least 1");
            ms::Field p1b = ms_slices(need(lambda_by_order, 2)).p1();
            return ms_commutator(p1b, H, fa) + ms_commutator(p1, H1, fa) + ms_commutator(p1, H, ms::d_X(f)) +
                   ms_commutator(s1.p2(), H, ms::d_Y(f));
        }
        case HWhich::H2_2: {
            MsOp inner = [&](const ms::Field& g) { return ms_commutator(p1, H, g); };
            return -ms_commutator(p1, H, ms::mul(ms::d_alpha0(p1), fa)) + 0.5 * ms_commutator(p1, inner, ms::d_alpha0(fa));
        }
    }
    throw std::invalid_argument("h_multiscale: unknown operator");
}

ms::Field hilbert_tilde(const ms::Field& f, const ms::Field& lambda, int max_n) {
    if (!f.ctx) return f;
    MsOp H = [](const ms::Field& g) { return ms::hilbert0(g); };
    ms::Field out = H(f);
    if (max_n < 1 || !lambda.ctx) return out;
    MsSlices s = ms_slices(lambda);
    ms::Field p[2] = {s.p1(), s.p2()};
    auto D = [](const ms::Field& g, int i) { return i == 0 ? ms::d_alpha(g) : ms::d_beta(g); };
    ms::Field df[2] = {D(f, 0), D(f, 1)};
    for (int i = 0; i < 2; ++i) out = out + ms_commutator(p[i], H, df[i]);
    if (max_n < 2) return out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            out = out - ms_commutator(p[i], H, ms::mul(D(p[j], i), df[j]));
            MsOp inner = [&, j](const ms::Field& g) { return ms_commutator(p[j], H, g); };
            out = out + 0.5 * ms_commutator(p[i], inner, D(df[j], i));
        }
    return out;
}

ms::Field lambda1_field(const ms::Context& c, const ComplexField& A) { return ms::lmul_i(ms::term_a(c, 0, 1, jet1(A))); }

ms::Field lambda2_field(const ms::Context& c, const ComplexField& A, const ComplexField& B, double y_term_sign) {
    ComplexField A2(A.grid);
    for (std::size_t m = 0; m < A.v.size(); ++m) A2.v[m] = 0.5 * c.k * std::norm(A.v[m]);
    ms::Field out = ms::lmul_i(ms::term_a(c, 0, 1, jet1(B))) + ms::rmul_k(ms::term_a(c, 0, 0, jet1(A2)));
    return out + (y_term_sign / c.k) * ms::part(ms::term_a(c, 0, 1, jet1(cdy(A))), 2);
}

ms::Field h2_wavenumber_formulas(const ms::Context& c, const ComplexField& F, const ComplexField& A, const ComplexField& B,
                                 int sign) {
    require_same_grid(F.grid, c.slow, "h2_wavenumber_formulas");
    require_same_grid(A.grid, c.slow, "h2_wavenumber_formulas");
    require_same_grid(B.grid, c.slow, "h2_wavenumber_formulas");
    if (sign != 1 && sign != -1) throw std::invalid_argument("h2_wavenumber_formulas: sign must be +1 or -1");
    double k = c.k;
    auto t0 = [&](const ComplexField& g) { return ms::term_a(c, 0, 0, jet1(g)); };
    auto i_minus_h = [](const ms::Field& g) { return g - ms::hilbert0(g, 0); };
    ComplexField Fb = cconj(F), Ab = cconj(A);
    if (sign == -1) {
        ms::Field first = ms::term_a(c, 0, 1, jet1(cscale(-k * k, cmul(cmul(A, A), Fb))));
        ms::Field inner = t0(cmul(A, cdx(Fb))) + 0.5 * ms::rmul_k(t0(cmul(Ab, cdy(F)))) - k * ms::rmul_j(t0(cmul(B, Fb)));
        return first + i_minus_h(inner);
    }
    ms::Field first = -0.5 * i_minus_h(ms::rmul_k(t0(cmul(A, cdy(Fb)))));
    ComplexField X(c.slow);
    ComplexField FbY = cdy(Fb), AbY = cdy(Ab);
    for (std::size_t m = 0; m < X.v.size(); ++m) X.v[m] = Ab.v[m] * FbY.v[m] - AbY.v[m] * Fb.v[m];
    ms::Field second(c, 1);
    ms::Block& blk = second.block(0, -2);
    for (std::size_t m = 0; m < X.v.size(); ++m) blk.b[m] = 0.5 * cplx(0, 1) * X.v[m];
    return first + second;
}

}  // namespace wpk
