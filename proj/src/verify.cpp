#include "wpk/verify.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "wpk/hilbert_expansion.hpp"
#include "wpk/spectral.hpp"

namespace wpk {

using ms::Field;

namespace {

ms::Jet jet1(const ComplexField& f) { return ms::Jet{{f}}; }

ComplexField cmap(const ComplexField& a, const ComplexField& b, cplx (*op)(cplx, cplx)) {
    require_same_grid(a.grid, b.grid, "verify");
    ComplexField out(a.grid);
    for (std::size_t n = 0; n < a.v.size(); ++n) out.v[n] = op(a.v[n], b.v[n]);
    return out;
}
ComplexField cmul(const ComplexField& a, const ComplexField& b) {
    return cmap(a, b, [](cplx x, cplx y) { return x * y; });
}
ComplexField cconj(const ComplexField& a) {
    ComplexField out(a.grid);
    for (std::size_t n = 0; n < a.v.size(); ++n) out.v[n] = std::conj(a.v[n]);
    return out;
}
ComplexField creal(const ComplexField& a) {
    ComplexField out(a.grid);
    for (std::size_t n = 0; n < a.v.size(); ++n) out.v[n] = a.v[n].real();
    return out;
}
ComplexField abs2(const ComplexField& a) {
    ComplexField out(a.grid);
    for (std::size_t n = 0; n < a.v.size(); ++n) out.v[n] = std::norm(a.v[n]);
    return out;
}

Field at(const ms::Context& c, int label, const ComplexField& f) { return ms::term_a(c, 0, label, jet1(f)); }
Field i_minus_h(const Field& g) { return g - ms::hilbert0(g, 0); }
Field slow_abs_d(const Field& g) { return collapse(ms::abs_d_slow(g)); }

}  // namespace

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need two or more matching points");
    double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double dispersion_residual(const ComplexField& A, const PacketParams& p, double t) {
    ms::Context c = ms::Context::make(A.grid, p, 1);
    Field zk = ms::rmul_k(ms_z1(c, jet1(A)));
    Field g = zk - ms::hilbert0(zk, 0);
    Field r = ms::d_t0(ms::d_t0(g)) - ms::lmul_j(ms::d_alpha0(g));
    return l2_norm(ms::realize(r, p.eps, ms::fast_grid_for(r, p.eps, 0), t));
}

double dispersion_profile_norm(const ComplexField& A, const PacketParams& p, double t) {
    ms::Context c = ms::Context::make(A.grid, p, 1);
    Field zk = ms::rmul_k(ms_z1(c, jet1(A)));
    Field g = zk - ms::hilbert0(zk, 0);
    return l2_norm(ms::realize(g, p.eps, ms::fast_grid_for(g, p.eps, 0), t));
}

ComplexField traveling_frame_t1(const ComplexField& A, const PacketParams& p) {
    ComplexField out = cdx(A);
    for (auto& v : out.v) v *= p.omega_p;
    return out;
}

double group_velocity_residual(const ComplexField& A, const ComplexField& A_t1, const PacketParams& p) {
    require_same_grid(A.grid, A_t1.grid, "group_velocity_residual");
    ComplexField Ax = cdx(A), d(A.grid);
    for (std::size_t n = 0; n < d.v.size(); ++n) d.v[n] = 2.0 * cplx(0, p.omega) * (A_t1.v[n] - p.omega_p * Ax.v[n]);
    return l2_norm(d);
}

ComplexField m2_closure(const ComplexField& A, double k) {
    ComplexField m = abs2(A);
    for (auto& v : m.v) v *= 0.5 * k;
    return m;
}

Eps3Forcing epsilon3_forcing(const ms::Context& c, const ComplexField& A, const ComplexField& A_T, const ComplexField& B,
                             const ComplexField& M2) {
    for (const ComplexField* f : {&A, &A_T, &B, &M2}) require_same_grid(f->grid, c.slow, "epsilon3_forcing");
    const double k = c.k, w = c.omega;
    const double wpp = -0.25 / std::pow(k, 1.5);
    ComplexField Ab = cconj(A), Bb = cconj(B);
    ComplexField AbY = cdy(Ab), AbYY = cderiv(Ab, 0, 2), AbXY = cderiv(Ab, 1, 1);
    ComplexField AYY = cderiv(A, 0, 2), AXX = cderiv(A, 2, 0);
    ComplexField Aabs2 = abs2(A), AA2 = cmul(A, Aabs2);
    Field M2k = ms::rmul_k(at(c, 0, creal(M2)));
    Field A2k = ms::rmul_k(at(c, 0, Aabs2));

    Eps3Forcing out;
    auto& I = out.terms;
    I[1] = at(c, -1, cdy(Bb));
    I[2] = -(0.5 / k) * ms::rmul_i(at(c, -1, AbYY)) - (1.0 / k) * ms::rmul_j(at(c, -1, AbXY));
    I[3] = -1.0 * at(c, -1, cdy(Bb)) - i_minus_h(slow_abs_d(M2k));
    I[4] = -(0.5 / k) * ms::rmul_i(at(c, 1, AYY)) + (0.5 / k) * ms::rmul_i(at(c, -1, AbYY)) +
           (1.0 / k) * ms::lmul_j(at(c, -1, AbXY)) + (0.5 * k) * i_minus_h(slow_abs_d(A2k));
    {
        ComplexField g(c.slow);
        for (std::size_t n = 0; n < g.v.size(); ++n)
            g.v[n] = w * (2.0 * cplx(0, 1) * A_T.v[n] - wpp * AXX.v[n] + 2 * k * k * w * AA2.v[n]);
        I[5] = ms::rmul_i(at(c, 1, g));
    }
    Field AAbY = ms::rmul_j(at(c, 0, cmul(A, AbY)));
    I[6] = (0.5 * k) * i_minus_h(AAbY);
    I[9] = (-0.5 * k) * i_minus_h(AAbY);
    {
        ComplexField g = AA2;
        for (auto& v : g.v) v *= -k * k * k;
        I[12] = ms::rmul_i(at(c, 1, g));
    }
    out.combined = Field(c, 1);
    for (const auto& [j, f] : I) out.combined = out.combined + f;

    ComplexField g(c.slow);
    for (std::size_t n = 0; n < g.v.size(); ++n)
        g.v[n] = w * (2.0 * cplx(0, 1) * A_T.v[n] - wpp * AXX.v[n] + 2 * wpp * AYY.v[n] + k * k * w * AA2.v[n]);
    out.simplified = i_minus_h(-1.0 * slow_abs_d(M2k) + (0.5 * k) * slow_abs_d(A2k)) + ms::rmul_i(at(c, 1, g));
    return out;
}

double hnls_defect(const ComplexField& A, const ComplexField& A_T, const PacketParams& p) {
    require_same_grid(A.grid, A_T.grid, "hnls_defect");
    HnlsCoefficients hc = hnls_rhs_coefficients(p);
    ComplexField rhs = hnls_rhs(A, hc), d(A.grid);
    for (std::size_t n = 0; n < d.v.size(); ++n) d.v[n] = cplx(0, 1) * (A_T.v[n] - rhs.v[n]);
    return l2_norm(d);
}

ClosureReport hnls_closure_residual(const ComplexField& A, const ComplexField& A_T, const ComplexField& B,
                                    const PacketParams& p, const ComplexField* M2) {
    ms::Context c = ms::Context::make(A.grid, p, 1);
    ComplexField m = M2 ? *M2 : m2_closure(A, p.k);
    Eps3Forcing f = epsilon3_forcing(c, A, A_T, B, m);
    return {ms::slow_norm(f.combined), hnls_defect(A, A_T, p)};
}

ComplexField central_difference(const std::vector<Envelope>& path, std::size_t n) {
    if (n == 0 || n + 1 >= path.size()) throw std::out_of_range("central_difference: needs neighbours on both sides");
    const Envelope &a = path[n - 1], &b = path[n + 1];
    ComplexField d(a.values.grid);
    double h = b.T - a.T;
    for (std::size_t m = 0; m < d.v.size(); ++m) d.v[m] = (b.values.v[m] - a.values.v[m]) / h;
    return d;
}

Field multiscale_residual(const ms::Context& c, const ComplexField& A, const ResidualOptions& opt) {
    if (opt.orders != 1 && opt.orders != 3) throw std::invalid_argument(fmt::format("residual: orders must be 1 or 3, got {}", opt.orders));
    HnlsCoefficients hc = hnls_rhs_coefficients(PacketParams::make(c.k, 0.1));
    ms::Jet Aj = ms::hnls_jet(A, hc, 3), Bj = ms::jet_const(c.slow, 3, 0.0);

    Field z = ms_z1(c, Aj), lam = ms_lambda1(c, Aj), bt(c, 3);
    if (opt.orders == 3) {
        MsOrder2 o2 = ms_order2(c, Aj, Bj, opt.y_sign);
        z = z + o2.z2;
        lam = lam + o2.lambda2 + ms_lambda3(c, Aj, Bj, nullptr, opt.form);
        bt = ms_b_tilde(c, Aj);
    }
    Field b1 = -ms::rmul_i(bt);
    auto Dt = [&](const Field& f) { return ms::d_t(f) + ms::mul(b1, ms::d_alpha(f)); };
    Field la = ms::d_alpha(lam), lb = ms::d_beta(lam);
    auto P = [&](const Field& g) {
        Field ga = ms::d_alpha(g), gb = ms::d_beta(g);
        return Dt(Dt(g)) - (ms::lmul_j(ga) + ms::mul(lb, ga) - ms::lmul_i(gb) - ms::mul(la, gb));
    };
    Field zk = ms::rmul_k(z);
    Field lhs = P(zk - hilbert_tilde(zk, lam));
    Field h = bt + ms::dagger(Dt(lam));
    Field As = ms_slow(c, Aj), Abs = ms_slow(c, ms::jet_conj(Aj));
    Field cubic = ms::mul(ms::mul(As, As), Abs);
    Field I12 = ms::shift_order(ms::rmul_i(-(c.k * c.k * c.k) * ms::shift_label(cubic, 1)), 3);
    Field rhs = Dt(hilbert_tilde(h, lam)) - hilbert_tilde(Dt(h), lam) + I12;
    return lhs - rhs;
}

ConvergenceStudy residual_sweep(const ComplexField& A0, const PacketParams& p_template, const std::vector<double>& eps_list,
                                double s, const ResidualOptions& opt) {
    if (eps_list.size() < 2) throw std::invalid_argument("residual_sweep: need at least two eps values");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1])) throw std::invalid_argument("residual_sweep: eps_list must be strictly decreasing");

    ms::Context c = ms::Context::make(A0.grid, p_template, opt.max_order);
    Field r = multiscale_residual(c, A0, opt);
    Field rp = r - ms::order_part(r, 4);

    ConvergenceStudy st;
    st.eps_list = eps_list;
    st.k = p_template.k;
    st.s = s;
    st.slow = A0.grid;
    for (int o = 0; o <= opt.max_order; ++o) st.order_norms.push_back(ms::slow_norm(r, o));
    for (double eps : eps_list) {
        Grid fast = ms::fast_grid_for(r, eps, opt.min_fast_na);
        QuaternionField full = ms::realize(r, eps, fast), proj = ms::realize(rp, eps, fast);
        st.fast_grids.push_back(fast);
        st.l2.push_back(l2_norm(full));
        st.hs.push_back(sobolev_norm(full, s));
        st.projected.push_back(sobolev_norm(proj, s));
    }
    st.slope_l2 = fit_slope(eps_list, st.l2);
    st.slope_hs = fit_slope(eps_list, st.hs);
    st.slope_projected = fit_slope(eps_list, st.projected);
    return st;
}

double flat_energy_form(const QuaternionField& theta) { return -inner(theta, k_dirac(theta)); }

double flat_energy(const QuaternionField& theta, const QuaternionField& theta_t) {
    require_same_grid(theta.grid, theta_t.grid, "flat_energy");
    double v = l2_norm(theta_t);
    return v * v + flat_energy_form(theta);
}

QuaternionField project_minus_h0(const QuaternionField& theta) { return 0.5 * (theta - flat_hilbert(theta)); }

}  // namespace wpk
