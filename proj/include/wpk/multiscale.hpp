#pragma once

#include <map>
#include <utility>
#include <vector>

#include "wpk/field.hpp"
#include "wpk/hnls.hpp"

namespace wpk::ms {

// Shared data for multiscale fields on one slow grid.
struct Context {
    Grid slow;
    double k = 1.0, omega = 1.0, omega_p = 0.5;
    int max_order = 5;
    std::vector<double> ex, ey;  // odd-convention slow frequencies, flat index

    static Context make(const Grid& slow, const PacketParams& p, int max_order);
    std::size_t n() const { return slow.size(); }
};

// a + b i on the slow grid with `levels` slow-time derivatives stacked (F, F_T, F_TT)
struct Block {
    std::vector<cplx> a, b;
};

// Sum over (order o, label n) of eps^o e^{n j phi} (a + b i)
struct Field {
    const Context* ctx = nullptr;
    int levels = 3;
    std::map<std::pair<int, int>, Block> terms;

    Field() = default;
    Field(const Context& c, int lv) : ctx(&c), levels(lv) {}

    Block& block(int order, int label);
    bool empty() const { return terms.empty(); }
};

// Slow complex function with its slow-time derivatives
struct Jet {
    std::vector<ComplexField> d;  // d[0] = F, d[1] = F_T, d[2] = F_TT
};

Jet jet_const(const Grid& g, int levels, cplx value);
Jet jet_conj(const Jet& j);
// A with A_T, A_TT from the HNLS right-hand side
Jet hnls_jet(const ComplexField& A, const HnlsCoefficients& c, int levels);

// eps^order e^{label j phi}(a + b i); empty jets mean zero
Field term(const Context& c, int order, int label, const Jet& a, const Jet& b);
Field term_a(const Context& c, int order, int label, const Jet& a);

Field operator+(const Field& x, const Field& y);
Field operator-(const Field& x, const Field& y);
Field operator-(const Field& x);
Field operator*(double s, const Field& x);
Field lscale(cplx s, const Field& x);  // left multiplication by a 1,j constant
Field mul(const Field& x, const Field& y);

Field lmul_i(const Field& x);
Field lmul_j(const Field& x);
Field lmul_k(const Field& x);
Field rmul_i(const Field& x);
Field rmul_j(const Field& x);
Field rmul_k(const Field& x);
Field dagger(const Field& x);

// projection onto the real-valued component c (0: scalar, 1: i, 2: j, 3: k), kept at its unit
Field part(const Field& x, int c);

// full multiscale derivatives
Field d_alpha(const Field& x);
Field d_beta(const Field& x);
Field d_t(const Field& x);
// single pieces
Field d_alpha0(const Field& x);
Field d_t0(const Field& x);
Field d_X(const Field& x);  // d/d alpha_1 acting on slow variables, order unchanged
Field d_Y(const Field& x);  // d/d beta_1, order unchanged

// flat Hilbert transform as sum_j eps^j H0^(j); `only` selects a single j when >= 0
Field hilbert0(const Field& x, int only = -1);
// slow |D| on label-0 terms (order +1); throws on nonzero labels
Field abs_d_slow(const Field& x);

Field order_part(const Field& x, int order);
Field shift_order(const Field& x, int shift);  // orders past max_order are dropped
Field shift_label(const Field& x, int n);      // left multiplication by e^{n j phi}
Field drop_orders_above(const Field& x, int order);
Field label_part(const Field& x, int label);
Field with_levels(const Field& x, int levels);

// sqrt of the sum over (order, label) of slow L2 norms squared for the given order (-1: all)
double slow_norm(const Field& x, int order = -1);
double max_abs(const Field& x);

// fast grid realization at time t for a given eps (slow time held fixed); requires commensurable fast grid
QuaternionField realize(const Field& x, double eps, const Grid& fast, double t = 0.0);
// single-order realization without the eps^order factor
QuaternionField realize_order(const Field& x, int order, double eps, const Grid& fast, double t = 0.0);
// fast grid with the slow grid scaled by 1/eps and alpha size large enough for the labels present
Grid fast_grid_for(const Field& x, double eps, int min_na);

// pointwise slow value of one (order, label) block as a complex pair (level 0)
std::pair<ComplexField, ComplexField> block_fields(const Field& x, int order, int label);

}  // namespace wpk::ms
