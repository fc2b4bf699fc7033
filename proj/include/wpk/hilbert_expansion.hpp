#pragma once

#include <functional>
#include <map>

#include "wpk/field.hpp"
#include "wpk/multiscale.hpp"

namespace wpk {

// f(alpha, beta) = F(eps alpha, eps beta) e^{j k alpha}
struct Packet {
    ComplexField F;
    double k = 1.0;
    double eps = 0.1;

    // fast grid with the slow grid's size and lengths scaled by 1/eps
    Grid fast_grid() const;
};

// G(eps alpha, eps beta) e^{j k alpha} on the fast grid (modes pushed off the grid are dropped)
QuaternionField realize_modulated(const ComplexField& G, double k, double eps, const Grid& fast);
QuaternionField realize(const Packet& pk);

// How the truncation is combined: H0 ~ sum_j eps^j H0^(j) (Plus) or H0^(0) - sum_{j>0} eps^j H0^(j) (Minus)
enum class TruncationSign { Plus, Minus };

struct H0Options {
    // use the printed sign of the k d_{alpha_1 beta_1} term at second order
    bool printed_k_sign = false;
};

QuaternionField h0_expansion(const Packet& pk, int order, H0Options opt = {});
double h0_truncation_error(const Packet& pk, int s, TruncationSign sign = TruncationSign::Plus, H0Options opt = {});

struct SurfaceSlices {
    QuaternionField x, y, z;  // real-valued fields in the scalar slot

    static SurfaceSlices from_lambda(const QuaternionField& lambda);
    QuaternionField p1() const;  // x + j z
    QuaternionField p2() const;  // y - i z
    QuaternionField lambda() const;
};

using Operator = std::function<QuaternionField(const QuaternionField&)>;

// [p, T] g = p T(g) - T(p g)
QuaternionField commutator(const QuaternionField& p, const Operator& T, const QuaternionField& g);

QuaternionField h1_full(const QuaternionField& f, const SurfaceSlices& s);
// [x, H0] d_alpha f + [y, H0] d_beta f + [z, H0] k D f
QuaternionField h1_three_commutator(const QuaternionField& f, const SurfaceSlices& s);
QuaternionField h2_full(const QuaternionField& f, const SurfaceSlices& s);

enum class HWhich { H1_1, H1_2, H2_2 };

// Multiscale fields here carry no eps bookkeeping: every input sits at order 0.
// lambda_by_order maps j to the corrector lambda^(j).
ms::Field h_multiscale(const ms::Field& f, const std::map<int, ms::Field>& lambda_by_order, HWhich which);

// x, y, z slices of a multiscale vector field as scalar-valued multiscale fields
struct MsSlices {
    ms::Field x, y, z;
    ms::Field p1() const;
    ms::Field p2() const;
};
MsSlices ms_slices(const ms::Field& lambda);

// H0 + H1 + H2 on multiscale fields with eps bookkeeping; p1, p2 from lambda, full multiscale derivatives
ms::Field hilbert_tilde(const ms::Field& f, const ms::Field& lambda, int max_n = 2);

// merge all orders into order 0
ms::Field collapse(const ms::Field& x);

// (H1^(2) + H2^(2)) applied to conj(F) e^{-j phi} (sign = -1) or F e^{j phi} (sign = +1), as printed
ms::Field h2_wavenumber_formulas(const ms::Context& c, const ComplexField& F, const ComplexField& A, const ComplexField& B,
                                 int sign);

// multiscale lambda^(1), lambda^(2) at order 0 used by the formulas above
ms::Field lambda1_field(const ms::Context& c, const ComplexField& A);
ms::Field lambda2_field(const ms::Context& c, const ComplexField& A, const ComplexField& B, double y_term_sign = 1.0);

}  // namespace wpk
