#pragma once

#include <map>
#include <vector>

#include "wpk/field.hpp"
#include "wpk/hnls.hpp"
#include "wpk/multiscale.hpp"
#include "wpk/wavepacket.hpp"

namespace wpk {

// least squares slope of log(y) against log(x)
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceStudy {
    std::vector<double> eps_list;
    std::vector<double> l2, hs, projected;  // fast-grid norms of the full and projected residual
    std::vector<Grid> fast_grids;
    std::vector<double> order_norms;  // slow norm of the multiscale residual per order
    double slope_l2 = 0, slope_hs = 0, slope_projected = 0;
    double k = 1.0, s = 2.0;
    Grid slow;
};

// P0 (I - H^(0)) z^(1) k with P0 = d_t0^2 - j d_alpha0, slow variables frozen; fast L2 norm at p.eps
double dispersion_residual(const ComplexField& A, const PacketParams& p, double t = 0.0);
// fast L2 norm of (I - H^(0)) z^(1) k, the factor multiplying |k - omega^2| on a single carrier
double dispersion_profile_norm(const ComplexField& A, const PacketParams& p, double t = 0.0);

// 2 j omega (A_T1 - omega' A_X), slow L2 norm
double group_velocity_residual(const ComplexField& A, const ComplexField& A_t1, const PacketParams& p);
// A_T1 for A evaluated in the frame X + omega' t1
ComplexField traveling_frame_t1(const ComplexField& A, const PacketParams& p);

struct Eps3Forcing {
    std::map<int, ms::Field> terms;  // j -> I_j for j in {1..6, 9, 12}; all at order 0
    ms::Field combined;              // sum of the terms
    ms::Field simplified;            // the collected form
};

// A_T enters I_5 as given; M2 is real (imaginary part ignored)
Eps3Forcing epsilon3_forcing(const ms::Context& c, const ComplexField& A, const ComplexField& A_T, const ComplexField& B,
                             const ComplexField& M2);

// M2 = k |A|^2 / 2
ComplexField m2_closure(const ComplexField& A, double k);

// slow L2 norm of j A_T + a A_XX - b A_YY + c A|A|^2
double hnls_defect(const ComplexField& A, const ComplexField& A_T, const PacketParams& p);

struct ClosureReport {
    double forcing = 0;  // slow norm of the combined eps^3 forcing
    double defect = 0;   // HNLS defect of (A, A_T)
};

ClosureReport hnls_closure_residual(const ComplexField& A, const ComplexField& A_T, const ComplexField& B,
                                    const PacketParams& p, const ComplexField* M2 = nullptr);

// central difference of an envelope path at snapshot n
ComplexField central_difference(const std::vector<Envelope>& path, std::size_t n);

struct ResidualOptions {
    int orders = 3;  // 1: lambda^(1), z^(1) only
    double y_sign = 1.0;
    Lambda3Form form = Lambda3Form::Corrected;
    int max_order = 5;
    int min_fast_na = 256;
};

// multiscale residual of the truncated water-wave system for the approximate solution built from A (B = 0);
// independent of eps
ms::Field multiscale_residual(const ms::Context& c, const ComplexField& A, const ResidualOptions& opt);

// realizes the residual for each eps; the projected series drops the order-4 content
ConvergenceStudy residual_sweep(const ComplexField& A0, const PacketParams& p_template, const std::vector<double>& eps_list,
                                double s, const ResidualOptions& opt = {});

// |theta_t|^2 - int theta . (k x grad) theta
double flat_energy(const QuaternionField& theta, const QuaternionField& theta_t);
// -int theta . (k x grad) theta
double flat_energy_form(const QuaternionField& theta);
// (I - H0) theta / 2
QuaternionField project_minus_h0(const QuaternionField& theta);

}  // namespace wpk
