#pragma once

#include <functional>
#include <vector>

#include "wpk/field.hpp"

namespace wpk {

enum class Flavor { Left, Right };

// f = sum_xi e^{j xi.x} c_xi (Left) or f = sum_xi c_xi e^{j xi.x} (Right)
struct SpectralField {
    Grid grid;
    Flavor flavor = Flavor::Left;
    std::vector<Quaternion> coeffs;

    Quaternion& at(int i, int j) { return coeffs[grid.idx(i, j)]; }
    const Quaternion& at(int i, int j) const { return coeffs[grid.idx(i, j)]; }
};

SpectralField fft_left(const QuaternionField& f);
SpectralField fft_right(const QuaternionField& f);
QuaternionField inverse(const SpectralField& s);

// Frequency-side inner product matching the integral of f.g
double spectral_inner(const SpectralField& a, const SpectralField& b);

// Symbol acting as  F[Tf] = s_plain F[f] + s_kflip F[k f], with s values in span{1, j}.
struct MultiplierSymbol {
    std::function<cplx(double, double)> plain;
    std::function<cplx(double, double)> kflip;  // may be empty
    bool odd = false;                            // evaluate at frequencies with Nyquist mapped to 0
};

QuaternionField apply_multiplier(const QuaternionField& f, const MultiplierSymbol& m);

MultiplierSymbol identity_symbol();
MultiplierSymbol riesz_symbol(int l);
MultiplierSymbol hilbert_symbol();
MultiplierSymbol abs_d_symbol(double q);

QuaternionField riesz(const QuaternionField& f, int l);
QuaternionField flat_hilbert(const QuaternionField& f);
QuaternionField fractional_derivative(const QuaternionField& f, double q);
QuaternionField mode_filter(const QuaternionField& f, double k);

QuaternionField d_alpha(const QuaternionField& f);
QuaternionField d_beta(const QuaternionField& f);
// k D f = j f_alpha - i f_beta, with D = i d_alpha + j d_beta
QuaternionField k_dirac(const QuaternionField& f);

double sobolev_norm(const QuaternionField& f, double s);
double homogeneous_norm(const QuaternionField& f, double s);
double weighted_norm(const QuaternionField& f, int s, double d);
double holder_norm(const QuaternionField& f, int s);

// Complex (1,j-valued) field helpers on any grid
ComplexField apply_symbol(const ComplexField& f, const std::function<cplx(double, double)>& s, bool odd);
ComplexField cdx(const ComplexField& f);
ComplexField cdy(const ComplexField& f);
ComplexField cderiv(const ComplexField& f, int nx, int ny);
double csobolev_norm(const ComplexField& f, double s);
double cweighted_norm(const ComplexField& f, int s, double d);
double cholder_norm(const ComplexField& f, int s);

}  // namespace wpk
