#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpk/field.hpp"

namespace wpk {

using Freq2 = std::array<double, 2>;

// (|xi| - |xi - xi'| - |xi'|)^2 - 4 |xi'| |xi - xi'|
double resonance_denominator(const Freq2& xi, const Freq2& xi_prime);

// specialization xi - xi' = -k e1
double kernel_denominator(double k, const Freq2& xi_prime);
bool is_resonant(double k, const Freq2& xi_prime);

struct DenominatorReport {
    // (b) as printed: | |xi| - |xi'| - |xi - xi'| | <= min(2|xi - xi'|, |xi'|)
    double b_lhs = 0, b_rhs_printed = 0, b_rhs_corrected = 0;  // corrected: 2 min(|xi - xi'|, |xi'|)
    // (c) with the given C0
    double c_lhs = 0, c_rhs = 0;
    // |D| (|xi| + |xi'| + |xi - xi'|) / (|xi| |xi'| |xi - xi'|); (a) asks it to lie in [1/C0, C0]
    double a_ratio = 0;
    bool degenerate = false;  // some of |xi|, |xi'|, |xi - xi'| vanish
};

DenominatorReport denominator_inequalities(const Freq2& xi, const Freq2& xi_prime, double C0);

struct LemmaSweep {
    int samples = 0;
    double C0_fit = 0;             // max(ratio, 1/ratio) over the sample
    int b_printed_violations = 0;  // printed (b)
    int b_corrected_violations = 0;
    int c_violations = 0;  // with C0 = C0_fit
};

// random (xi, xi') with |.| in [rmin, rmax], fixed seed
LemmaSweep denominator_lemma_sweep(int samples, unsigned seed, double rmin = 1e-2, double rmax = 1e2);

struct KernelValue {
    cplx Q0, Q1;  // 1,j values via i <-> j
};

class ResonanceError : public std::runtime_error {
public:
    ResonanceError(const std::string& what, std::vector<Freq2> modes) : std::runtime_error(what), modes_(std::move(modes)) {}
    const std::vector<Freq2>& modes() const { return modes_; }

private:
    std::vector<Freq2> modes_;
};

struct NormalFormKernel {
    enum class Variant { Generic, Particular1, Particular7 };
    using Source = std::function<cplx(double, double)>;

    double k = 1.0;
    Variant variant = Variant::Particular1;
    Source F0, F1;  // Generic only
    int l = 1;      // Particular7 only

    static NormalFormKernel generic(double k, Source F0, Source F1);
    static NormalFormKernel particular1(double k);
    static NormalFormKernel particular7(double k, int l);

    // right-hand sides of the kernel system at xi'
    cplx f0(const Freq2& xp) const;
    cplx f1(const Freq2& xp) const;
    // Particular7 is defined only for |xi'| >= 4k
    bool admissible(const Freq2& xp) const;
};

// exact solve of  d Q0 + 2 j w |xi'| Q1 = F0,  d Q1 - 2 j w Q0 = F1,  d = |xi' - k e1| - |xi'| - k
// throws ResonanceError on resonant xi' and std::domain_error below the Particular7 cutoff
KernelValue kernel_values(const NormalFormKernel& K, const Freq2& xi_prime);

// max |lhs - rhs| of the kernel system at xi'
double kernel_system_residual(const NormalFormKernel& K, const Freq2& xi_prime, const KernelValue& q);

struct BackSubstitution {
    int samples = 0, skipped = 0;
    double max_residual = 0;  // relative to 1 + |F| + |system| |Q|
    double sup_Q0 = 0, sup_Q1 = 0;
};

BackSubstitution back_substitution_sweep(const NormalFormKernel& K, int samples, unsigned seed, double rmax = 1e3);

struct GainReport {
    int samples = 0, violations = 0;
    double C_fit = 0;  // max |xi'| |xi'_l/|xi'| - xi_l/|xi|| over both l
    double C_bound = 0;
};

// |xi'| >= 4k, |xi - xi'| <= 3k/2
double derivative_gain_lhs(const Freq2& xi, const Freq2& xi_prime, int l);
GainReport derivative_gain_check(double k, int samples, unsigned seed, double C_bound_over_k = 6.0);

enum class BilinearSide { Left, Right };

// F[Q](xi) = sum_{xi'} P(xi - xi') Q(xi') F[g](xi'), P = F[eps B_{-k} conj(S) e^{-j phi}].
// Left: left transforms, packet on the left. Right: right transforms, packet on the right.
// which selects Q0 (0) or Q1 (1). S lives on the slow grid; theta on fast.
QuaternionField apply_bilinear(const ComplexField& S, const QuaternionField& theta, const NormalFormKernel& K, double eps,
                               int which = 0, BilinearSide side = BilinearSide::Left);

// the filtered packet factor used above
QuaternionField packet_factor(const ComplexField& S, double k, double eps, const Grid& fast);

struct BilinearStudy {
    std::vector<double> eps_list, ratio;  // |Q|_L2 / (|S|_H3 |theta|_L2)
    std::vector<int> fast_n;
    double slope = 0, C_fit = 0;  // C_fit = max ratio / eps
};

// Gaussian S on an n_slow^2 slow grid, band-limited random theta with the resonant modes removed, Q0 of Particular1
BilinearStudy bilinear_estimate_study(double k, const std::vector<double>& eps_list, unsigned seed, int n_slow = 32,
                                      double slow_length = 8 * 3.14159265358979323846);

}  // namespace wpk
