#pragma once

#include <functional>
#include <vector>

#include "wpk/field.hpp"

namespace wpk {

struct PacketParams {
    double k = 1.0;
    double eps = 0.1;
    double omega = 1.0;
    double omega_p = 0.5;
    double omega_pp = -0.25;

    // deep-water dispersion omega^2 = k
    static PacketParams make(double k, double eps);
};

struct HnlsCoefficients {
    double a, b, c;
};

// j A_T + a A_XX - b A_YY + c A|A|^2 = 0
HnlsCoefficients hnls_rhs_coefficients(const PacketParams& p);

struct Envelope {
    ComplexField values;
    double T = 0.0;
};

ComplexField hnls_rhs(const ComplexField& A, const HnlsCoefficients& c);
// directional derivative of hnls_rhs at A along Adot
ComplexField hnls_rhs_dot(const ComplexField& A, const ComplexField& Adot, const HnlsCoefficients& c);

struct StepOptions {
    bool dealias = true;
    bool linear_only = false;
};

void dealias(std::vector<cplx>& c, const Grid& g);

Envelope evolve_A(const Envelope& A0, const PacketParams& p, double T_final, double dt, StepOptions opt = {});
// snapshots every `every` steps (the first is A0, the last is at T_final)
std::vector<Envelope> evolve_A_path(const Envelope& A0, const PacketParams& p, double T_final, double dt, int every,
                                    StepOptions opt = {});
// integrating-factor RK4, used as a reference solution
Envelope evolve_A_rk4(const Envelope& A0, const PacketParams& p, double T_final, double dt, StepOptions opt = {});
// unitary linear propagator over time dt
ComplexField linear_step(const ComplexField& A, const HnlsCoefficients& c, double dt);

// Envelope path with linear interpolation between snapshots
struct EnvelopePath {
    std::vector<Envelope> snaps;
    ComplexField at(double T) const;
};

// B_T = j(a B_XX - b B_YY) + F1 B + F2 conj(B) + F3
struct BSources {
    std::function<ComplexField(double T, const ComplexField& A)> F1, F2, F3;
};

Envelope evolve_B(const Envelope& B0, const EnvelopePath& A_path, const PacketParams& p, const BSources& src,
                  double T_final, double dt);

double mass(const ComplexField& A);
double hamiltonian(const ComplexField& A, const PacketParams& p);
double decay_norm(const ComplexField& A, double delta);

}  // namespace wpk
