#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wpk/field.hpp"
#include "wpk/hnls.hpp"
#include "wpk/multiscale.hpp"

namespace wpk {

// Multiscale builders. Fields carry their eps order; A, B jets hold (F, F_T, F_TT).
ms::Field ms_slow(const ms::Context& c, const ms::Jet& f);  // label 0, order 0
ms::Field ms_lambda1(const ms::Context& c, const ms::Jet& A);
ms::Field ms_z1(const ms::Context& c, const ms::Jet& A);

struct MsOrder2 {
    ms::Field z2, lambda2;
};
// y_sign multiplies the (j/k) Im(A_Y e^{j phi}) term
MsOrder2 ms_order2(const ms::Context& c, const ms::Jet& A, const ms::Jet& B, double y_sign = 1.0);
// Printed keeps the signs of the A_XY term and the H0(A conj B) term as published; Corrected flips both,
// which matches lambda derived from z through the Hilbert expansion and has zero scalar part.
enum class Lambda3Form { Corrected, Printed };
// optional M3 is a real slow field (imaginary parts ignored)
ms::Field ms_lambda3(const ms::Context& c, const ms::Jet& A, const ms::Jet& B, const ComplexField* M3 = nullptr,
                     Lambda3Form form = Lambda3Form::Corrected);
// lambda = (I + H^(0)) z k + (H - H^(0)) z k without its k-component, through order 3
ms::Field ms_lambda_from_z(const ms::Field& z);
ms::Field ms_b_tilde(const ms::Context& c, const ms::Jet& A);

// Fast-grid builders at time t. A and B are the envelopes at the current slow time.
QuaternionField build_lambda1(const ComplexField& A, const PacketParams& p, double t, const Grid& fast);
struct Order2 {
    QuaternionField z2, lambda2;
};
Order2 build_order2(const ComplexField& A, const ComplexField& B, const PacketParams& p, double t, const Grid& fast);
QuaternionField build_lambda3(const ComplexField& A, const ComplexField& B, const PacketParams& p, double t, const Grid& fast,
                              const ComplexField* M3 = nullptr, Lambda3Form form = Lambda3Form::Corrected);
QuaternionField build_b_tilde(const ComplexField& A, const PacketParams& p, double t, const Grid& fast);
QuaternionField build_A_tilde(const PacketParams& p, const Grid& fast);

struct ApproximateSolution {
    std::vector<QuaternionField> lambda_orders;  // lambda^(1..3)
    std::vector<QuaternionField> z_orders;       // z^(1..3) in the scalar slot
    QuaternionField b_tilde, A_tilde;
    PacketParams params;
    double t = 0.0;

    QuaternionField lambda_tilde() const;
};

ApproximateSolution build_approximate_solution(const ComplexField& A, const ComplexField& B, const PacketParams& p, double t,
                                               const Grid& fast);

enum class Gen { A, Abar, B, Bbar, dX, dY, dT, R1, R2 };

struct TermSignature {
    std::vector<Gen> factors;
};

int term_order(const TermSignature& t);
int term_phase(const TermSignature& t);
std::optional<Gen> parse_gen(const std::string& s);
TermSignature parse_signature(const std::string& s);  // e.g. "dX Abar A"; throws on unknown generator

struct LedgerEntry {
    std::string name;
    TermSignature sig;
    int eps_power = 0;
    int phase = 0;
};

struct LedgerReport {
    int checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// terms registered by the builders above
std::vector<LedgerEntry> builtin_ledger();
LedgerReport ledger_check(const std::vector<LedgerEntry>& entries);
// also checks that each built multiscale term only has blocks at (eps_power, +-phase);
// throws when a built term has no registration
LedgerReport ledger_check(const std::vector<LedgerEntry>& entries, const std::map<std::string, ms::Field>& built);
// the builders' individual terms, keyed like builtin_ledger()
std::map<std::string, ms::Field> builtin_terms(const ms::Context& c, const ms::Jet& A, const ms::Jet& B);

}  // namespace wpk
