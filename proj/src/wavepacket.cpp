#include "wpk/wavepacket.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "wpk/hilbert_expansion.hpp"

namespace wpk {

namespace {

using ms::Field;

Field H0(const Field& x) { return ms::hilbert0(x, 0); }
Field i_minus_h(const Field& x) { return x - H0(x); }
Field i_plus_h(const Field& x) { return x + H0(x); }

// Re and Im of a 1,j-valued field as scalar fields
Field re(const Field& x) { return ms::part(x, 0); }
Field im(const Field& x) { return -ms::lmul_j(ms::part(x, 2)); }
// k-component subtracted
Field no_k(const Field& x) { return x - ms::part(x, 3); }

struct Pieces {
    const ms::Context& c;
    Field A, Ab, B, Bb;
    Pieces(const ms::Context& cx, const ms::Jet& a, const ms::Jet& b)
        : c(cx), A(ms_slow(cx, a)), Ab(ms_slow(cx, ms::jet_conj(a))), B(ms_slow(cx, b)), Bb(ms_slow(cx, ms::jet_conj(b))) {}
    Field e(const Field& x) const { return ms::shift_label(x, 1); }
    Field absA2() const { return ms::mul(A, Ab); }
};

ms::Jet jet1(const ComplexField& f) { return ms::Jet{{f}}; }

ms::Context builder_context(const ComplexField& A, const PacketParams& p) { return ms::Context::make(A.grid, p, 3); }

}  // namespace

Field ms_slow(const ms::Context& c, const ms::Jet& f) { return ms::term_a(c, 0, 0, f); }

Field ms_lambda1(const ms::Context& c, const ms::Jet& A) {
    Pieces P(c, A, A);
    return ms::shift_order(ms::lmul_i(P.e(P.A)), 1);
}

Field ms_z1(const ms::Context& c, const ms::Jet& A) {
    Pieces P(c, A, A);
    return ms::shift_order(im(P.e(P.A)), 1);
}

MsOrder2 ms_order2(const ms::Context& c, const ms::Jet& A, const ms::Jet& B, double y_sign) {
    Pieces P(c, A, B);
    double k = c.k;
    Field a2 = P.absA2();
    Field z2 = im(P.e(P.B)) + (0.5 * k) * a2;
    Field l2 = ms::lmul_i(P.e(P.B)) + (0.5 * k) * ms::rmul_k(a2) + (y_sign / k) * ms::part(P.e(ms::d_Y(P.A)), 2);
    return {ms::shift_order(z2, 2), ms::shift_order(l2, 2)};
}

Field ms_lambda3(const ms::Context& c, const ms::Jet& A, const ms::Jet& B, const ComplexField* M3, Lambda3Form form) {
    Pieces P(c, A, B);
    double k = c.k;
    double flip = form == Lambda3Form::Printed ? 1.0 : -1.0;
    Field out(c, P.A.levels);
    if (M3) {
        ComplexField m(c.slow);
        for (std::size_t i = 0; i < m.v.size(); ++i) m.v[i] = M3->v[i].real();
        out = out + i_plus_h(ms::rmul_k(ms_slow(c, jet1(m))));
    }
    out = out + (1.0 / k) * ms::part(P.e(ms::d_Y(P.B)), 2);
    Field y = (0.5 * flip) * i_minus_h(k * ms::rmul_k(H0(ms::mul(P.A, P.Bb))));
    out = out + no_k(y);
    out = out + (1.0 / (2 * k * k)) * ms::rmul_i(re(P.e(ms::d_Y(ms::d_Y(P.A)))));
    out = out - (flip / (k * k)) * ms::rmul_j(im(ms::lmul_j(P.e(ms::d_X(ms::d_Y(P.A))))));
    Field inner = 0.5 * ms::rmul_i(ms::mul(P.A, ms::d_X(P.Ab))) +
                  0.25 * ms::rmul_j(ms::mul(P.A, ms::d_Y(P.Ab)) + ms::mul(P.Ab, ms::d_Y(P.A))) +
                  (0.5 * k) * ms::rmul_k(ms::mul(P.B, P.Ab));
    Field x = -(0.5 * k * k) * ms::rmul_i(P.e(ms::mul(P.A, P.absA2()))) + i_minus_h(inner);
    out = out + no_k(x);
    return ms::shift_order(out, 3);
}

Field ms_lambda_from_z(const Field& z) {
    if (!z.ctx) return z;
    Field zk = ms::rmul_k(z);
    Field h0 = ms::hilbert0(zk, 0);
    Field l(*z.ctx, z.levels);
    // the correctors in H enter with at least one order, so three passes settle orders 1..3
    for (int it = 0; it < 3; ++it) {
        Field rest = hilbert_tilde(zk, l) - h0;
        l = ms::drop_orders_above(zk + h0 + no_k(rest), 3);
    }
    return l;
}

Field ms_b_tilde(const ms::Context& c, const ms::Jet& A) {
    Pieces P(c, A, A);
    return ms::shift_order(ms::rmul_i(-(c.k * c.omega) * P.absA2()), 2);
}

QuaternionField build_lambda1(const ComplexField& A, const PacketParams& p, double t, const Grid& fast) {
    ms::Context c = builder_context(A, p);
    return ms::realize_order(ms_lambda1(c, jet1(A)), 1, p.eps, fast, t);
}

Order2 build_order2(const ComplexField& A, const ComplexField& B, const PacketParams& p, double t, const Grid& fast) {
    require_same_grid(A.grid, B.grid, "build_order2");
    ms::Context c = builder_context(A, p);
    MsOrder2 o = ms_order2(c, jet1(A), jet1(B));
    return {ms::realize_order(o.z2, 2, p.eps, fast, t), ms::realize_order(o.lambda2, 2, p.eps, fast, t)};
}

QuaternionField build_lambda3(const ComplexField& A, const ComplexField& B, const PacketParams& p, double t, const Grid& fast,
                              const ComplexField* M3, Lambda3Form form) {
    require_same_grid(A.grid, B.grid, "build_lambda3");
    if (M3) require_same_grid(A.grid, M3->grid, "build_lambda3");
    ms::Context c = builder_context(A, p);
    return ms::realize_order(ms_lambda3(c, jet1(A), jet1(B), M3, form), 3, p.eps, fast, t);
}

QuaternionField build_b_tilde(const ComplexField& A, const PacketParams& p, double t, const Grid& fast) {
    ms::Context c = builder_context(A, p);
    return ms::realize(ms_b_tilde(c, jet1(A)), p.eps, fast, t);
}

QuaternionField build_A_tilde(const PacketParams&, const Grid& fast) {
    QuaternionField out(fast);
    for (auto& q : out.data) q.q0 = 1.0;
    return out;
}

QuaternionField ApproximateSolution::lambda_tilde() const {
    QuaternionField out(lambda_orders.at(0).grid);
    for (std::size_t j = 0; j < lambda_orders.size(); ++j) out += std::pow(params.eps, double(j + 1)) * lambda_orders[j];
    return out;
}

ApproximateSolution build_approximate_solution(const ComplexField& A, const ComplexField& B, const PacketParams& p, double t,
                                               const Grid& fast) {
    require_same_grid(A.grid, B.grid, "build_approximate_solution");
    ms::Context c = builder_context(A, p);
    ApproximateSolution s;
    s.params = p;
    s.t = t;
    MsOrder2 o2 = ms_order2(c, jet1(A), jet1(B));
    s.lambda_orders = {ms::realize_order(ms_lambda1(c, jet1(A)), 1, p.eps, fast, t), ms::realize_order(o2.lambda2, 2, p.eps, fast, t),
                       ms::realize_order(ms_lambda3(c, jet1(A), jet1(B)), 3, p.eps, fast, t)};
    s.z_orders = {ms::realize_order(ms_z1(c, jet1(A)), 1, p.eps, fast, t), ms::realize_order(o2.z2, 2, p.eps, fast, t), QuaternionField(fast)};
    s.b_tilde = ms::realize(ms_b_tilde(c, jet1(A)), p.eps, fast, t);
    s.A_tilde = build_A_tilde(p, fast);
    return s;
}

int term_order(const TermSignature& t) {
    int o = 0;
    for (Gen g : t.factors) switch (g) {
            case Gen::R1:
            case Gen::R2: break;
            case Gen::A:
            case Gen::Abar:
            case Gen::dX:
            case Gen::dY: o += 1; break;
            case Gen::B:
            case Gen::Bbar:
            case Gen::dT: o += 2; break;
        }
    return o;
}

int term_phase(const TermSignature& t) {
    int p = 0;
    for (Gen g : t.factors) {
        if (g == Gen::A || g == Gen::B) p += 1;
        if (g == Gen::Abar || g == Gen::Bbar) p -= 1;
    }
    return p;
}

std::optional<Gen> parse_gen(const std::string& s) {
    static const std::map<std::string, Gen> names{{"A", Gen::A},   {"Abar", Gen::Abar}, {"B", Gen::B},   {"Bbar", Gen::Bbar}, {"dX", Gen::dX},
                                                   {"dY", Gen::dY}, {"dT", Gen::dT},     {"R1", Gen::R1}, {"R2", Gen::R2}};
    auto it = names.find(s);
    if (it == names.end()) return std::nullopt;
    return it->second;
}

TermSignature parse_signature(const std::string& s) {
    TermSignature t;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        auto g = parse_gen(tok);
        if (!g) throw std::invalid_argument(fmt::format("unknown generator '{}' in term signature '{}'", tok, s));
        t.factors.push_back(*g);
    }
    return t;
}

std::vector<LedgerEntry> builtin_ledger() {
    auto e = [](const char* name, const char* sig, int pw, int ph) { return LedgerEntry{name, parse_signature(sig), pw, ph}; };
    return {
        e("lambda1 iAe", "A", 1, 1),
        e("z1 Im(Ae)", "A", 1, 1),
        e("z2 Im(Be)", "B", 2, 1),
        e("z2 |A|^2", "A Abar", 2, 0),
        e("lambda2 iBe", "B", 2, 1),
        e("lambda2 |A|^2 k", "A Abar", 2, 0),
        e("lambda2 Im(A_Y e) j", "dY A", 2, 1),
        e("lambda3 Im(B_Y e) j", "dY B", 3, 1),
        e("lambda3 H0(A Bbar) k", "R1 A Bbar", 3, 0),
        e("lambda3 Re(A_YY e) i", "dY dY A", 3, 1),
        e("lambda3 Im(j A_XY e) j", "dX dY A", 3, 1),
        e("lambda3 A|A|^2 e i", "A A Abar", 3, 1),
        e("lambda3 A Abar_X i", "A dX Abar", 3, 0),
        e("lambda3 (A Abar)_Y j", "A dY Abar", 3, 0),
        e("lambda3 B Abar k", "B Abar", 3, 0),
        e("b2 |A|^2 i", "A Abar", 2, 0),
    };
}

LedgerReport ledger_check(const std::vector<LedgerEntry>& entries) {
    LedgerReport r;
    for (const auto& e : entries) {
        ++r.checked;
        int o = term_order(e.sig), p = term_phase(e.sig);
        if (o != e.eps_power) r.violations.push_back(fmt::format("{}: eps power {} but total order {}", e.name, e.eps_power, o));
        if (p != e.phase) r.violations.push_back(fmt::format("{}: carrier multiple {} but total phase {}", e.name, e.phase, p));
    }
    return r;
}

LedgerReport ledger_check(const std::vector<LedgerEntry>& entries, const std::map<std::string, ms::Field>& built) {
    LedgerReport r = ledger_check(entries);
    std::map<std::string, const LedgerEntry*> reg;
    for (const auto& e : entries) reg[e.name] = &e;
    for (const auto& [name, f] : built) {
        auto it = reg.find(name);
        if (it == reg.end()) throw std::invalid_argument(fmt::format("ledger: built term '{}' is not registered", name));
        const LedgerEntry& e = *it->second;
        for (const auto& [key, blk] : f.terms)
            if (key.first != e.eps_power || std::abs(key.second) != std::abs(e.phase))
                r.violations.push_back(fmt::format("{}: built content at eps^{} e^({} j phi), registered eps^{} phase {}", name, key.first,
                                                   key.second, e.eps_power, e.phase));
    }
    return r;
}

std::map<std::string, ms::Field> builtin_terms(const ms::Context& c, const ms::Jet& A, const ms::Jet& B) {
    Pieces P(c, A, B);
    double k = c.k;
    auto at = [](const Field& x, int o) { return ms::shift_order(x, o); };
    Field a2 = P.absA2();
    Field inner_y = 0.5 * i_minus_h(k * ms::rmul_k(H0(ms::mul(P.A, P.Bb))));
    std::map<std::string, ms::Field> m;
    m.emplace("lambda1 iAe", at(ms::lmul_i(P.e(P.A)), 1));
    m.emplace("z1 Im(Ae)", at(im(P.e(P.A)), 1));
    m.emplace("z2 Im(Be)", at(im(P.e(P.B)), 2));
    m.emplace("z2 |A|^2", at((0.5 * k) * a2, 2));
    m.emplace("lambda2 iBe", at(ms::lmul_i(P.e(P.B)), 2));
    m.emplace("lambda2 |A|^2 k", at((0.5 * k) * ms::rmul_k(a2), 2));
    m.emplace("lambda2 Im(A_Y e) j", at((1.0 / k) * ms::part(P.e(ms::d_Y(P.A)), 2), 2));
    m.emplace("lambda3 Im(B_Y e) j", at((1.0 / k) * ms::part(P.e(ms::d_Y(P.B)), 2), 3));
    m.emplace("lambda3 H0(A Bbar) k", at(no_k(inner_y), 3));
    m.emplace("lambda3 Re(A_YY e) i", at(ms::rmul_i(re(P.e(ms::d_Y(ms::d_Y(P.A))))), 3));
    m.emplace("lambda3 Im(j A_XY e) j", at(ms::rmul_j(im(ms::lmul_j(P.e(ms::d_X(ms::d_Y(P.A)))))), 3));
    m.emplace("lambda3 A|A|^2 e i", at(no_k(ms::rmul_i(P.e(ms::mul(P.A, a2)))), 3));
    m.emplace("lambda3 A Abar_X i", at(no_k(i_minus_h(ms::rmul_i(ms::mul(P.A, ms::d_X(P.Ab))))), 3));
    m.emplace("lambda3 (A Abar)_Y j", at(no_k(i_minus_h(ms::rmul_j(ms::mul(P.A, ms::d_Y(P.Ab)) + ms::mul(P.Ab, ms::d_Y(P.A))))), 3));
    m.emplace("lambda3 B Abar k", at(no_k(i_minus_h(ms::rmul_k(ms::mul(P.B, P.Ab)))), 3));
    m.emplace("b2 |A|^2 i", at(ms::rmul_i(a2), 2));
    return m;
}

}  // namespace wpk
