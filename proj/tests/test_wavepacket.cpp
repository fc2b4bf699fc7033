#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "wpk/wavepacket.hpp"

using namespace wpk;
using namespace wpk::test;

namespace {

const Grid slow = Grid::square(128, 8 * M_PI);
const PacketParams P = PacketParams::make(1.0, 0.25);
const Grid fast(slow.na, slow.nb, slow.la / P.eps, slow.lb / P.eps);

ComplexField constant(cplx v) {
    ComplexField c(slow);
    for (auto& z : c.v) z = v;
    return c;
}

double max_component(const QuaternionField& f, int c) {
    double m = 0;
    for (const auto& q : f.data) m = std::max(m, std::abs(c == 0 ? q.q0 : c == 1 ? q.q1 : c == 2 ? q.q2 : q.q3));
    return m;
}

}  // namespace

TEST_CASE("first-order surface") {
    CHECK(max_abs(build_lambda1(ComplexField(slow), P, 0, fast)) == 0);
    QuaternionField one = build_lambda1(constant(1.0), P, 0, fast);
    double err = 0;
    for (int i = 0; i < fast.na; ++i)
        for (int j = 0; j < fast.nb; ++j) err = std::max(err, qdiff(one(i, j), {0, std::cos(fast.alpha(i)), 0, std::sin(fast.alpha(i))}));
    CHECK(err <= 1e-12);

    // at later times only the carrier phase moves for a constant envelope
    QuaternionField later = build_lambda1(constant(1.0), P, 0.7, fast);
    err = 0;
    for (int i = 0; i < fast.na; ++i)
        for (int j = 0; j < fast.nb; ++j) {
            double ph = P.k * fast.alpha(i) + P.omega * 0.7;
            err = std::max(err, qdiff(later(i, j), {0, std::cos(ph), 0, std::sin(ph)}));
        }
    CHECK(err <= 1e-12);

    std::mt19937_64 rng(61);
    ComplexField A = random_complex(slow, 4, rng);
    double t = 0.0;
    QuaternionField l1 = build_lambda1(A, P, t, fast);
    err = 0;
    for (int i = 0; i < fast.na; ++i)
        for (int j = 0; j < fast.nb; ++j) {
            cplx v = A(i, j) * std::exp(cplx(0, P.k * fast.alpha(i) + P.omega * t));
            err = std::max(err, std::abs(l1(i, j).q3 - v.imag()) + std::abs(l1(i, j).q1 - v.real()));
        }
    CHECK(err <= 1e-12);
    CHECK(max_component(l1, 0) <= 1e-14);
    CHECK(max_component(l1, 2) <= 1e-14);
}

TEST_CASE("second-order correctors") {
    Order2 z = build_order2(ComplexField(slow), ComplexField(slow), P, 0, fast);
    CHECK(max_abs(z.z2) == 0);
    CHECK(max_abs(z.lambda2) == 0);

    double a0 = 0.6;
    Order2 c = build_order2(constant(a0), ComplexField(slow), P, 0.3, fast);
    double expect = 0.5 * P.k * a0 * a0, err = 0;
    for (std::size_t n = 0; n < c.z2.size(); ++n) {
        err = std::max(err, qdiff(c.z2.data[n], Quaternion(expect)));
        err = std::max(err, qdiff(c.lambda2.data[n], {0, 0, 0, expect}));
    }
    CHECK(err <= 1e-12);

    std::mt19937_64 rng(67);
    Order2 r = build_order2(random_complex(slow, 4, rng), random_complex(slow, 4, rng), P, 0.3, fast);
    err = 0;
    for (std::size_t n = 0; n < r.z2.size(); ++n) err = std::max(err, std::abs(r.lambda2.data[n].q3 - r.z2.data[n].q0));
    CHECK(err <= 1e-12);
    CHECK(max_component(r.lambda2, 0) <= 1e-12);
}

TEST_CASE("third-order surface") {
    CHECK(max_abs(build_lambda3(ComplexField(slow), ComplexField(slow), P, 0, fast)) == 0);

    std::mt19937_64 rng(71);
    ComplexField A = random_complex(slow, 4, rng), B = random_complex(slow, 4, rng);
    QuaternionField l3 = build_lambda3(A, B, P, 0.2, fast);
    CHECK(max_component(l3, 0) <= 1e-11 * max_abs(l3));
    QuaternionField printed = build_lambda3(A, B, P, 0.2, fast, nullptr, Lambda3Form::Printed);
    CHECK(max_component(printed, 0) > 1e-3 * max_abs(printed));

    // A real constant, B = 0: only the i-coefficient of the cubic carrier term survives (the k part is z^(3) = M^(3) = 0)
    double a0 = 0.5, s = -0.5 * P.k * P.k * a0 * a0 * a0, err = 0;
    QuaternionField c3 = build_lambda3(constant(a0), ComplexField(slow), P, 0, fast);
    for (int i = 0; i < fast.na; ++i)
        for (int j = 0; j < fast.nb; ++j) {
            Quaternion expect{0, s * std::cos(P.k * fast.alpha(i)), 0, 0};
            err = std::max(err, qdiff(c3(i, j), expect));
        }
    CHECK(err <= 1e-12);
}

TEST_CASE("b and A corrections") {
    CHECK(max_abs(build_b_tilde(ComplexField(slow), P, 0, fast)) == 0);
    QuaternionField At = build_A_tilde(P, fast);
    for (const auto& q : At.data) CHECK(qdiff(q, Quaternion::one()) == 0);

    QuaternionField b = build_b_tilde(constant(1.0), P, 0, fast);
    double err = 0;
    for (const auto& q : b.data) err = std::max(err, qdiff(q, {0, -P.eps * P.eps, 0, 0}));
    CHECK(err <= 1e-14);

    std::mt19937_64 rng(73);
    QuaternionField r = build_b_tilde(random_complex(slow, 4, rng), P, 0, fast);
    CHECK(max_component(r, 0) <= 1e-15 * max_abs(r));
    CHECK(max_component(r, 3) <= 1e-15 * max_abs(r));
}

TEST_CASE("assembled approximate solution") {
    std::mt19937_64 rng(79);
    ApproximateSolution s = build_approximate_solution(random_complex(slow, 4, rng), random_complex(slow, 4, rng), P, 0.1, fast);
    REQUIRE(s.lambda_orders.size() == 3);
    for (int j = 0; j < 3; ++j) CHECK(max_component(s.lambda_orders[j], 0) <= 1e-11 * max_abs(s.lambda_orders[j]));
    double err = 0;
    for (std::size_t n = 0; n < fast.size(); ++n) err = std::max(err, std::abs(s.z_orders[0].data[n].q0 - s.lambda_orders[0].data[n].q3));
    CHECK(err <= 1e-15);
    QuaternionField lt = s.lambda_tilde();
    QuaternionField manual = P.eps * s.lambda_orders[0] + (P.eps * P.eps) * s.lambda_orders[1] +
                             (P.eps * P.eps * P.eps) * s.lambda_orders[2];
    CHECK(max_abs_diff(lt, manual) <= 1e-15);
}

TEST_CASE("total order and phase") {
    CHECK(term_order(parse_signature("A")) == 1);
    CHECK(term_phase(parse_signature("A")) == 1);
    CHECK(term_order(parse_signature("dX Abar A")) == 3);
    CHECK(term_phase(parse_signature("dX Abar A")) == 0);
    CHECK(term_order(parse_signature("R1 Bbar dT")) == 4);
    CHECK(term_phase(parse_signature("R1 Bbar dT")) == -1);
    TermSignature s = parse_signature("A dY"), t = parse_signature("Bbar R2");
    TermSignature st = s;
    st.factors.insert(st.factors.end(), t.factors.begin(), t.factors.end());
    CHECK(term_order(st) == term_order(s) + term_order(t));
    CHECK(term_phase(st) == term_phase(s) + term_phase(t));
    CHECK_THROWS(parse_signature("A C"));
    CHECK_FALSE(parse_gen("dZ").has_value());
}

TEST_CASE("term ledger") {
    std::vector<LedgerEntry> entries = builtin_ledger();
    CHECK(ledger_check(entries).ok());
    CHECK(ledger_check({{"lambda1", parse_signature("A"), 1, 1}}).ok());

    Grid sg = Grid::square(32, 8 * M_PI);
    ms::Context ctx = ms::Context::make(sg, P, 3);
    std::mt19937_64 rng(83);
    ms::Jet A{{random_complex(sg, 3, rng)}}, B{{random_complex(sg, 3, rng)}};
    auto built = builtin_terms(ctx, A, B);
    LedgerReport r = ledger_check(entries, built);
    CHECK(r.ok());
    CHECK(r.checked >= int(entries.size()));

    auto bad = entries;
    bad[0].phase += 1;
    LedgerReport rb = ledger_check(bad, built);
    CHECK_FALSE(rb.ok());
    bool named = false;
    for (const auto& v : rb.violations) named |= v.find(bad[0].name) != std::string::npos;
    CHECK(named);

    auto wrong_power = entries;
    wrong_power.back().eps_power = 3;
    CHECK_FALSE(ledger_check(wrong_power).ok());

    auto missing = entries;
    missing.pop_back();
    CHECK_THROWS(ledger_check(missing, built));
}
