#pragma once

#include <cmath>
#include <complex>
#include <utility>

namespace wpk {

using cplx = std::complex<double>;

// q0 + q1 i + q2 j + q3 k
struct Quaternion {
    double q0 = 0.0, q1 = 0.0, q2 = 0.0, q3 = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double a, double b, double c, double d) : q0(a), q1(b), q2(c), q3(d) {}
    constexpr explicit Quaternion(double a) : q0(a) {}

    static constexpr Quaternion one() { return {1, 0, 0, 0}; }
    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }

    // 1,j-valued quaternion from a complex number (i of C maps to j)
    static constexpr Quaternion from_1j(cplx z) { return {z.real(), 0, z.imag(), 0}; }

    Quaternion& operator+=(const Quaternion& o) {
        q0 += o.q0; q1 += o.q1; q2 += o.q2; q3 += o.q3;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& o) {
        q0 -= o.q0; q1 -= o.q1; q2 -= o.q2; q3 -= o.q3;
        return *this;
    }
    Quaternion& operator*=(double s) {
        q0 *= s; q1 *= s; q2 *= s; q3 *= s;
        return *this;
    }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return {a.q0 + b.q0, a.q1 + b.q1, a.q2 + b.q2, a.q3 + b.q3}; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return {a.q0 - b.q0, a.q1 - b.q1, a.q2 - b.q2, a.q3 - b.q3}; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.q0, -a.q1, -a.q2, -a.q3}; }
constexpr Quaternion operator*(double s, const Quaternion& a) { return {s * a.q0, s * a.q1, s * a.q2, s * a.q3}; }
constexpr Quaternion operator*(const Quaternion& a, double s) { return s * a; }

// Hamilton product
constexpr Quaternion qmul(const Quaternion& p, const Quaternion& q) {
    return {p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
            p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
            p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
            p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0};
}
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return qmul(p, q); }

constexpr Quaternion conj(const Quaternion& q) { return {q.q0, -q.q1, -q.q2, -q.q3}; }
constexpr double re(const Quaternion& q) { return q.q0; }
constexpr Quaternion vec(const Quaternion& q) { return {0, q.q1, q.q2, q.q3}; }
constexpr double dot(const Quaternion& a, const Quaternion& b) { return a.q0 * b.q0 + a.q1 * b.q1 + a.q2 * b.q2 + a.q3 * b.q3; }
constexpr double norm2(const Quaternion& q) { return dot(q, q); }
inline double abs(const Quaternion& q) { return std::sqrt(norm2(q)); }

// k q k: reflection across the i,j-plane up to sign
constexpr Quaternion dagger(const Quaternion& q) { return qmul(qmul(Quaternion::k(), q), Quaternion::k()); }

inline Quaternion exp_j(double theta) { return {std::cos(theta), 0, std::sin(theta), 0}; }

// (f.(v g), g.(v f)) for vector-valued v; throws if Re v != 0
std::pair<double, double> triple_product_pair(const Quaternion& f, const Quaternion& g, const Quaternion& v);

// cross product of the vector parts
constexpr Quaternion cross(const Quaternion& a, const Quaternion& b) {
    return {0, a.q2 * b.q3 - a.q3 * b.q2, a.q3 * b.q1 - a.q1 * b.q3, a.q1 * b.q2 - a.q2 * b.q1};
}

// Cayley-Dickson pair: q = a + b i with a, b in span{1, j}
constexpr std::pair<cplx, cplx> to_pair(const Quaternion& q) { return {cplx(q.q0, q.q2), cplx(q.q1, -q.q3)}; }
constexpr Quaternion from_pair(cplx a, cplx b) { return {a.real(), b.real(), a.imag(), -b.imag()}; }

}  // namespace wpk
