#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "wpk/quaternion.hpp"

namespace wpk {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Periodic grid on [0, la) x [0, lb); row-major, beta fastest.
struct Grid {
    int na = 0, nb = 0;
    double la = 0.0, lb = 0.0;

    Grid() = default;
    Grid(int na_, int nb_, double la_, double lb_);
    static Grid square(int n, double l) { return Grid(n, n, l, l); }

    std::size_t size() const { return std::size_t(na) * std::size_t(nb); }
    std::size_t idx(int i, int j) const { return std::size_t(i) * std::size_t(nb) + std::size_t(j); }
    double da() const { return la / na; }
    double db() const { return lb / nb; }
    double cell() const { return da() * db(); }
    double alpha(int i) const { return da() * i; }
    double beta(int j) const { return db() * j; }

    // signed integer mode number of FFT index i (Nyquist reported as -n/2)
    static int mode(int i, int n) { return i < (n + 1) / 2 ? i : i - n; }
    double xi1(int i) const { return kTwoPi / la * mode(i, na); }
    double xi2(int j) const { return kTwoPi / lb * mode(j, nb); }
    // frequency used by odd symbols: Nyquist mode mapped to zero
    double xi1_odd(int i) const { return (na % 2 == 0 && i == na / 2) ? 0.0 : xi1(i); }
    double xi2_odd(int j) const { return (nb % 2 == 0 && j == nb / 2) ? 0.0 : xi2(j); }
    // index of -xi
    int neg_a(int i) const { return i == 0 ? 0 : na - i; }
    int neg_b(int j) const { return j == 0 ? 0 : nb - j; }

    bool operator==(const Grid& o) const { return na == o.na && nb == o.nb && la == o.la && lb == o.lb; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

bool is_pow2(int n);
void require_same_grid(const Grid& a, const Grid& b, const char* where);

struct QuaternionField {
    Grid grid;
    std::vector<Quaternion> data;

    QuaternionField() = default;
    explicit QuaternionField(const Grid& g) : grid(g), data(g.size()) {}

    Quaternion& operator()(int i, int j) { return data[grid.idx(i, j)]; }
    const Quaternion& operator()(int i, int j) const { return data[grid.idx(i, j)]; }
    std::size_t size() const { return data.size(); }

    QuaternionField& operator+=(const QuaternionField& o);
    QuaternionField& operator-=(const QuaternionField& o);
    QuaternionField& operator*=(double s);
};

QuaternionField operator+(QuaternionField a, const QuaternionField& b);
QuaternionField operator-(QuaternionField a, const QuaternionField& b);
QuaternionField operator*(double s, QuaternionField a);

// pointwise products
QuaternionField mul(const QuaternionField& a, const QuaternionField& b);
QuaternionField lmul(const Quaternion& c, const QuaternionField& a);
QuaternionField rmul(const QuaternionField& a, const Quaternion& c);
QuaternionField dagger(const QuaternionField& a);
QuaternionField conj(const QuaternionField& a);
// single component as a real-valued field embedded in the scalar slot
QuaternionField component(const QuaternionField& a, int c);

// integral of f.g over the domain
double inner(const QuaternionField& a, const QuaternionField& b);
double l2_norm(const QuaternionField& a);
double max_abs(const QuaternionField& a);
double max_abs_diff(const QuaternionField& a, const QuaternionField& b);
double rel_l2_diff(const QuaternionField& a, const QuaternionField& b);

// Complex scalar field: stands for a 1,j-valued function via i <-> j.
struct ComplexField {
    Grid grid;
    std::vector<cplx> v;

    ComplexField() = default;
    explicit ComplexField(const Grid& g) : grid(g), v(g.size()) {}

    cplx& operator()(int i, int j) { return v[grid.idx(i, j)]; }
    const cplx& operator()(int i, int j) const { return v[grid.idx(i, j)]; }
};

QuaternionField to_quaternion(const ComplexField& a);
ComplexField to_complex(const QuaternionField& q);  // throws if q1, q3 nonzero
double l2_norm(const ComplexField& a);
double max_abs(const ComplexField& a);

// (alpha, beta, q0..q3) rows
void write_csv(std::ostream& os, const QuaternionField& f);
void write_binary(std::ostream& os, const QuaternionField& f);
QuaternionField read_binary(std::istream& is, const Grid& g);

}  // namespace wpk
