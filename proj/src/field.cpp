#include "wpk/field.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace wpk {

bool is_pow2(int n) { return n > 0 && std::has_single_bit(unsigned(n)); }

Grid::Grid(int na_, int nb_, double la_, double lb_) : na(na_), nb(nb_), la(la_), lb(lb_) {
    if (!is_pow2(na) || !is_pow2(nb)) throw std::invalid_argument(fmt::format("grid sizes must be powers of two, got {}x{}", na, nb));
    if (!(la > 0) || !(lb > 0)) throw std::invalid_argument("grid lengths must be positive");
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (a != b) throw std::invalid_argument(fmt::format("{}: grid mismatch ({}x{} vs {}x{})", where, a.na, a.nb, b.na, b.nb));
}

QuaternionField& QuaternionField::operator+=(const QuaternionField& o) {
    require_same_grid(grid, o.grid, "field +");
    for (std::size_t n = 0; n < data.size(); ++n) data[n] += o.data[n];
    return *this;
}
QuaternionField& QuaternionField::operator-=(const QuaternionField& o) {
    require_same_grid(grid, o.grid, "field -");
    for (std::size_t n = 0; n < data.size(); ++n) data[n] -= o.data[n];
    return *this;
}
QuaternionField& QuaternionField::operator*=(double s) {
    for (auto& q : data) q *= s;
    return *this;
}
QuaternionField operator+(QuaternionField a, const QuaternionField& b) { return a += b; }
QuaternionField operator-(QuaternionField a, const QuaternionField& b) { return a -= b; }
QuaternionField operator*(double s, QuaternionField a) { return a *= s; }

QuaternionField mul(const QuaternionField& a, const QuaternionField& b) {
    require_same_grid(a.grid, b.grid, "mul");
    QuaternionField out(a.grid);
    for (std::size_t n = 0; n < a.size(); ++n) out.data[n] = a.data[n] * b.data[n];
    return out;
}
QuaternionField lmul(const Quaternion& c, const QuaternionField& a) {
    QuaternionField out(a.grid);
    for (std::size_t n = 0; n < a.size(); ++n) out.data[n] = c * a.data[n];
    return out;
}
QuaternionField rmul(const QuaternionField& a, const Quaternion& c) {
    QuaternionField out(a.grid);
    for (std::size_t n = 0; n < a.size(); ++n) out.data[n] = a.data[n] * c;
    return out;
}
QuaternionField dagger(const QuaternionField& a) {
    QuaternionField out(a.grid);
    for (std::size_t n = 0; n < a.size(); ++n) out.data[n] = dagger(a.data[n]);
    return out;
}
QuaternionField conj(const QuaternionField& a) {
    QuaternionField out(a.grid);
    for (std::size_t n = 0; n < a.size(); ++n) out.data[n] = conj(a.data[n]);
    return out;
}
QuaternionField component(const QuaternionField& a, int c) {
    QuaternionField out(a.grid);
    for (std::size_t n = 0; n < a.size(); ++n) {
        const Quaternion& q = a.data[n];
        out.data[n].q0 = c == 0 ? q.q0 : c == 1 ? q.q1 : c == 2 ? q.q2 : q.q3;
    }
    return out;
}

double inner(const QuaternionField& a, const QuaternionField& b) {
    require_same_grid(a.grid, b.grid, "inner");
    double s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) s += dot(a.data[n], b.data[n]);
    return s * a.grid.cell();
}
double l2_norm(const QuaternionField& a) { return std::sqrt(inner(a, a)); }
double max_abs(const QuaternionField& a) {
    double m = 0.0;
    for (const auto& q : a.data) m = std::max(m, abs(q));
    return m;
}
double max_abs_diff(const QuaternionField& a, const QuaternionField& b) {
    require_same_grid(a.grid, b.grid, "max_abs_diff");
    double m = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, abs(a.data[n] - b.data[n]));
    return m;
}
double rel_l2_diff(const QuaternionField& a, const QuaternionField& b) {
    double nb = l2_norm(b);
    double d = l2_norm(a - b);
    return nb > 0 ? d / nb : d;
}

QuaternionField to_quaternion(const ComplexField& a) {
    QuaternionField out(a.grid);
    for (std::size_t n = 0; n < a.v.size(); ++n) out.data[n] = Quaternion::from_1j(a.v[n]);
    return out;
}
ComplexField to_complex(const QuaternionField& q) {
    ComplexField out(q.grid);
    for (std::size_t n = 0; n < q.size(); ++n) {
        const Quaternion& x = q.data[n];
        if (x.q1 != 0.0 || x.q3 != 0.0) throw std::invalid_argument("to_complex: field is not 1,j-valued");
        out.v[n] = cplx(x.q0, x.q2);
    }
    return out;
}
double l2_norm(const ComplexField& a) {
    double s = 0.0;
    for (const auto& z : a.v) s += std::norm(z);
    return std::sqrt(s * a.grid.cell());
}
double max_abs(const ComplexField& a) {
    double m = 0.0;
    for (const auto& z : a.v) m = std::max(m, std::abs(z));
    return m;
}

void write_csv(std::ostream& os, const QuaternionField& f) {
    os << "alpha,beta,q0,q1,q2,q3\n";
    for (int i = 0; i < f.grid.na; ++i)
        for (int j = 0; j < f.grid.nb; ++j) {
            const Quaternion& q = f(i, j);
            os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", f.grid.alpha(i), f.grid.beta(j), q.q0, q.q1, q.q2, q.q3);
        }
}

namespace {
void put_le(std::ostream& os, double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, 8);
    unsigned char b[8];
    for (int n = 0; n < 8; ++n) b[n] = static_cast<unsigned char>(u >> (8 * n));
    os.write(reinterpret_cast<const char*>(b), 8);
}
double get_le(std::istream& is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("read_binary: truncated stream");
    std::uint64_t u = 0;
    for (int n = 0; n < 8; ++n) u |= std::uint64_t(b[n]) << (8 * n);
    double x;
    std::memcpy(&x, &u, 8);
    return x;
}
}  // namespace

void write_binary(std::ostream& os, const QuaternionField& f) {
    for (int i = 0; i < f.grid.na; ++i)
        for (int j = 0; j < f.grid.nb; ++j) {
            const Quaternion& q = f(i, j);
            for (double x : {f.grid.alpha(i), f.grid.beta(j), q.q0, q.q1, q.q2, q.q3}) put_le(os, x);
        }
}

QuaternionField read_binary(std::istream& is, const Grid& g) {
    QuaternionField f(g);
    for (int i = 0; i < g.na; ++i)
        for (int j = 0; j < g.nb; ++j) {
            get_le(is);
            get_le(is);
            Quaternion& q = f(i, j);
            q.q0 = get_le(is);
            q.q1 = get_le(is);
            q.q2 = get_le(is);
            q.q3 = get_le(is);
        }
    return f;
}

}  // namespace wpk
