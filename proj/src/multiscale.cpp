#include "wpk/multiscale.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "wpk/fft.hpp"

namespace wpk::ms {

namespace {

const cplx I(0, 1);

using Vec = std::vector<cplx>;

Vec fwd(const cplx* p, const Grid& g) {
    Vec c(g.size());
    fft2(p, c.data(), g.na, g.nb, -1);
    double s = 1.0 / double(g.size());
    for (auto& z : c) z *= s;
    return c;
}

void inv_into(Vec& c, cplx* out, const Grid& g) { fft2(c.data(), out, g.na, g.nb, +1); }

bool all_zero(const cplx* p, std::size_t n) {
    for (std::size_t m = 0; m < n; ++m)
        if (p[m] != cplx(0)) return false;
    return true;
}

Block zero_block(std::size_t n, int levels) { return {Vec(n * levels), Vec(n * levels)}; }

Block truncate(const Block& b, std::size_t n, int levels) {
    return {Vec(b.a.begin(), b.a.begin() + n * levels), Vec(b.b.begin(), b.b.begin() + n * levels)};
}

void prune(Field& f) {
    std::size_t n = f.ctx->n() * f.levels;
    for (auto it = f.terms.begin(); it != f.terms.end();) {
        if (all_zero(it->second.a.data(), n) && all_zero(it->second.b.data(), n))
            it = f.terms.erase(it);
        else
            ++it;
    }
}

const Context* ctx_of(const Field& x, const Field& y) {
    if (x.ctx && y.ctx && x.ctx != y.ctx) throw std::invalid_argument("multiscale fields from different contexts");
    return x.ctx ? x.ctx : y.ctx;
}

// apply a per-block map (a, b) -> (a', b') with label change, level by level
template <class F>
Field map_blocks(const Field& x, F&& fn) {
    Field out(*x.ctx, x.levels);
    std::size_t n = x.ctx->n();
    for (const auto& [key, blk] : x.terms) {
        int newlabel = key.second;
        Block nb = zero_block(n, x.levels);
        for (std::size_t m = 0; m < n * x.levels; ++m) fn(blk.a[m], blk.b[m], nb.a[m], nb.b[m], newlabel, key.second);
        Block& dst = out.block(key.first, newlabel);
        for (std::size_t m = 0; m < n * x.levels; ++m) {
            dst.a[m] += nb.a[m];
            dst.b[m] += nb.b[m];
        }
    }
    return out;
}

// slow multiplier applied to every level of a block; result added into dst scaled by s
template <class Sym>
void add_symbol(const Context& c, const Block& src, int levels, Block& dst, Sym&& sym, cplx s = 1.0) {
    std::size_t n = c.n();
    const Grid& g = c.slow;
    for (int l = 0; l < levels; ++l)
        for (int part = 0; part < 2; ++part) {
            const cplx* p = (part == 0 ? src.a.data() : src.b.data()) + l * n;
            if (all_zero(p, n)) continue;
            Vec h = fwd(p, g);
            for (std::size_t m = 0; m < n; ++m) h[m] *= s * sym(c.ex[m], c.ey[m]);
            Vec out(n);
            inv_into(h, out.data(), g);
            cplx* d = (part == 0 ? dst.a.data() : dst.b.data()) + l * n;
            for (std::size_t m = 0; m < n; ++m) d[m] += out[m];
        }
}

}  // namespace

Context Context::make(const Grid& slow, const PacketParams& p, int max_order) {
    Context c;
    c.slow = slow;
    c.k = p.k;
    c.omega = p.omega;
    c.omega_p = p.omega_p;
    c.max_order = max_order;
    c.ex.resize(slow.size());
    c.ey.resize(slow.size());
    for (int i = 0; i < slow.na; ++i)
        for (int j = 0; j < slow.nb; ++j) {
            c.ex[slow.idx(i, j)] = slow.xi1_odd(i);
            c.ey[slow.idx(i, j)] = slow.xi2_odd(j);
        }
    return c;
}

Block& Field::block(int order, int label) {
    auto it = terms.find({order, label});
    if (it == terms.end()) it = terms.emplace(std::make_pair(order, label), zero_block(ctx->n(), levels)).first;
    return it->second;
}

Jet jet_const(const Grid& g, int levels, cplx value) {
    Jet j;
    for (int l = 0; l < levels; ++l) {
        ComplexField f(g);
        if (l == 0) std::fill(f.v.begin(), f.v.end(), value);
        j.d.push_back(std::move(f));
    }
    return j;
}

Jet jet_conj(const Jet& j) {
    Jet out = j;
    for (auto& f : out.d)
        for (auto& z : f.v) z = std::conj(z);
    return out;
}

Jet hnls_jet(const ComplexField& A, const HnlsCoefficients& c, int levels) {
    Jet j;
    j.d.push_back(A);
    if (levels > 1) j.d.push_back(hnls_rhs(A, c));
    if (levels > 2) j.d.push_back(hnls_rhs_dot(A, j.d[1], c));
    return j;
}

Field term(const Context& c, int order, int label, const Jet& a, const Jet& b) {
    int levels = 3;
    if (!a.d.empty()) levels = std::min<int>(levels, a.d.size());
    if (!b.d.empty()) levels = std::min<int>(levels, b.d.size());
    Field f(c, levels);
    if (order > c.max_order || (a.d.empty() && b.d.empty())) return f;
    Block& blk = f.block(order, label);
    std::size_t n = c.n();
    for (int l = 0; l < levels; ++l) {
        if (!a.d.empty()) std::copy(a.d[l].v.begin(), a.d[l].v.end(), blk.a.begin() + l * n);
        if (!b.d.empty()) std::copy(b.d[l].v.begin(), b.d[l].v.end(), blk.b.begin() + l * n);
    }
    prune(f);
    return f;
}

Field term_a(const Context& c, int order, int label, const Jet& a) { return term(c, order, label, a, Jet{}); }

Field operator+(const Field& x, const Field& y) {
    const Context* c = ctx_of(x, y);
    if (!c) return x;
    int levels = std::min(x.levels, y.levels);
    Field out(*c, levels);
    std::size_t n = c->n() * levels;
    for (const Field* f : {&x, &y})
        for (const auto& [key, blk] : f->terms) {
            Block& dst = out.block(key.first, key.second);
            for (std::size_t m = 0; m < n; ++m) {
                dst.a[m] += blk.a[m];
                dst.b[m] += blk.b[m];
            }
        }
    prune(out);
    return out;
}

Field operator-(const Field& x) { return -1.0 * x; }
Field operator-(const Field& x, const Field& y) { return x + (-y); }

Field operator*(double s, const Field& x) { return lscale(cplx(s), x); }

Field lscale(cplx s, const Field& x) {
    if (!x.ctx) return x;
    Field out = x;
    for (auto& [key, blk] : out.terms) {
        for (auto& z : blk.a) z *= s;
        for (auto& z : blk.b) z *= s;
    }
    prune(out);
    return out;
}

Field mul(const Field& x, const Field& y) {
    const Context* c = ctx_of(x, y);
    if (!c) return x;
    int L = std::min(x.levels, y.levels);
    Field out(*c, L);
    std::size_t n = c->n();
    // accumulate f*g with Leibniz in T over L levels
    auto leib = [&](const cplx* f, const cplx* g, bool conj_g, cplx* dst, double sign) {
        auto G = [&](int l, std::size_t m) { return conj_g ? std::conj(g[l * n + m]) : g[l * n + m]; };
        for (std::size_t m = 0; m < n; ++m) dst[m] += sign * f[m] * G(0, m);
        if (L > 1)
            for (std::size_t m = 0; m < n; ++m) dst[n + m] += sign * (f[n + m] * G(0, m) + f[m] * G(1, m));
        if (L > 2)
            for (std::size_t m = 0; m < n; ++m)
                dst[2 * n + m] += sign * (f[2 * n + m] * G(0, m) + 2.0 * f[n + m] * G(1, m) + f[m] * G(2, m));
    };
    for (const auto& [kx, bx] : x.terms) {
        bool xa = !all_zero(bx.a.data(), n * L), xb = !all_zero(bx.b.data(), n * L);
        for (const auto& [ky, by] : y.terms) {
            int o = kx.first + ky.first;
            if (o > c->max_order) continue;
            bool ya = !all_zero(by.a.data(), n * L), yb = !all_zero(by.b.data(), n * L);
            int p = kx.second + ky.second, q = kx.second - ky.second;
            if (xa && ya) leib(bx.a.data(), by.a.data(), false, out.block(o, p).a.data(), 1.0);
            if (xb && yb) leib(bx.b.data(), by.b.data(), true, out.block(o, q).a.data(), -1.0);
            if (xa && yb) leib(bx.a.data(), by.b.data(), false, out.block(o, p).b.data(), 1.0);
            if (xb && ya) leib(bx.b.data(), by.a.data(), true, out.block(o, q).b.data(), 1.0);
        }
    }
    prune(out);
    return out;
}

Field lmul_i(const Field& x) {
    return map_blocks(x, [](cplx a, cplx b, cplx& na, cplx& nb, int& lab, int l) {
        na = -std::conj(b);
        nb = std::conj(a);
        lab = -l;
    });
}
Field lmul_j(const Field& x) { return lscale(I, x); }
Field lmul_k(const Field& x) {
    return map_blocks(x, [](cplx a, cplx b, cplx& na, cplx& nb, int& lab, int l) {
        na = I * std::conj(b);
        nb = -I * std::conj(a);
        lab = -l;
    });
}
Field rmul_i(const Field& x) {
    return map_blocks(x, [](cplx a, cplx b, cplx& na, cplx& nb, int&, int) {
        na = -b;
        nb = a;
    });
}
Field rmul_j(const Field& x) {
    return map_blocks(x, [](cplx a, cplx b, cplx& na, cplx& nb, int&, int) {
        na = I * a;
        nb = -I * b;
    });
}
Field rmul_k(const Field& x) {
    return map_blocks(x, [](cplx a, cplx b, cplx& na, cplx& nb, int&, int) {
        na = -I * b;
        nb = -I * a;
    });
}
Field dagger(const Field& x) { return lmul_k(rmul_k(x)); }

Field part(const Field& x, int c) {
    if (c < 0 || c > 3) throw std::invalid_argument("part: component must be 0..3");
    if (!x.ctx) return x;
    Field out(*x.ctx, x.levels);
    std::size_t n = x.ctx->n() * x.levels;
    bool use_b = (c == 1 || c == 3);
    double sg = (c == 0 || c == 1) ? 1.0 : -1.0;
    for (const auto& [key, blk] : x.terms) {
        const Vec& src = use_b ? blk.b : blk.a;
        Block& d1 = out.block(key.first, key.second);
        Block& d2 = out.block(key.first, -key.second);
        Vec& t1 = use_b ? d1.b : d1.a;
        for (std::size_t m = 0; m < n; ++m) t1[m] += 0.5 * src[m];
        Vec& t2 = use_b ? d2.b : d2.a;
        for (std::size_t m = 0; m < n; ++m) t2[m] += sg * 0.5 * std::conj(src[m]);
    }
    prune(out);
    return out;
}

Field d_alpha0(const Field& x) {
    double k = x.ctx ? x.ctx->k : 0.0;
    return map_blocks(x, [k](cplx a, cplx b, cplx& na, cplx& nb, int&, int l) {
        na = I * (l * k) * a;
        nb = I * (l * k) * b;
    });
}

Field d_t0(const Field& x) {
    double w = x.ctx ? x.ctx->omega : 0.0;
    return map_blocks(x, [w](cplx a, cplx b, cplx& na, cplx& nb, int&, int l) {
        na = I * (l * w) * a;
        nb = I * (l * w) * b;
    });
}

namespace {

Field slow_symbol(const Field& x, int shift, std::function<cplx(double, double)> sym) {
    Field out(*x.ctx, x.levels);
    for (const auto& [key, blk] : x.terms) {
        int o = key.first + shift;
        if (o > x.ctx->max_order) continue;
        add_symbol(*x.ctx, blk, x.levels, out.block(o, key.second), sym);
    }
    prune(out);
    return out;
}

Field d_T_shifted(const Field& x) {
    Field out(*x.ctx, std::max(x.levels - 1, 1));
    std::size_t n = x.ctx->n();
    for (const auto& [key, blk] : x.terms) {
        int o = key.first + 2;
        if (o > x.ctx->max_order) continue;
        if (x.levels < 2) throw std::logic_error("d_t: slow-time derivative requested beyond the stored jet depth");
        Block b = zero_block(n, out.levels);
        for (int l = 0; l < out.levels && l + 1 < x.levels; ++l) {
            std::copy(blk.a.begin() + (l + 1) * n, blk.a.begin() + (l + 2) * n, b.a.begin() + l * n);
            std::copy(blk.b.begin() + (l + 1) * n, blk.b.begin() + (l + 2) * n, b.b.begin() + l * n);
        }
        out.terms[{o, key.second}] = std::move(b);
    }
    prune(out);
    return out;
}

}  // namespace

Field shift_order(const Field& x, int shift) {
    if (!x.ctx) return x;
    Field out(*x.ctx, x.levels);
    for (const auto& [key, blk] : x.terms)
        if (key.first + shift <= x.ctx->max_order && key.first + shift >= 0) out.terms[{key.first + shift, key.second}] = blk;
    return out;
}

Field shift_label(const Field& x, int n) {
    if (!x.ctx) return x;
    Field out(*x.ctx, x.levels);
    for (const auto& [key, blk] : x.terms) out.terms[{key.first, key.second + n}] = blk;
    return out;
}

Field d_X(const Field& x) {
    if (!x.ctx) return x;
    return slow_symbol(x, 0, [](double x1, double) { return cplx(0, x1); });
}
Field d_Y(const Field& x) {
    if (!x.ctx) return x;
    return slow_symbol(x, 0, [](double, double x2) { return cplx(0, x2); });
}

Field d_alpha(const Field& x) {
    if (!x.ctx) return x;
    return d_alpha0(x) + shift_order(d_X(x), 1);
}
Field d_beta(const Field& x) {
    if (!x.ctx) return x;
    return shift_order(d_Y(x), 1);
}
Field d_t(const Field& x) {
    if (!x.ctx) return x;
    Field out = d_t0(x) + x.ctx->omega_p * shift_order(d_X(x), 1);
    return out + d_T_shifted(x);
}

Field hilbert0(const Field& x, int only) {
    if (!x.ctx) return x;
    const Context& c = *x.ctx;
    const Grid& g = c.slow;
    std::size_t n = c.n();
    int L = x.levels;
    std::map<std::pair<int, int>, Block> acc;  // spectral accumulators
    auto get = [&](int o, int lab) -> Block& {
        auto it = acc.find({o, lab});
        if (it == acc.end()) it = acc.emplace(std::make_pair(o, lab), zero_block(n, L)).first;
        return it->second;
    };
    std::vector<std::size_t> neg(n);
    for (int i = 0; i < g.na; ++i)
        for (int j = 0; j < g.nb; ++j) neg[g.idx(i, j)] = g.idx(g.neg_a(i), g.neg_b(j));

    for (const auto& [key, blk] : x.terms) {
        int o = key.first, lab = key.second;
        for (int l = 0; l < L; ++l) {
            Vec U = fwd(blk.a.data() + l * n, g), V = fwd(blk.b.data() + l * n, g);
            // spectrum of k G (label -lab): U_f = i conj(V(-eta)), V_f = -i conj(U(-eta))
            Vec Uf(n), Vf(n);
            for (std::size_t m = 0; m < n; ++m) {
                Uf[m] = I * std::conj(V[neg[m]]);
                Vf[m] = -I * std::conj(U[neg[m]]);
            }
            if (lab == 0) {
                if (only > 0) continue;
                Block& d = get(o, 0);
                for (std::size_t m = 0; m < n; ++m) {
                    double r = std::hypot(c.ex[m], c.ey[m]);
                    double sp = r == 0 ? 0 : -c.ex[m] / r, sk = r == 0 ? 0 : c.ey[m] / r;
                    d.a[l * n + m] += sp * U[m] + sk * Uf[m];
                    d.b[l * n + m] += sp * V[m] + sk * Vf[m];
                }
                continue;
            }
            double car = lab * c.k, s = car > 0 ? 1.0 : -1.0, K = std::abs(car);
            for (int jo = 0; jo <= 3; ++jo) {
                if (o + jo > c.max_order || (only >= 0 && only != jo)) continue;
                Block& d1 = get(o + jo, lab);
                Block& d2 = get(o + jo, -lab);
                for (std::size_t m = 0; m < n; ++m) {
                    double X = c.ex[m], Y = c.ey[m];
                    double t1 = 0, t2 = 0;
                    switch (jo) {
                        case 0: t1 = -s; break;
                        case 1: t2 = Y / K; break;
                        case 2: t1 = s * Y * Y / (2 * K * K); t2 = s * X * Y / (K * K); break;  // flipped carrier sign -s
                        case 3:
                            t1 = -X * Y * Y / (K * K * K);
                            t2 = X * X * Y / (K * K * K) - Y * Y * Y / (2 * K * K * K);
                            break;
                    }
                    d1.a[l * n + m] += t1 * U[m];
                    d1.b[l * n + m] += t1 * V[m];
                    d2.a[l * n + m] += t2 * Uf[m];
                    d2.b[l * n + m] += t2 * Vf[m];
                }
            }
        }
    }
    Field out(c, L);
    for (auto& [key, blk] : acc) {
        Block b = zero_block(n, L);
        for (int l = 0; l < L; ++l) {
            Vec ha(blk.a.begin() + l * n, blk.a.begin() + (l + 1) * n);
            Vec hb(blk.b.begin() + l * n, blk.b.begin() + (l + 1) * n);
            inv_into(ha, b.a.data() + l * n, g);
            inv_into(hb, b.b.data() + l * n, g);
        }
        out.terms[key] = std::move(b);
    }
    prune(out);
    return out;
}

Field abs_d_slow(const Field& x) {
    if (!x.ctx) return x;
    for (const auto& [key, blk] : x.terms)
        if (key.second != 0) throw std::invalid_argument("abs_d_slow: only label-0 terms are supported");
    const Grid& g = x.ctx->slow;
    Field out(*x.ctx, x.levels);
    std::size_t n = x.ctx->n();
    for (const auto& [key, blk] : x.terms) {
        int o = key.first + 1;
        if (o > x.ctx->max_order) continue;
        Block& d = out.block(o, 0);
        for (int l = 0; l < x.levels; ++l)
            for (int part = 0; part < 2; ++part) {
                const cplx* p = (part == 0 ? blk.a.data() : blk.b.data()) + l * n;
                Vec h = fwd(p, g);
                for (int i = 0; i < g.na; ++i)
                    for (int j = 0; j < g.nb; ++j) h[g.idx(i, j)] *= std::hypot(g.xi1(i), g.xi2(j));
                inv_into(h, (part == 0 ? d.a.data() : d.b.data()) + l * n, g);
            }
    }
    prune(out);
    return out;
}

Field order_part(const Field& x, int order) {
    Field out = x;
    for (auto it = out.terms.begin(); it != out.terms.end();) it = it->first.first == order ? std::next(it) : out.terms.erase(it);
    return out;
}

Field drop_orders_above(const Field& x, int order) {
    Field out = x;
    for (auto it = out.terms.begin(); it != out.terms.end();) it = it->first.first <= order ? std::next(it) : out.terms.erase(it);
    return out;
}

Field label_part(const Field& x, int label) {
    Field out = x;
    for (auto it = out.terms.begin(); it != out.terms.end();) it = it->first.second == label ? std::next(it) : out.terms.erase(it);
    return out;
}

Field with_levels(const Field& x, int levels) {
    if (!x.ctx || levels >= x.levels) return x;
    Field out(*x.ctx, levels);
    for (const auto& [key, blk] : x.terms) out.terms[key] = truncate(blk, x.ctx->n(), levels);
    return out;
}

double slow_norm(const Field& x, int order) {
    if (!x.ctx) return 0.0;
    double s = 0.0;
    std::size_t n = x.ctx->n();
    for (const auto& [key, blk] : x.terms) {
        if (order >= 0 && key.first != order) continue;
        for (std::size_t m = 0; m < n; ++m) s += std::norm(blk.a[m]) + std::norm(blk.b[m]);
    }
    return std::sqrt(s * x.ctx->slow.cell());
}

double max_abs(const Field& x) {
    if (!x.ctx) return 0.0;
    double s = 0.0;
    std::size_t n = x.ctx->n();
    for (const auto& [key, blk] : x.terms)
        for (std::size_t m = 0; m < n; ++m) s = std::max(s, std::hypot(std::abs(blk.a[m]), std::abs(blk.b[m])));
    return s;
}

namespace {

int carrier_index(double k, double l_fast) {
    double K0 = k * l_fast / kTwoPi;
    long r = std::lround(K0);
    if (std::abs(K0 - double(r)) > 1e-9 * std::max(1.0, std::abs(K0)))
        throw std::invalid_argument(fmt::format("carrier k = {} is not a frequency of the fast grid (k L / 2pi = {})", k, K0));
    return int(r);
}

void check_commensurable(const Grid& slow, const Grid& fast, double eps) {
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); };
    if (!close(fast.la * eps, slow.la) || !close(fast.lb * eps, slow.lb))
        throw std::invalid_argument(fmt::format("eps = {} is not commensurable: eps * L_fast = ({}, {}) but L_slow = ({}, {})", eps,
                                                fast.la * eps, fast.lb * eps, slow.la, slow.lb));
}

QuaternionField realize_impl(const Field& x, double eps, const Grid& fast, int only_order, double t) {
    QuaternionField out(fast);
    if (!x.ctx) return out;
    const Context& c = *x.ctx;
    const Grid& g = c.slow;
    check_commensurable(g, fast, eps);
    bool modulated = false;
    for (const auto& [key, blk] : x.terms) modulated = modulated || key.second != 0;
    int K0 = modulated ? carrier_index(c.k, fast.la) : 0;
    Vec U(fast.size()), V(fast.size());
    for (const auto& [key, blk] : x.terms) {
        if (only_order >= 0 && key.first != only_order) continue;
        double w = only_order >= 0 ? 1.0 : std::pow(eps, key.first);
        Vec ha = fwd(blk.a.data(), g), hb = fwd(blk.b.data(), g);
        if (t != 0.0) {
            // carrier phase e^{n j omega t} and the moving frame X = eps (alpha + omega' t)
            for (int i = 0; i < g.na; ++i)
                for (int j = 0; j < g.nb; ++j) {
                    cplx ph = std::exp(I * (key.second * c.omega * t + g.xi1(i) * eps * c.omega_p * t));
                    ha[g.idx(i, j)] *= ph;
                    hb[g.idx(i, j)] *= ph;
                }
        }
        for (int i = 0; i < g.na; ++i) {
            int mi = Grid::mode(i, g.na) + key.second * K0;
            if (mi < -fast.na / 2 || mi >= fast.na / 2) continue;
            int fi = mi < 0 ? mi + fast.na : mi;
            for (int j = 0; j < g.nb; ++j) {
                int mj = Grid::mode(j, g.nb);
                if (mj < -fast.nb / 2 || mj >= fast.nb / 2) continue;
                int fj = mj < 0 ? mj + fast.nb : mj;
                U[fast.idx(fi, fj)] += w * ha[g.idx(i, j)];
                V[fast.idx(fi, fj)] += w * hb[g.idx(i, j)];
            }
        }
    }
    Vec fa(fast.size()), fb(fast.size());
    inv_into(U, fa.data(), fast);
    inv_into(V, fb.data(), fast);
    for (std::size_t m = 0; m < fast.size(); ++m) out.data[m] = from_pair(fa[m], fb[m]);
    return out;
}

}  // namespace

QuaternionField realize(const Field& x, double eps, const Grid& fast, double t) { return realize_impl(x, eps, fast, -1, t); }

QuaternionField realize_order(const Field& x, int order, double eps, const Grid& fast, double t) {
    return realize_impl(x, eps, fast, order, t);
}

Grid fast_grid_for(const Field& x, double eps, int min_na) {
    const Context& c = *x.ctx;
    double la = c.slow.la / eps, lb = c.slow.lb / eps;
    int K0 = carrier_index(c.k, la);
    int maxlab = 0;
    for (const auto& [key, blk] : x.terms) maxlab = std::max(maxlab, std::abs(key.second));
    int need = 2 * (maxlab * K0 + c.slow.na / 2) + 1;
    int na = int(std::bit_ceil(unsigned(std::max(need, min_na))));
    return Grid(na, c.slow.nb, la, lb);
}

std::pair<ComplexField, ComplexField> block_fields(const Field& x, int order, int label) {
    const Grid& g = x.ctx->slow;
    ComplexField a(g), b(g);
    auto it = x.terms.find({order, label});
    if (it != x.terms.end()) {
        std::copy(it->second.a.begin(), it->second.a.begin() + g.size(), a.v.begin());
        std::copy(it->second.b.begin(), it->second.b.begin() + g.size(), b.v.begin());
    }
    return {a, b};
}

}  // namespace wpk::ms
