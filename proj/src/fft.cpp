#include "wpk/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace wpk {

namespace {

struct PlanCache {
    std::mutex mu;
    std::map<std::tuple<int, int, int>, fftw_plan> plans;
    bool enabled = true;

    ~PlanCache() {
        for (auto& [key, p] : plans) fftw_destroy_plan(p);
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

fftw_plan make_plan(int na, int nb, int sign) {
    std::vector<cplx> scratch(std::size_t(na) * nb);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    return fftw_plan_dft_2d(na, nb, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

}  // namespace

void set_plan_cache(bool enabled) {
    std::lock_guard lock(cache().mu);
    cache().enabled = enabled;
}

void fft2(const cplx* in, cplx* out, int na, int nb, int sign) {
    std::size_t n = std::size_t(na) * nb;
    if (in != out) std::copy(in, in + n, out);
    auto* buf = reinterpret_cast<fftw_complex*>(out);
    PlanCache& c = cache();
    std::lock_guard lock(c.mu);
    if (!c.enabled) {
        fftw_plan p = make_plan(na, nb, sign);
        fftw_execute_dft(p, buf, buf);
        fftw_destroy_plan(p);
        return;
    }
    auto key = std::make_tuple(na, nb, sign);
    auto it = c.plans.find(key);
    if (it == c.plans.end()) it = c.plans.emplace(key, make_plan(na, nb, sign)).first;
    fftw_execute_dft(it->second, buf, buf);
}

std::vector<cplx> coeffs(const ComplexField& f) {
    std::vector<cplx> c(f.v.size());
    fft2(f.v.data(), c.data(), f.grid.na, f.grid.nb, -1);
    double s = 1.0 / double(f.grid.size());
    for (auto& z : c) z *= s;
    return c;
}

ComplexField synth(const Grid& g, std::vector<cplx> c) {
    ComplexField f(g);
    fft2(c.data(), f.v.data(), g.na, g.nb, +1);
    return f;
}

}  // namespace wpk
