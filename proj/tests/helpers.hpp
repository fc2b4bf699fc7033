#pragma once

#include <cmath>
#include <random>

#include "wpk/field.hpp"
#include "wpk/spectral.hpp"

namespace wpk::test {

inline Quaternion random_q(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    return {n(rng), n(rng), n(rng), n(rng)};
}

inline QuaternionField random_field(const Grid& g, std::mt19937_64& rng) {
    QuaternionField f(g);
    for (auto& q : f.data) q = random_q(rng);
    return f;
}

// random field whose modes satisfy |mode| <= band in each direction
inline QuaternionField band_limited(const Grid& g, int band, std::mt19937_64& rng) {
    SpectralField s = fft_left(random_field(g, rng));
    for (int i = 0; i < g.na; ++i)
        for (int j = 0; j < g.nb; ++j)
            if (std::abs(Grid::mode(i, g.na)) > band || std::abs(Grid::mode(j, g.nb)) > band) s.at(i, j) = {};
    return inverse(s);
}

inline ComplexField random_complex(const Grid& g, int band, std::mt19937_64& rng) {
    QuaternionField q = band_limited(g, band, rng);
    ComplexField c(g);
    for (std::size_t n = 0; n < g.size(); ++n) c.v[n] = {q.data[n].q0, q.data[n].q2};
    return c;
}

inline ComplexField gaussian(const Grid& g, double width) {
    ComplexField c(g);
    for (int i = 0; i < g.na; ++i)
        for (int j = 0; j < g.nb; ++j) {
            double x = g.alpha(i) - g.la / 2, y = g.beta(j) - g.lb / 2;
            c(i, j) = std::exp(-(x * x + y * y) / (width * width));
        }
    return c;
}

inline double qdiff(const Quaternion& a, const Quaternion& b) { return abs(a - b); }

}  // namespace wpk::test
