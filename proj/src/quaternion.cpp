#include "wpk/quaternion.hpp"

#include <stdexcept>

namespace wpk {

std::pair<double, double> triple_product_pair(const Quaternion& f, const Quaternion& g, const Quaternion& v) {
    if (std::abs(v.q0) > 1e-12) throw std::invalid_argument("triple_product_pair: v must be vector-valued");
    return {dot(f, v * g), dot(g, v * f)};
}

}  // namespace wpk
