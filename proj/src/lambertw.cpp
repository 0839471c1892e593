#include "ghzpump/lambertw.hpp"

#include <cmath>
#include <stdexcept>

namespace ghzpump {

namespace {

double halley(double z, double w) {
    for (int it = 0; it < 50; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        if (std::abs(f) <= 1e-13 * std::max(1.0, std::abs(z))) break;
        const double wp1 = w + 1.0;
        const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        const double step = f / denom;
        w -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(w))) break;
    }
    return w;
}

double seed_w0(double z) {
    if (z > 1.0) {
        const double l = std::log(z);
        const double ll = std::log(l);
        return l - ll + ll / l;
    }
    if (z < -0.25) {
        // expansion around the branch point z = -1/e
        const double s = std::sqrt(2.0 * (1.0 + std::exp(1.0) * z));
        return -1.0 + s - s * s / 3.0;
    }
    // series around 0
    return z * (1.0 + z * (-1.0 + z * 1.5));
}

double seed_wm1(double z) {
    if (z > -0.1) {
        const double l1 = std::log(-z);
        const double l2 = std::log(-l1);
        return l1 - l2 + l2 / l1;
    }
    const double s = std::sqrt(2.0 * (1.0 + std::exp(1.0) * z));
    return -1.0 - s - s * s / 3.0;
}

}  // namespace

double lambert_w(int branch, double z) {
    const double min_z = -std::exp(-1.0);
    if (branch == 0) {
        if (z < min_z) throw std::domain_error("lambert_w: branch 0 requires z >= -1/e");
        if (z == 0.0) return 0.0;
        if (z == min_z) return -1.0;
        double w = halley(z, seed_w0(z));
        return w < -1.0 ? -1.0 : w;
    }
    if (branch == -1) {
        if (z < min_z || z >= 0.0)
            throw std::domain_error("lambert_w: branch -1 requires -1/e <= z < 0");
        if (z == min_z) return -1.0;
        double w = halley(z, seed_wm1(z));
        return w > -1.0 ? -1.0 : w;
    }
    throw std::domain_error("lambert_w: branch must be 0 or -1");
}

}  // namespace ghzpump
