#pragma once

namespace ghzpump {

/// Real branches of the Lambert W function, W(z) e^{W(z)} = z.
/// branch 0:  z >= -1/e, returns W >= -1.
/// branch -1: -1/e <= z < 0, returns W <= -1.
/// Halley iteration from branch-appropriate seeds; residual
/// |W e^W - z| <= 1e-12 max(1, |z|). Throws std::domain_error outside the
/// branch domain.
double lambert_w(int branch, double z);

}  // namespace ghzpump
