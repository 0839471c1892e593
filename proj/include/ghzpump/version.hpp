#pragma once

namespace ghzpump {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ghzpump
