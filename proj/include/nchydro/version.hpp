#pragma once

namespace nchydro {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nchydro
