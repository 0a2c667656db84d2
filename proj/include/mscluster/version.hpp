#pragma once

namespace mscluster {

inline constexpr const char* kVersion = "0.1.0";

} // namespace mscluster
