#pragma once

namespace akweak {

inline constexpr const char* kVersion = "0.1.0";

}
