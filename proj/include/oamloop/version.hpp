#pragma once

namespace oamloop {
inline constexpr const char *version_tag = "oamloop-0.1.0";
}
