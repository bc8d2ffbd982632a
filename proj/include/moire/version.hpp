#pragma once

#define MOIRE_VERSION "1.0.0"

namespace moire {
inline const char* version() { return MOIRE_VERSION; }
}
