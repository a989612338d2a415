#include "loopkit/guard.hpp"

#include <cstdlib>

namespace loopkit {

int max_bits(int default_bits) {
    if (const char* env = std::getenv("LOOPKIT_MAX_BITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 63) return static_cast<int>(v);
    }
    return default_bits;
}

void require_bits(int bits, int default_bits, const std::string& what) {
    const int cap = max_bits(default_bits);
    if (bits > cap) {
        throw GuardError(what + ": needs " + std::to_string(bits) + " bits, cap is " +
                         std::to_string(cap) + " (set LOOPKIT_MAX_BITS to raise it)");
    }
}

} // namespace loopkit
