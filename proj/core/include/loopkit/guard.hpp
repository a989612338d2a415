#pragma once

#include <stdexcept>
#include <string>

namespace loopkit {

// Raised when a request would exceed an enumeration or Hilbert-space cap.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Cap in bits. LOOPKIT_MAX_BITS, when set to a positive integer, replaces
// every default cap.
int max_bits(int default_bits);

// Throws GuardError if `bits` exceeds max_bits(default_bits).
void require_bits(int bits, int default_bits, const std::string& what);

} // namespace loopkit
