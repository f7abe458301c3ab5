#pragma once

#include <atomic>

namespace spectra {

// Global working precision for enclosures, in bits. Read-only after startup
// except through set_precision_bits(); comparison code may locally exceed it
// when refining a sign.
inline std::atomic<unsigned>& precision_bits_ref() {
    static std::atomic<unsigned> bits{128};
    return bits;
}

inline unsigned precision_bits() { return precision_bits_ref().load(std::memory_order_relaxed); }

inline void set_precision_bits(unsigned bits) {
    if (bits < 16) bits = 16;
    if (bits > 1u << 20) bits = 1u << 20;
    precision_bits_ref().store(bits, std::memory_order_relaxed);
}

}  // namespace spectra
