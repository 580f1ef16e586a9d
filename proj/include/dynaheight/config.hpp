#pragma once

#include <cstdlib>
#include <string>

namespace dyna {

// Central knobs.  Values are read once per process; the environment override
// DYNAHEIGHT_PRECISION_BITS adjusts the working precision of every certified
// interval in the library.
struct Config {
    static constexpr long kDefaultPrecisionBits = 256;
    static constexpr long kDefaultDegreeCap = 4096;   // composition/iterate degree budget
    static constexpr int kDefaultPeriodCap = 64;      // orbit cycle detection cap
    static constexpr int kFactorDegreeCap = 64;       // rational factorization cap

    static long precision_bits() {
        static long bits = [] {
            if (const char* env = std::getenv("DYNAHEIGHT_PRECISION_BITS")) {
                long v = std::atol(env);
                if (v >= 16 && v <= (1L << 24)) return v;
            }
            return kDefaultPrecisionBits;
        }();
        return bits;
    }
};

} // namespace dyna
