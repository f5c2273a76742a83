#include "secrecy/specialfn.hpp"

#include <cmath>
#include <limits>

namespace secrecy::specialfn {

double complete_gamma(double z) {
    if (!(z > 0) || !std::isfinite(z)) throw std::domain_error("complete_gamma: argument must be positive and finite");
    if (z == std::floor(z) && z <= 171) {
        double f = 1.0;
        for (int i = 2; i < static_cast<int>(z); ++i) f *= i;
        return f;
    }
    return std::tgamma(z);
}

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        // r == C(n-k+i-1, i-1) here, so r * (n-k+i) is divisible by i.
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace secrecy::specialfn
