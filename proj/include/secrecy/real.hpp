#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace secrecy {

// Working precision of the closed-form engine. The SOP/ESR closed forms are
// alternating sums whose O(1) terms cancel down to values as small as 1e-25
// at high destination SNR, so 50 significant digits are carried throughout.
using Real = boost::multiprecision::mpfr_float_50;

inline double to_double(const Real& v) { return v.convert_to<double>(); }

}  // namespace secrecy
