#pragma once

// Scalar special functions used by the closed-form CDFs and the ESR kernels.
// Everything here is templated on the real type so the same code serves the
// double-precision oracles and the multiprecision closed-form engine.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/constants/constants.hpp>

namespace secrecy::specialfn {

/// A real number stored as sign and natural log of its magnitude.
/// sign == 0 encodes exact zero (log_magnitude is then meaningless).
template <class R = double>
struct SignedLogValue {
    R log_magnitude{0};
    int sign{0};

    static SignedLogValue zero() { return {}; }

    static SignedLogValue from_log(R log_mag, int s) {
        SignedLogValue v;
        v.sign = s > 0 ? 1 : (s < 0 ? -1 : 0);
        if (v.sign != 0) v.log_magnitude = std::move(log_mag);
        return v;
    }

    static SignedLogValue from_value(const R& value) {
        using std::abs;
        using std::log;
        if (value == 0) return zero();
        return from_log(log(abs(value)), value > 0 ? 1 : -1);
    }

    bool is_zero() const { return sign == 0; }

    R value() const {
        using std::exp;
        if (sign == 0) return R(0);
        return sign > 0 ? R(exp(log_magnitude)) : R(-exp(log_magnitude));
    }

    SignedLogValue operator-() const {
        SignedLogValue v = *this;
        v.sign = -v.sign;
        return v;
    }

    friend SignedLogValue operator*(const SignedLogValue& a, const SignedLogValue& b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return from_log(a.log_magnitude + b.log_magnitude, a.sign * b.sign);
    }

    friend SignedLogValue operator/(const SignedLogValue& a, const SignedLogValue& b) {
        if (b.sign == 0) throw std::domain_error("SignedLogValue: division by zero");
        if (a.sign == 0) return zero();
        return from_log(a.log_magnitude - b.log_magnitude, a.sign * b.sign);
    }

    friend SignedLogValue operator+(const SignedLogValue& a, const SignedLogValue& b) {
        using std::exp;
        using std::log;
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        const bool a_big = a.log_magnitude >= b.log_magnitude;
        const SignedLogValue& big = a_big ? a : b;
        const SignedLogValue& small = a_big ? b : a;
        const R ratio = exp(small.log_magnitude - big.log_magnitude);
        if (big.sign == small.sign) return from_log(big.log_magnitude + log(R(1) + ratio), big.sign);
        if (ratio == 1) return zero();
        return from_log(big.log_magnitude + log(R(1) - ratio), big.sign);
    }

    friend SignedLogValue operator-(const SignedLogValue& a, const SignedLogValue& b) { return a + (-b); }

    SignedLogValue& operator*=(const SignedLogValue& o) { return *this = *this * o; }
    SignedLogValue& operator+=(const SignedLogValue& o) { return *this = *this + o; }

    SignedLogValue pow(int e) const {
        if (e == 0) return from_log(R(0), 1);
        if (sign == 0) {
            if (e < 0) throw std::domain_error("SignedLogValue: zero to a negative power");
            return zero();
        }
        const int s = (sign < 0 && (e % 2 != 0)) ? -1 : 1;
        return from_log(log_magnitude * e, s);
    }
};

/// Gamma(z) for z > 0.
double complete_gamma(double z);

/// Exact binomial coefficient; 0 for k > n. Throws std::overflow_error when
/// the result does not fit in 64 bits (use binomial_log instead).
std::uint64_t binomial(unsigned n, unsigned k);

/// Euler-Mascheroni constant.
template <class R>
R euler_gamma() {
    return boost::math::constants::euler<R>();
}

template <class R>
R factorial(unsigned n) {
    R f(1);
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Binomial coefficient as a real number. Exact while the value fits the
/// mantissa of R.
template <class R>
R binomial_real(unsigned n, unsigned k) {
    if (k > n) return R(0);
    if (k > n - k) k = n - k;
    R r(1);
    for (unsigned i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    using std::round;
    return round(r);
}

/// Binomial coefficient in log domain; exact sign, no overflow.
template <class R>
SignedLogValue<R> binomial_log(unsigned n, unsigned k) {
    using std::log;
    if (k > n) return SignedLogValue<R>::zero();
    if (k > n - k) k = n - k;
    // Below 2^53 the integer route is exact.
    if (n <= 62) {
        const std::uint64_t b = binomial(n, k);
        if (b < (std::uint64_t{1} << 53)) return SignedLogValue<R>::from_log(log(R(static_cast<double>(b))), 1);
    }
    R acc(0);
    for (unsigned i = 1; i <= k; ++i) acc += log(R(n - k + i)) - log(R(i));
    return SignedLogValue<R>::from_log(acc, 1);
}

/// H_n = sum_{i=1}^n 1/i, H_0 = 0.
template <class R = double>
R harmonic(int n) {
    if (n < 0) throw std::domain_error("harmonic: negative index " + std::to_string(n));
    R h(0);
    for (int i = 1; i <= n; ++i) h += R(1) / R(i);
    return h;
}

namespace detail {

template <class R>
R tolerance() {
    return std::numeric_limits<R>::epsilon();
}

// e^x E_1(x) by its power series, x < 1.
template <class R>
R scaled_e1_series(const R& x) {
    using std::abs;
    using std::exp;
    using std::log;
    R sum(0);
    R term(1);
    for (int k = 1; k < 100000; ++k) {
        term *= -x / R(k);
        const R contrib = term / R(k);
        sum += contrib;
        if (abs(contrib) <= abs(sum) * tolerance<R>()) break;
    }
    // E_1 = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    return exp(x) * (-euler_gamma<R>() - log(x) - sum);
}

// e^x E_n(x) by the modified-Lentz continued fraction, x >= 1, n >= 1.
template <class R>
R scaled_en_continued_fraction(int n, const R& x) {
    using std::abs;
    const R tiny = std::numeric_limits<R>::min() * R(1e10);
    R b = x + R(n);
    R c = R(1) / tiny;
    R d = R(1) / b;
    R h = d;
    for (int i = 1; i < 100000; ++i) {
        const R a = -R(i) * R(n - 1 + i);
        b += 2;
        d = R(1) / (a * d + b);
        c = b + a / c;
        const R del = c * d;
        h *= del;
        if (abs(del - R(1)) <= tolerance<R>()) return h;
    }
    throw std::runtime_error("exp_integral: continued fraction did not converge");
}

}  // namespace detail

/// e^x * E_n(x). Overflow-free carrier for the incomplete-gamma kernels.
template <class R>
R exp_integral_scaled(int n, const R& x) {
    if (n < 0) throw std::domain_error("exp_integral: negative order " + std::to_string(n));
    if (!(x > 0)) throw std::domain_error("exp_integral: argument must be positive");
    if (n == 0) return R(1) / x;
    if (x >= 1) return detail::scaled_en_continued_fraction<R>(n, x);
    // Below the crossover: E_1 series, then the upward recurrence
    // E_{j+1} = (e^{-x} - x E_j) / j, whose error gain x/j is < 1 here.
    R s = detail::scaled_e1_series<R>(x);
    for (int j = 1; j < n; ++j) s = (R(1) - x * s) / R(j);
    return s;
}

/// E_n(x) = int_1^inf e^{-xt} t^{-n} dt.
template <class R>
R exp_integral(int n, const R& x) {
    using std::exp;
    return exp(-x) * exp_integral_scaled<R>(n, x);
}

/// e^x * Gamma(s, x) for integer s and x > 0.
template <class R>
R upper_incomplete_gamma_int_scaled(int s, const R& x) {
    using std::pow;
    if (!(x > 0)) throw std::domain_error("upper_incomplete_gamma: argument must be positive");
    if (s >= 1) {
        // (s-1)! sum_{j<s} x^j / j!
        R term(1);
        R sum(1);
        for (int j = 1; j < s; ++j) {
            term *= x / R(j);
            sum += term;
        }
        return factorial<R>(static_cast<unsigned>(s - 1)) * sum;
    }
    const int n = -s;
    // Gamma(-n, x) = x^{-n} E_{n+1}(x)
    return exp_integral_scaled<R>(n + 1, x) / pow(x, n);
}

/// Gamma(s, x) for integer s (any sign) and x > 0.
template <class R>
R upper_incomplete_gamma_int(int s, const R& x) {
    using std::exp;
    return exp(-x) * upper_incomplete_gamma_int_scaled<R>(s, x);
}

}  // namespace secrecy::specialfn
