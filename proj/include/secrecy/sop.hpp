#pragma once

// Closed-form CDF of the secrecy ratio (1 + gamma_D) / (1 + gamma_E) at the
// selected transmitter, the secrecy outage probability built from it, and its
// large-lambda_D limits.

#include <cstddef>
#include <string_view>

#include "secrecy/algebra.hpp"
#include "secrecy/config.hpp"

namespace secrecy::sop {

/// exact keeps the unity terms of the ratio; high_snr drops them, so the CDF
/// becomes P[gamma_D <= x gamma_E] and every exponential in x disappears.
enum class Form { exact, high_snr };

enum class SopForm { exact, asymptotic, asymptotic_perfect_backhaul };
std::string_view to_string(SopForm f);

struct SopResult {
    double value = 0;
    SopForm form = SopForm::exact;
    std::size_t term_count = 0;
};

/// One term of the strongest-eavesdropper density,
///     weight * y^y_power * exp(-(n+1) y / lambda_E).
struct EveTerm {
    algebra::Coeff weight;
    int n = 0;
    int y_power = 0;
};

std::vector<EveTerm> eve_max_density_terms(int eavesdroppers, int eve_paths, const Real& eve_snr);

/// F(x) = constant - sum(terms) for the configured scheme and knowledge mode.
/// Exponential rates are stored as multiples of 1/lambda_D and pole keys as
/// rationals times lambda_D / lambda_E.
algebra::TermSum ratio_cdf_terms(const SystemConfig& cfg, Form form = Form::exact,
                                 std::uint64_t cap = algebra::kDefaultTermCap);

/// F(x) for x >= 1, in full precision.
Real cdf_ratio_real(const Real& x, const SystemConfig& cfg);
double cdf_ratio(double x, const SystemConfig& cfg);

SopResult sop(const SystemConfig& cfg);

/// lambda_D -> infinity floor for zeta < 1: (1-zeta)^K with backhaul
/// knowledge, 1-zeta without. Throws std::domain_error at zeta = 1.
SopResult sop_asymptotic(const SystemConfig& cfg);

/// Leading-order SOP at zeta = 1, decaying as lambda_D^{-K M_D}.
SopResult sop_asymptotic_perfect_backhaul(const SystemConfig& cfg);

/// K * M_D. Requires zeta = 1.
int diversity_order(const SystemConfig& cfg);

}  // namespace secrecy::sop
