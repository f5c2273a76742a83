#pragma once

// Ergodic secrecy rate, (1/ln 2) int_1^inf (1 - F(x)) / x dx, integrated term by
// term over the TermSum of the ratio CDF.

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <tuple>

#include "secrecy/algebra.hpp"
#include "secrecy/config.hpp"
#include "secrecy/oracles.hpp"

namespace secrecy::esr {

enum class EsrForm { exact, high_snr, asymptotic };
std::string_view to_string(EsrForm f);

struct EsrResult {
    double value = 0;
    EsrForm form = EsrForm::exact;
    std::size_t term_count = 0;
    /// Largest relative gap between a term's closed-form integral and its
    /// quadrature, when the audit was requested.
    std::optional<double> audit_max_rel_discrepancy;
};

/// How the lower end of the x-integral is treated.
///   exact      int_1^inf with the term's exponential
///   high_snr   int_1^inf with the exponential dropped (a = 0)
///   asymptotic int_0^inf approximation of each pole piece, ln(1+b) -> ln b
enum class Integration { exact, high_snr, asymptotic };

/// K(Theta; a, b) = int_1^inf e^{-a x} / (x + b)^{Theta+1} dx = e^{ab} a^Theta Gamma(-Theta, a(1+b)),
/// any integer Theta, a > 0, b >= 0.
Real kernel(int theta, const Real& a, const Real& b);

/// Memo of kernel values keyed by (Theta, rate multiple, pole key).
class KernelCache {
public:
    Real get(int theta, int rate_multiple, const algebra::PoleKey& key, const Real& a, const Real& b);
    std::size_t size() const { return values_.size(); }

private:
    std::map<std::tuple<int, int, algebra::PoleKey>, Real> values_;
};

/// int_1^inf x^{p-1} e^{-a x} / prod (x + b_q)^{m_q} dx for one term (its
/// coefficient is not applied). Throws std::domain_error on divergence.
Real integrate_term(const algebra::RationalExpTerm& term, Integration mode = Integration::exact,
                    KernelCache* cache = nullptr);

/// (k/lambda_D)^Theta e^{(n+1)/lambda_E} Gamma(-Theta, (k/lambda_D)(1 + (n+1) lambda_D / (k lambda_E)))
double w_kernel(int theta, int k, int n, const SystemConfig& cfg);

/// (k/lambda_D)^Theta e^{k(n_q+1)/lambda_E} Gamma(-Theta, (k/lambda_D)(1 + (n_q+1) lambda_D / lambda_E))
double t_kernel(int theta, int k, int n_q, const SystemConfig& cfg);

struct EsrOptions {
    bool audit = false;
    oracles::QuadratureSettings audit_settings{};
};

EsrResult esr_exact(const SystemConfig& cfg, const EsrOptions& opt = {});
EsrResult esr_high_snr(const SystemConfig& cfg);
EsrResult esr_asymptotic(const SystemConfig& cfg);

}  // namespace secrecy::esr
