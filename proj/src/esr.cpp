#include "secrecy/esr.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "secrecy/sop.hpp"

namespace secrecy::esr {

using algebra::Pole;
using algebra::PoleKey;
using algebra::RationalExpTerm;

std::string_view to_string(EsrForm f) {
    switch (f) {
        case EsrForm::exact: return "exact";
        case EsrForm::high_snr: return "high_snr";
        case EsrForm::asymptotic: return "asymptotic";
    }
    return "?";
}

Real kernel(int theta, const Real& a, const Real& b) {
    using boost::multiprecision::exp;
    using boost::multiprecision::pow;
    if (!(a > 0)) throw std::domain_error("kernel: rate must be positive");
    if (b < 0) throw std::domain_error("kernel: pole location must be >= 0");
    const Real z = a * (1 + b);
    if (theta >= 0) {
        // Gamma(-Theta, z) = z^{-Theta} E_{Theta+1}(z)
        return exp(-a) / pow(1 + b, theta) * specialfn::exp_integral_scaled<Real>(theta + 1, z);
    }
    return pow(a, theta) * exp(-a) * specialfn::upper_incomplete_gamma_int_scaled<Real>(-theta, z);
}

Real KernelCache::get(int theta, int rate_multiple, const PoleKey& key, const Real& a, const Real& b) {
    const auto k = std::make_tuple(theta, rate_multiple, key);
    auto it = values_.find(k);
    if (it != values_.end()) return it->second;
    return values_.emplace(k, kernel(theta, a, b)).first->second;
}

namespace {

constexpr double kRateFloor = 1e-300;

std::vector<Pole> poles_with_origin(const RationalExpTerm& term) {
    std::vector<Pole> poles = term.poles;
    if (term.poly_power > 0) return poles;
    // x^{-1}: one more simple pole, at the origin.
    const PoleKey origin = PoleKey::make(0, 1);
    auto it = std::find_if(poles.begin(), poles.end(), [&](const Pole& p) { return p.key == origin; });
    if (it != poles.end())
        ++it->multiplicity;
    else
        poles.push_back({origin, Real(0), 1});
    return poles;
}

std::vector<algebra::PoleSpec> specs_of(const std::vector<Pole>& poles) {
    std::vector<algebra::PoleSpec> s;
    for (const auto& p : poles) s.push_back({p.location, p.multiplicity});
    return s;
}

// int_1^inf x^q e^{-a x} / prod (x+b)^m, a > 0.
Real integrate_with_rate(const RationalExpTerm& term, KernelCache* cache) {
    using boost::multiprecision::pow;
    const auto poles = poles_with_origin(term);
    const int q = term.poly_power > 0 ? term.poly_power - 1 : 0;
    const auto table = algebra::partial_fractions(specs_of(poles), 0);
    const Real& a = term.exp_rate;
    std::vector<Real> parts;
    for (std::size_t j = 0; j < table.size(); ++j) {
        const Real& b = table[j].location;
        for (std::size_t t = 1; t <= table[j].coeffs.size(); ++t) {
            const Real& c = table[j].coeffs[t - 1];
            if (c == 0) continue;
            // x^q = sum_i C(q, i) (x+b)^i (-b)^{q-i}
            for (int i = 0; i <= q; ++i) {
                const int theta = static_cast<int>(t) - i - 1;
                const Real k = cache ? cache->get(theta, term.rate_multiple, poles[j].key, a, b) : kernel(theta, a, b);
                Real shift = q - i == 0 ? Real(1) : Real(pow(-b, q - i));
                if (shift == 0) continue;
                parts.push_back(c * specialfn::binomial_real<Real>(static_cast<unsigned>(q), static_cast<unsigned>(i)) *
                                shift * k);
            }
        }
    }
    return algebra::pairwise_sum(parts);
}

// Single pole, exponential dropped, integral taken from 0 (the large-b limit).
Real asymptotic_single_pole(int p, const Real& b, int m) {
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    if (p == 0) return (log(b) - specialfn::harmonic<Real>(m - 1)) / pow(b, m);
    Real s(0);
    for (int j = 0; j <= p - 1; ++j) {
        const Real term = specialfn::binomial_real<Real>(static_cast<unsigned>(p - 1), static_cast<unsigned>(j)) /
                          Real(m - j - 1);
        s += (p - 1 - j) % 2 == 0 ? term : Real(-term);
    }
    return pow(b, p - m) * s;
}

// int_1^inf x^{p-1} / prod (x+b)^m by numerator-inclusive partial fractions.
// Asymptotic mode replaces each lower-limit factor 1+b by b for b > 0.
Real integrate_algebraic(const RationalExpTerm& term, bool asymptotic) {
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    const int p = term.poly_power;
    if (asymptotic && term.poles.size() == 1 && term.poles[0].location > 0 && p < term.total_degree())
        return asymptotic_single_pole(p, term.poles[0].location, term.poles[0].multiplicity);

    const auto poles = poles_with_origin(term);
    int degree = 0;
    for (const auto& pl : poles) degree += pl.multiplicity;
    const int q = p > 0 ? p - 1 : 0;
    if (degree - q < 2)
        throw std::domain_error("integrate_term: integral diverges without the exponential (numerator degree " +
                                std::to_string(q) + ", denominator degree " + std::to_string(degree) + ")");
    const auto table = algebra::partial_fractions(specs_of(poles), q);
    std::vector<Real> parts;
    for (const auto& e : table) {
        const Real lower = asymptotic && e.location > 0 ? e.location : Real(1 + e.location);
        if (e.coeffs[0] != 0) parts.push_back(-e.coeffs[0] * log(lower));
        for (std::size_t t = 2; t <= e.coeffs.size(); ++t)
            if (e.coeffs[t - 1] != 0) parts.push_back(e.coeffs[t - 1] / (Real(t - 1) * pow(lower, t - 1)));
    }
    return algebra::pairwise_sum(parts);
}

}  // namespace

Real integrate_term(const RationalExpTerm& term, Integration mode, KernelCache* cache) {
    if (term.poles.empty() && term.poly_power < 1)
        throw std::invalid_argument("integrate_term: needs a pole or a positive power");
    if (term.exp_rate < 0) throw std::domain_error("integrate_term: negative exponential rate");
    if (mode == Integration::exact && term.exp_rate > 0) {
        if (term.exp_rate >= kRateFloor) return integrate_with_rate(term, cache);
        std::cerr << "warning: exponential rate below " << kRateFloor << ", using the rate-free integral\n";
    }
    return integrate_algebraic(term, mode == Integration::asymptotic);
}

double w_kernel(int theta, int k, int n, const SystemConfig& cfg) {
    cfg.validate();
    const Real a = Real(k) / cfg.dest_snr;
    const Real b = Real(n + 1) * cfg.dest_snr / (Real(k) * cfg.eve_snr);
    return to_double(kernel(theta, a, b));
}

double t_kernel(int theta, int k, int n_q, const SystemConfig& cfg) {
    cfg.validate();
    const Real a = Real(k) / cfg.dest_snr;
    const Real b = Real(n_q + 1) * cfg.dest_snr / Real(cfg.eve_snr);
    return to_double(kernel(theta, a, b));
}

namespace {

double term_quadrature(const RationalExpTerm& t, const oracles::QuadratureSettings& s) {
    const int p = t.poly_power;
    const double a = to_double(t.exp_rate);
    std::vector<std::pair<double, int>> poles;
    double scale = 1;
    for (const auto& pl : t.poles) {
        poles.emplace_back(to_double(pl.location), pl.multiplicity);
        scale = std::max(scale, to_double(pl.location));
    }
    auto f = [&](double x) {
        double lg = (p - 1) * std::log(x) - a * x;
        for (const auto& [b, m] : poles) lg -= m * std::log(x + b);
        return std::exp(lg);
    };
    if (a > 0) return oracles::integrate_semi_infinite(f, 1.0, 2 / a, s).value;
    // Algebraic decay: x = 1 + scale u / (1 - u) keeps the mapped integrand bounded.
    auto mapped = [&](double u) {
        const double w = 1 - u;
        if (!(w > 0)) return 0.0;
        return f(1 + scale * u / w) * scale / (w * w);
    };
    return oracles::integrate_finite(mapped, 0.0, 1.0, s).value;
}

EsrResult finish(const algebra::TermSum& f, Integration mode, EsrForm form, const EsrOptions* opt) {
    using boost::multiprecision::log;
    KernelCache cache;
    std::vector<Real> parts;
    parts.reserve(f.size());
    double worst = 0;
    for (const auto& t : f.terms) {
        const Real integral = integrate_term(t, mode, &cache);
        parts.push_back(t.coeff.value() * integral);
        if (opt && opt->audit) {
            const double ref = term_quadrature(t, opt->audit_settings);
            const double v = to_double(integral);
            worst = std::max(worst, std::abs(v - ref) / std::max(std::abs(ref), 1e-300));
        }
    }
    // 1 - F = sum of the terms; the constant cancels.
    const Real total = algebra::pairwise_sum(parts) / log(Real(2));
    EsrResult r;
    r.value = std::max(0.0, to_double(total));
    r.form = form;
    r.term_count = f.size();
    if (opt && opt->audit) r.audit_max_rel_discrepancy = worst;
    return r;
}

}  // namespace

EsrResult esr_exact(const SystemConfig& cfg, const EsrOptions& opt) {
    return finish(sop::ratio_cdf_terms(cfg, sop::Form::exact), Integration::exact, EsrForm::exact, &opt);
}

EsrResult esr_high_snr(const SystemConfig& cfg) {
    return finish(sop::ratio_cdf_terms(cfg, sop::Form::high_snr), Integration::high_snr, EsrForm::high_snr, nullptr);
}

EsrResult esr_asymptotic(const SystemConfig& cfg) {
    return finish(sop::ratio_cdf_terms(cfg, sop::Form::high_snr), Integration::asymptotic, EsrForm::asymptotic,
                  nullptr);
}

}  // namespace secrecy::esr
