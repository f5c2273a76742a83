#include "secrecy/sop.hpp"

#include <algorithm>
#include <stdexcept>

namespace secrecy::sop {

using algebra::Coeff;
using algebra::PolyTerm;
using algebra::RationalExpTerm;
using algebra::TermSum;

std::string_view to_string(SopForm f) {
    switch (f) {
        case SopForm::exact: return "exact";
        case SopForm::asymptotic: return "asymptotic";
        case SopForm::asymptotic_perfect_backhaul: return "asymptotic_perfect_backhaul";
    }
    return "?";
}

namespace {

Coeff one() { return Coeff::from_log(Real(0), 1); }

Coeff log_coeff(const Real& log_mag, int sign = 1) { return Coeff::from_log(log_mag, sign); }

Coeff factorial_coeff(int n) {
    return Coeff::from_value(specialfn::factorial<Real>(static_cast<unsigned>(n)));
}

// sum_{m < paths} (z / lambda)^m / m!, as powers of z.
std::vector<PolyTerm> truncated_exp_poly(int paths, const Real& lambda) {
    using boost::multiprecision::log;
    std::vector<PolyTerm> p;
    const Real log_lambda = log(lambda);
    for (int m = 0; m < paths; ++m)
        p.push_back({log_coeff(-m * log_lambda) / factorial_coeff(m), m, 0});
    return p;
}

std::vector<PolyTerm> poly_power(const std::vector<PolyTerm>& p, int k, std::uint64_t cap) {
    if (k == 0) return {{one(), 0, 0}};
    if (k == 1) return p;
    return algebra::expand_power_of_sum(p, k, cap);
}

// E_y[Q(z)^k] with z = x(1+y) - 1 (exact) or z = x y (high_snr), where Q is the
// destination CCDF. Returned as plain terms (sign included in coeff).
std::vector<RationalExpTerm> ccdf_power_terms(int k, const SystemConfig& cfg, const std::vector<EveTerm>& eve,
                                              Form form, std::uint64_t cap) {
    using boost::multiprecision::log;
    const Real lambda_d(cfg.dest_snr);
    const Real lambda_e(cfg.eve_snr);
    const Real ratio = lambda_d / lambda_e;
    const Real log_scale = log(lambda_d / k);
    const auto dest = poly_power(truncated_exp_poly(cfg.dest_paths, lambda_d), k, cap);

    TermSum acc;
    auto emit = [&](const Coeff& c, int x_power, int y_power) {
        for (const auto& e : eve) {
            const int theta = e.y_power + y_power + 1;
            RationalExpTerm t;
            t.coeff = c * e.weight * factorial_coeff(theta - 1) * log_coeff(theta * log_scale);
            if (form == Form::exact) {
                t.coeff *= log_coeff(Real(k) / lambda_d);
                t.rate_multiple = k;
                t.exp_rate = Real(k) / lambda_d;
            }
            t.poly_power = x_power;
            algebra::Pole pole;
            pole.key = algebra::PoleKey::make(e.n + 1, k);
            pole.location = Real(e.n + 1) * ratio / k;
            pole.multiplicity = theta;
            t.poles.push_back(pole);
            acc.terms.push_back(std::move(t));
        }
    };

    for (const auto& d : dest) {
        const int m = d.x_power;
        if (form == Form::high_snr) {
            emit(d.coeff, m, m);
            continue;
        }
        // (x - 1 + x y)^m = sum C(m, mu) C(m-mu, l) (-1)^l x^{m-l} y^mu
        for (int mu = 0; mu <= m; ++mu) {
            for (int l = 0; l <= m - mu; ++l) {
                Coeff c = d.coeff * specialfn::binomial_log<Real>(static_cast<unsigned>(m), static_cast<unsigned>(mu)) *
                          specialfn::binomial_log<Real>(static_cast<unsigned>(m - mu), static_cast<unsigned>(l));
                if (l % 2 != 0) c = -c;
                emit(c, m - l, mu);
            }
        }
    }
    acc.merge_like_terms();
    return std::move(acc.terms);
}

// Weight of the k-th term of 1 - (1 - zeta B)^K = sum_k (-1)^{k+1} C(K,k) zeta^k B^k.
Coeff selection_weight(int K, int k, double zeta) {
    using boost::multiprecision::log;
    Coeff w = specialfn::binomial_log<Real>(static_cast<unsigned>(K), static_cast<unsigned>(k)) *
              log_coeff(k * log(Real(zeta)));
    return k % 2 == 0 ? -w : w;
}

TermSum build_ka(const SystemConfig& cfg, double zeta, Form form, std::uint64_t cap) {
    TermSum out;
    if (zeta == 0) return out;
    const int K = cfg.transmitters;
    const auto eve = eve_max_density_terms(cfg.eavesdroppers, cfg.eve_paths, Real(cfg.eve_snr));
    if (cfg.scheme == Scheme::SS) {
        for (int k = 1; k <= K; ++k) {
            auto tk = ccdf_power_terms(k, cfg, eve, form, cap);
            const Coeff w = selection_weight(K, k, zeta);
            for (auto& t : tk) t.coeff *= w;
            out.append(std::move(tk));
        }
    } else {
        const auto bracket = ccdf_power_terms(1, cfg, eve, form, cap);
        for (int k = 1; k <= K; ++k) {
            std::vector<RationalExpTerm> bk =
                k == 1 ? bracket
                       : algebra::expand_power(std::span<const RationalExpTerm>(bracket), k,
                                               [](std::span<const RationalExpTerm* const> f) {
                                                   return algebra::multiply_terms(f);
                                               },
                                               algebra::term_key, cap);
            const Coeff w = selection_weight(K, k, zeta);
            for (auto& t : bk) t.coeff *= w;
            out.append(std::move(bk));
        }
    }
    out.merge_like_terms();
    return out;
}

void require_support(const Real& x) {
    if (x < 1) throw std::domain_error("cdf_ratio: closed forms hold for x >= 1 only");
}

}  // namespace

std::vector<EveTerm> eve_max_density_terms(int eavesdroppers, int eve_paths, const Real& eve_snr) {
    using boost::multiprecision::log;
    if (eavesdroppers < 1 || eve_paths < 1) throw std::invalid_argument("eve_max_density_terms: N, M_E must be >= 1");
    // N f(y) F(y)^{N-1}, F = 1 - e^{-y/lambda} S(y), f = y^{M-1} e^{-y/lambda} / (lambda^M (M-1)!)
    const Coeff base = Coeff::from_value(Real(eavesdroppers)) / factorial_coeff(eve_paths - 1) *
                       log_coeff(-eve_paths * log(eve_snr));
    const auto s = truncated_exp_poly(eve_paths, eve_snr);
    std::vector<EveTerm> out;
    for (int n = 0; n < eavesdroppers; ++n) {
        Coeff w = base * specialfn::binomial_log<Real>(static_cast<unsigned>(eavesdroppers - 1), static_cast<unsigned>(n));
        if (n % 2 != 0) w = -w;
        for (const auto& p : poly_power(s, n, algebra::kDefaultTermCap))
            out.push_back({w * p.coeff, n, eve_paths - 1 + p.x_power});
    }
    return out;
}

algebra::TermSum ratio_cdf_terms(const SystemConfig& cfg, Form form, std::uint64_t cap) {
    cfg.validate();
    if (cfg.knowledge == Knowledge::KA) return build_ka(cfg, cfg.backhaul_reliability, form, cap);
    // Without backhaul knowledge the gate acts after selection: 1 - zeta + zeta F_{zeta=1}.
    TermSum f = build_ka(cfg, 1.0, form, cap);
    if (cfg.backhaul_reliability == 0) {
        f.terms.clear();
        return f;
    }
    f.scale_terms(Coeff::from_value(Real(cfg.backhaul_reliability)));
    return f;
}

Real cdf_ratio_real(const Real& x, const SystemConfig& cfg) {
    require_support(x);
    return ratio_cdf_terms(cfg).eval(x);
}

double cdf_ratio(double x, const SystemConfig& cfg) {
    require_support(Real(x));
    return std::clamp(to_double(cdf_ratio_real(Real(x), cfg)), 0.0, 1.0);
}

SopResult sop(const SystemConfig& cfg) {
    const TermSum f = ratio_cdf_terms(cfg);
    const Real rho = boost::multiprecision::pow(Real(2), Real(cfg.rate_threshold));
    return {std::clamp(to_double(f.eval(rho)), 0.0, 1.0), SopForm::exact, f.size()};
}

SopResult sop_asymptotic(const SystemConfig& cfg) {
    cfg.validate();
    const double zeta = cfg.backhaul_reliability;
    if (zeta == 1) throw std::domain_error("sop_asymptotic: floor vanishes at zeta = 1, use the perfect-backhaul form");
    const double v = cfg.knowledge == Knowledge::KA ? std::pow(1 - zeta, cfg.transmitters) : 1 - zeta;
    return {v, SopForm::asymptotic, 0};
}

SopResult sop_asymptotic_perfect_backhaul(const SystemConfig& cfg) {
    using boost::multiprecision::pow;
    cfg.validate();
    const int K = cfg.transmitters;
    const int MD = cfg.dest_paths;
    const Real rho = pow(Real(2), Real(cfg.rate_threshold));
    const Real lambda_d(cfg.dest_snr);
    const Real lambda_e(cfg.eve_snr);
    const auto eve = eve_max_density_terms(cfg.eavesdroppers, cfg.eve_paths, lambda_e);

    // E_y[(rho(1+y) - 1)^D] / (lambda_D^D (M_D!)^{copies})
    std::size_t terms = 0;
    auto leading = [&](int D, int copies) {
        Real sum(0);
        for (int mu = 0; mu <= D; ++mu) {
            Real moment(0);
            for (const auto& e : eve) {
                const int phi = e.y_power + mu + 1;
                moment += e.weight.value() * specialfn::factorial<Real>(static_cast<unsigned>(phi - 1)) *
                          pow(lambda_e / (e.n + 1), phi);
                ++terms;
            }
            sum += specialfn::binomial_real<Real>(static_cast<unsigned>(D), static_cast<unsigned>(mu)) * pow(rho, mu) *
                   pow(rho - 1, D - mu) * moment;
        }
        return sum / (pow(lambda_d, D) * pow(specialfn::factorial<Real>(static_cast<unsigned>(MD)), copies));
    };
    const Real v = cfg.scheme == Scheme::SS ? leading(K * MD, K) : Real(pow(leading(MD, 1), K));
    return {std::clamp(to_double(v), 0.0, 1.0), SopForm::asymptotic_perfect_backhaul, terms};
}

int diversity_order(const SystemConfig& cfg) {
    cfg.validate();
    if (cfg.backhaul_reliability != 1) throw std::domain_error("diversity_order: defined for zeta = 1");
    return cfg.transmitters * cfg.dest_paths;
}

}  // namespace secrecy::sop
