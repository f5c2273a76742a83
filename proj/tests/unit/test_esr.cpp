#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "secrecy/esr.hpp"
#include "secrecy/oracles.hpp"
#include "secrecy/specialfn.hpp"

using namespace secrecy;
using algebra::PoleKey;
using algebra::RationalExpTerm;

namespace {

SystemConfig cfg(int K, int N, int MD, int ME, double ld, double le, double zeta, Scheme s = Scheme::SS,
                 Knowledge k = Knowledge::KA) {
    SystemConfig c;
    c.transmitters = K;
    c.eavesdroppers = N;
    c.dest_paths = MD;
    c.eve_paths = ME;
    c.dest_snr = ld;
    c.eve_snr = le;
    c.backhaul_reliability = zeta;
    c.scheme = s;
    c.knowledge = k;
    return c;
}

RationalExpTerm term(int p, double rate, std::vector<std::pair<double, int>> poles) {
    RationalExpTerm t;
    t.coeff = algebra::Coeff::from_value(Real(1));
    t.poly_power = p;
    t.rate_multiple = rate > 0 ? 1 : 0;
    t.exp_rate = Real(rate);
    std::int64_t id = 1;
    for (auto [b, m] : poles) t.poles.push_back({PoleKey::make(id++, 1), Real(b), m});
    return t;
}

double tight_quad(const std::function<double(double)>& f, double scale) {
    oracles::QuadratureSettings q;
    q.abs_tol = 1e-300;
    q.rel_tol = 1e-13;
    q.max_subdivisions = 20000;
    return oracles::integrate_semi_infinite(f, 1.0, scale, q).value;
}

constexpr Scheme kSchemes[] = {Scheme::SS, Scheme::OS};
constexpr Knowledge kModes[] = {Knowledge::KA, Knowledge::KU};

}  // namespace

TEST_CASE("term integrals at known points") {
    // int_1^inf e^{-x}/(x+1) dx = e E_1(2)
    const double ref = std::numbers::e * specialfn::exp_integral(1, 2.0);
    CHECK(ref == doctest::Approx(0.132925369660089).epsilon(1e-13));
    CHECK(to_double(esr::integrate_term(term(0 + 1, 1, {{1, 1}}))) == doctest::Approx(ref).epsilon(1e-14));
    CHECK(to_double(esr::integrate_term(term(0, 0, {{1, 1}}))) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    // int_1^inf x/(x+2)^3 dx: p - 1 = 1
    CHECK(to_double(esr::integrate_term(term(2, 0, {{2, 3}}))) == doctest::Approx(2.0 / 9).epsilon(1e-15));
}

TEST_CASE("term integrals against quadrature") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> loc(0.05, 30), rate(0.01, 3);
    std::uniform_int_distribution<int> mult(1, 3), pw(0, 3);
    for (int i = 0; i < 40; ++i) {
        const bool with_rate = i % 2 == 0;
        std::vector<std::pair<double, int>> poles;
        const int n = 1 + i % 3;
        int degree = 0;
        for (int j = 0; j < n; ++j) {
            poles.push_back({loc(rng), mult(rng)});
            degree += poles.back().second;
        }
        int p = pw(rng);
        if (!with_rate) p = std::min(p, degree - 1 + (p == 0));
        if (!with_rate && p > 0 && degree - (p - 1) < 2) p = degree - 1;
        const double a = with_rate ? rate(rng) : 0;
        const auto t = term(p, a, poles);
        const double v = to_double(esr::integrate_term(t));
        auto f = [&](double x) { return to_double(t.value(Real(x))) / x; };
        double q;
        if (with_rate) {
            q = tight_quad(f, 2 / a);
        } else {
            double s = 1;
            for (auto [b, m] : poles) s = std::max(s, b);
            q = oracles::integrate_finite([&](double u) { return u < 1 ? f(1 + s * u / (1 - u)) * s / ((1 - u) * (1 - u)) : 0.0; },
                                          0, 1)
                    .value;
        }
        CAPTURE(i);
        CHECK(std::abs(v - q) <= 1e-8 * std::abs(q));
    }
}

TEST_CASE("divergent term integrals are rejected") {
    CHECK_THROWS_AS(esr::integrate_term(term(2, 0, {{1, 1}})), std::domain_error);
    CHECK_THROWS_AS(esr::integrate_term(term(1, 0, {{1, 1}})), std::domain_error);
    CHECK_THROWS_AS(esr::integrate_term(term(0, 0, {})), std::invalid_argument);
}

TEST_CASE("W and T kernels") {
    const auto unit = cfg(1, 1, 1, 1, 1, 1, 1);
    CHECK(esr::w_kernel(0, 1, 0, unit) == doctest::Approx(std::numbers::e * specialfn::upper_incomplete_gamma_int(0, 2.0)).epsilon(1e-14));
    CHECK(esr::w_kernel(0, 1, 0, unit) == doctest::Approx(0.132925369660089).epsilon(1e-13));
    const auto t = cfg(1, 1, 1, 1, 10, 1, 1);
    CHECK(esr::t_kernel(0, 2, 0, t) == doctest::Approx(std::exp(2.0) * specialfn::upper_incomplete_gamma_int(0, 2.2)).epsilon(1e-14));
    CHECK(esr::t_kernel(0, 2, 0, t) == doctest::Approx(0.274807398059748).epsilon(1e-13));
    for (int th = 0; th <= 4; ++th) CHECK(esr::t_kernel(th, 1, 2, t) == doctest::Approx(esr::w_kernel(th, 1, 2, t)).epsilon(1e-15));

    // Gamma(s+1, z) = s Gamma(s, z) + z^s e^{-z} with s = -(Th+1), after removing a^Th e^{ab}.
    for (double ld : {0.5, 3.0, 40.0}) {
        const auto c = cfg(1, 1, 1, 1, ld, 2, 1);
        for (int k : {1, 2})
            for (int n : {0, 1})
                for (int th = 0; th <= 4; ++th) {
                    const double a = k / ld, b = (n + 1) * ld / 2.0, z = a * (1 + b);
                    const double e_ab = std::exp(a * b);
                    const double g0 = esr::t_kernel(th, k, n, c) / (std::pow(a, th) * e_ab);
                    const double g1 = esr::t_kernel(th + 1, k, n, c) / (std::pow(a, th + 1) * e_ab);
                    CHECK(g0 == doctest::Approx(-(th + 1) * g1 + std::pow(z, -(th + 1)) * std::exp(-z)).epsilon(1e-12));
                }
    }
}

TEST_CASE("W kernel matches its defining integral") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ldb(-5, 30);
    std::uniform_int_distribution<int> th(0, 4), kk(1, 3), nn(0, 2);
    for (int i = 0; i < 10; ++i) {
        const auto c = cfg(1, 1, 1, 1, db_to_linear(ldb(rng)), db_to_linear(ldb(rng) / 3), 1);
        const int Th = th(rng), k = kk(rng), n = nn(rng);
        const double a = k / c.dest_snr, b = (n + 1) * c.dest_snr / (k * c.eve_snr);
        const double q = tight_quad([&](double x) { return std::exp(-a * x - (Th + 1) * std::log(x + b)); }, 2 / a);
        CHECK(esr::w_kernel(Th, k, n, c) == doctest::Approx(q).epsilon(1e-9));
    }
}

TEST_CASE("exact ESR against quadrature and audit") {
    for (Scheme s : kSchemes)
        for (Knowledge k : kModes) {
            const auto c = cfg(2, 2, 2, 1, 10, 2, 0.7, s, k);
            esr::EsrOptions opt;
            opt.audit = true;
            const auto r = esr::esr_exact(c, opt);
            CHECK(std::abs(r.value - oracles::quad_esr(c)) <= 1e-7);
            REQUIRE(r.audit_max_rel_discrepancy.has_value());
            CHECK(*r.audit_max_rel_discrepancy <= 1e-7);
            CHECK(r.form == esr::EsrForm::exact);
            CHECK(r.term_count > 0);
        }
}

TEST_CASE("single-link reference value") {
    const auto c = cfg(1, 1, 1, 1, 100, 1, 1);
    CHECK(esr::esr_exact(c).value == doctest::Approx(oracles::quad_esr(c)).epsilon(1e-9));
}

TEST_CASE("ESR degeneracies and backhaul scaling") {
    for (Scheme s : kSchemes)
        for (Knowledge k : kModes) CHECK(esr::esr_exact(cfg(2, 1, 2, 1, 10, 1, 0, s, k)).value == 0);
    for (Scheme s : kSchemes) {
        const double one = esr::esr_exact(cfg(2, 2, 2, 1, 20, 2, 1, s)).value;
        const double half = esr::esr_exact(cfg(2, 2, 2, 1, 20, 2, 0.5, s, Knowledge::KU)).value;
        CHECK(std::abs(half - 0.5 * one) <= 1e-12 * one);
        const double h1 = esr::esr_high_snr(cfg(2, 2, 2, 1, 20, 2, 1, s)).value;
        const double h3 = esr::esr_high_snr(cfg(2, 2, 2, 1, 20, 2, 0.3, s, Knowledge::KU)).value;
        CHECK(std::abs(h3 - 0.3 * h1) <= 1e-12 * h1);
        // collinearity in zeta
        const double a = esr::esr_exact(cfg(2, 2, 2, 1, 20, 2, 0.2, s, Knowledge::KU)).value;
        const double b = esr::esr_exact(cfg(2, 2, 2, 1, 20, 2, 0.5, s, Knowledge::KU)).value;
        const double c = esr::esr_exact(cfg(2, 2, 2, 1, 20, 2, 0.9, s, Knowledge::KU)).value;
        CHECK(std::abs((b - a) / 0.3 - (c - b) / 0.4) <= 1e-12 * one);
    }
    for (double z : {0.4, 1.0}) {
        const double ss = esr::esr_high_snr(cfg(1, 2, 2, 2, 50, 2, z, Scheme::SS)).value;
        const double os = esr::esr_high_snr(cfg(1, 2, 2, 2, 50, 2, z, Scheme::OS)).value;
        CHECK(std::abs(ss - os) <= 1e-12 * ss);
    }
}

TEST_CASE("ESR orderings") {
    for (int K : {1, 2, 3})
        for (int N : {1, 2})
            for (double z : {0.5, 1.0}) {
                const double ss = esr::esr_exact(cfg(K, N, 2, 1, 10, 2, z, Scheme::SS)).value;
                const double os = esr::esr_exact(cfg(K, N, 2, 1, 10, 2, z, Scheme::OS)).value;
                CHECK(os >= ss - 1e-9);
            }
}

TEST_CASE("ESR monotonicity") {
    for (Scheme s : kSchemes)
        for (Knowledge k : kModes) {
            auto e = [&](int N, double ld, double le, double z) { return esr::esr_exact(cfg(2, N, 2, 1, ld, le, z, s, k)).value; };
            for (double ld : {1.0, 10.0, 100.0}) CHECK(e(2, ld * 10, 1, 1) >= e(2, ld, 1, 1) - 1e-9);
            for (double z : {0.2, 0.6}) CHECK(e(2, 10, 1, z + 0.3) >= e(2, 10, 1, z) - 1e-9);
            CHECK(e(2, 10, 1, 0.8) <= e(1, 10, 1, 0.8) + 1e-9);
            CHECK(e(3, 10, 1, 0.8) <= e(2, 10, 1, 0.8) + 1e-9);
            CHECK(e(2, 10, 3, 0.8) <= e(2, 10, 1, 0.8) + 1e-9);
        }
}

TEST_CASE("asymptotic ESR") {
    for (Scheme s : kSchemes) {
        const double a = esr::esr_asymptotic(cfg(1, 1, 1, 1, 1e3, 1, 1, s)).value;
        const double b = esr::esr_asymptotic(cfg(1, 1, 1, 1, 1e4, 1, 1, s)).value;
        CHECK(b - a == doctest::Approx(std::log2(10.0)).epsilon(1e-3 / 3.3219));
        CHECK(std::abs(b - a - 3.3219) <= 1e-3);
    }
    const double v = esr::esr_asymptotic(cfg(1, 1, 1, 1, 500, 2, 1)).value;
    CHECK(v == doctest::Approx(std::log(250.0) / std::log(2.0)).epsilon(1e-13));
    for (Scheme s : kSchemes) {
        const auto c = cfg(2, 2, 2, 2, 1e4, 1, 1, s);
        CHECK(std::abs(esr::esr_asymptotic(c).value - esr::esr_high_snr(c).value) <= 0.05);
        CHECK(esr::esr_asymptotic(c).form == esr::EsrForm::asymptotic);
    }
}

TEST_CASE("high-SNR ESR approaches the exact ESR when both links are strong") {
    for (Scheme s : kSchemes) {
        double prev = INFINITY;
        for (double le_db : {10.0, 20.0, 30.0}) {
            const auto c = cfg(2, 2, 2, 2, db_to_linear(le_db + 20), db_to_linear(le_db), 1, s);
            const double gap = std::abs(esr::esr_high_snr(c).value - esr::esr_exact(c).value);
            CHECK(gap < prev);
            prev = gap;
        }
        CHECK(prev <= 0.05);
    }
}
