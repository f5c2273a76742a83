#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "secrecy/oracles.hpp"
#include "secrecy/sop.hpp"

using namespace secrecy;

namespace {

SystemConfig cfg(int K, int N, int MD, int ME, double ld, double le, double zeta, Scheme s = Scheme::SS,
                 Knowledge k = Knowledge::KA, double rth = 1) {
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
    c.rate_threshold = rth;
    return c;
}

constexpr Scheme kSchemes[] = {Scheme::SS, Scheme::OS};
constexpr Knowledge kModes[] = {Knowledge::KA, Knowledge::KU};

}  // namespace

TEST_CASE("ratio CDF against quadrature") {
    for (Scheme s : kSchemes)
        for (Knowledge k : kModes) {
            const auto c = cfg(2, 2, 2, 2, 10, 1, 1, s, k);
            for (double x : {1.0, 2.0, 5.0, 30.0}) {
                CAPTURE(c.describe());
                CAPTURE(x);
                CHECK(std::abs(sop::cdf_ratio(x, c) - oracles::quad_cdf_ratio(x, c)) <= 1e-9);
            }
        }
}

TEST_CASE("ratio CDF domain") {
    const auto c = cfg(2, 1, 1, 1, 10, 1, 1);
    CHECK_THROWS_AS(sop::cdf_ratio(0.5, c), std::domain_error);
    CHECK_NOTHROW(sop::cdf_ratio(1.0, c));
    auto bad = c;
    bad.backhaul_reliability = 1.5;
    CHECK_THROWS_AS(sop::sop(bad), ConfigError);
}

TEST_CASE("no active backhaul means certain outage") {
    for (Scheme s : kSchemes)
        for (Knowledge k : kModes) {
            const auto c = cfg(3, 2, 2, 1, 100, 1, 0, s, k);
            CHECK(sop::sop(c).value == 1);
            for (double x : {1.0, 3.0}) CHECK(sop::cdf_ratio(x, c) == 1);
        }
}

TEST_CASE("single transmitter: selection and knowledge do not matter") {
    for (double z : {0.3, 1.0})
        for (double x : {1.0, 2.0, 7.0}) {
            const double ref = sop::cdf_ratio(x, cfg(1, 2, 2, 3, 20, 2, z));
            for (Scheme s : kSchemes)
                for (Knowledge k : kModes)
                    CHECK(std::abs(sop::cdf_ratio(x, cfg(1, 2, 2, 3, 20, 2, z, s, k)) - ref) <= 1e-12);
        }
}

TEST_CASE("unknown backhaul is a mixture with the perfect-backhaul law") {
    for (Scheme s : kSchemes)
        for (int K : {1, 2, 3})
            for (double z : {0.2, 0.5, 0.9}) {
                const double one = sop::sop(cfg(K, 2, 2, 1, 30, 3, 1, s, Knowledge::KA)).value;
                const double ku = sop::sop(cfg(K, 2, 2, 1, 30, 3, z, s, Knowledge::KU)).value;
                const double expect = 1 - z + z * one;
                CHECK(std::abs(ku - expect) <= 1e-12 * expect);
            }
}

TEST_CASE("dominance on a grid") {
    for (int K : {2, 3})
        for (int N : {1, 3})
            for (double z : {0.5, 0.9, 1.0})
                for (double x : {1.0, 2.0, 4.0}) {
                    for (Knowledge k : kModes)
                        CHECK(sop::cdf_ratio(x, cfg(K, N, 2, 2, 20, 3, z, Scheme::OS, k)) <=
                              sop::cdf_ratio(x, cfg(K, N, 2, 2, 20, 3, z, Scheme::SS, k)) + 1e-9);
                    for (Scheme s : kSchemes)
                        CHECK(sop::cdf_ratio(x, cfg(K, N, 2, 2, 20, 3, z, s, Knowledge::KA)) <=
                              sop::cdf_ratio(x, cfg(K, N, 2, 2, 20, 3, z, s, Knowledge::KU)) + 1e-9);
                }
}

TEST_CASE("two-transmitter reference value") {
    const auto c = cfg(2, 2, 2, 2, 10, 1, 1);
    const double v = sop::cdf_ratio(2, c);
    CHECK(v == doctest::Approx(oracles::quad_cdf_ratio(2, c)).epsilon(1e-10));
    CHECK(v > 0);
    CHECK(v < 1);
}

TEST_CASE("vanishing outage at zero threshold and high SNR") {
    for (Scheme s : kSchemes) CHECK(sop::sop(cfg(2, 2, 2, 2, 1e6, 1, 1, s, Knowledge::KA, 0)).value <= 1e-6);
}

TEST_CASE("deep tail: SOP at a figure operating point matches Monte Carlo") {
    const auto c = cfg(2, 2, 2, 2, 1e3, std::pow(10.0, 0.5), 1);
    const double v = sop::sop(c).value;
    const auto mc = oracles::mc_sop(c, 1'000'000, 99, 1);
    CHECK(std::abs(v - mc.mean) <= 3 * mc.stderr_);
}

TEST_CASE("backhaul-limited floors") {
    CHECK(sop::sop_asymptotic(cfg(2, 1, 1, 1, 1, 1, 0.9, Scheme::SS, Knowledge::KA)).value ==
          doctest::Approx(0.01).epsilon(1e-14));
    CHECK(sop::sop_asymptotic(cfg(2, 1, 1, 1, 1, 1, 0.9, Scheme::OS, Knowledge::KU)).value ==
          doctest::Approx(0.1).epsilon(1e-14));
    CHECK(sop::sop_asymptotic(cfg(1, 1, 1, 1, 1, 1, 0.9, Scheme::SS, Knowledge::KA)).value ==
          doctest::Approx(sop::sop_asymptotic(cfg(1, 1, 1, 1, 1, 1, 0.9, Scheme::SS, Knowledge::KU)).value));
    CHECK(sop::sop_asymptotic(cfg(2, 1, 1, 1, 1, 1, 0.9)).form == sop::SopForm::asymptotic);
    CHECK_THROWS_AS(sop::sop_asymptotic(cfg(2, 1, 1, 1, 1, 1, 1)), std::domain_error);

    for (Scheme s : kSchemes)
        for (Knowledge k : kModes)
            for (double z : {0.5, 0.9}) {
                const auto c = cfg(2, 2, 2, 2, 1e6, 1, z, s, k);
                CHECK(std::abs(sop::sop(c).value - sop::sop_asymptotic(c).value) <= 1e-3);
                const double n1 = sop::sop(cfg(2, 1, 2, 2, 1e6, 1, z, s, k)).value;
                const double n3 = sop::sop(cfg(2, 3, 2, 2, 1e6, 1, z, s, k)).value;
                CHECK(std::abs(n1 - n3) <= 1e-3);
            }
}

TEST_CASE("perfect-backhaul asymptote") {
    for (Scheme s : kSchemes) {
        const auto lo = cfg(2, 2, 2, 2, 1e5, 1, 1, s);
        const auto hi = cfg(2, 2, 2, 2, 1e6, 1, 1, s);
        const double ratio = sop::sop_asymptotic_perfect_backhaul(lo).value /
                             sop::sop_asymptotic_perfect_backhaul(hi).value;
        CHECK(ratio == doctest::Approx(1e4).epsilon(0.01));
        CHECK(sop::sop_asymptotic_perfect_backhaul(lo).form == sop::SopForm::asymptotic_perfect_backhaul);
    }
    const double ss = sop::sop_asymptotic_perfect_backhaul(cfg(1, 2, 3, 2, 1e3, 1, 1, Scheme::SS)).value;
    const double os = sop::sop_asymptotic_perfect_backhaul(cfg(1, 2, 3, 2, 1e3, 1, 1, Scheme::OS)).value;
    CHECK(ss == doctest::Approx(os).epsilon(1e-12));

    const double low = sop::sop_asymptotic_perfect_backhaul(cfg(2, 2, 2, 2, 1, 3, 1)).value;
    CHECK(low >= 0);
    CHECK(low <= 1);

    const auto one = cfg(1, 1, 1, 1, 1e4, 1, 1);
    CHECK(sop::sop_asymptotic_perfect_backhaul(one).value == doctest::Approx(sop::sop(one).value).epsilon(0.05));
}

TEST_CASE("diversity order") {
    CHECK(sop::diversity_order(cfg(3, 1, 2, 1, 1, 1, 1)) == 6);
    CHECK(sop::diversity_order(cfg(1, 1, 1, 1, 1, 1, 1)) == 1);
    CHECK_THROWS(sop::diversity_order(cfg(2, 1, 2, 1, 1, 1, 0.9)));
    for (Scheme s : kSchemes)
        for (int K : {1, 2})
            for (int MD : {1, 2}) {
                const double a = sop::sop(cfg(K, 2, MD, 2, 1e5, 1, 1, s)).value;
                const double b = sop::sop(cfg(K, 2, MD, 2, 1e6, 1, 1, s)).value;
                const double slope = std::log10(a) - std::log10(b);
                CHECK(slope == doctest::Approx(K * MD).epsilon(0.05));
            }
}

TEST_CASE("term counts are reported") {
    const auto r = sop::sop(cfg(2, 2, 2, 2, 10, 1, 0.9, Scheme::OS));
    CHECK(r.term_count > 0);
    CHECK(r.form == sop::SopForm::exact);
}
