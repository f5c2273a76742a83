#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "secrecy/channel.hpp"
#include "secrecy/oracles.hpp"

using namespace secrecy;
using namespace secrecy::channel;

namespace {

SystemConfig mixture_cfg(int md, double lambda, double zeta) {
    SystemConfig c;
    c.dest_paths = md;
    c.dest_snr = lambda;
    c.backhaul_reliability = zeta;
    return c;
}

struct Dist {
    const char* name;
    double lambda;
    std::function<double(double)> cdf, pdf;
};

std::vector<Dist> distributions() {
    return {
        {"dest M=1", 1.0, [](double x) { return cdf_snr_dest(x, 1, 1); }, [](double x) { return pdf_snr_dest(x, 1, 1); }},
        {"dest M=3 l=2", 2.0, [](double x) { return cdf_snr_dest(x, 3, 2); },
         [](double x) { return pdf_snr_dest(x, 3, 2); }},
        {"eve N=3 M=2", 1.0, [](double x) { return cdf_snr_eve_max(x, 3, 2, 1); },
         [](double x) { return pdf_snr_eve_max(x, 3, 2, 1); }},
        {"eve N=2 M=4 l=0.5", 0.5, [](double x) { return cdf_snr_eve_max(x, 2, 4, 0.5); },
         [](double x) { return pdf_snr_eve_max(x, 2, 4, 0.5); }},
    };
}

}  // namespace

TEST_CASE("destination SNR distribution") {
    CHECK(cdf_snr_dest(0, 2, 1) == 0);
    CHECK(cdf_snr_dest(1, 1, 1) == doctest::Approx(0.6321206).epsilon(1e-7));
    CHECK(cdf_snr_dest(2, 2, 1) == doctest::Approx(0.5939942).epsilon(1e-7));
    CHECK(cdf_snr_dest(-1, 2, 1) == 0);
    CHECK(pdf_snr_dest(0, 2, 1) == 0);
    CHECK(pdf_snr_dest(1, 1, 1) == doctest::Approx(0.3678794).epsilon(1e-7));
    CHECK(pdf_snr_dest(3, 3, 2) == doctest::Approx(9 * std::exp(-1.5) / 16).epsilon(1e-14));
    CHECK(pdf_snr_dest(-1, 2, 1) == 0);
    const double h = 1e-5;
    CHECK((cdf_snr_dest(3 + h, 3, 2) - cdf_snr_dest(3 - h, 3, 2)) / (2 * h) ==
          doctest::Approx(pdf_snr_dest(3, 3, 2)).epsilon(1e-8));
    for (double x : {0.1, 1.0, 10.0, 100.0})
        CHECK(cdf_snr_dest(x, 4, 1.5) + ccdf_snr_dest(x, 4, 1.5) == doctest::Approx(1).epsilon(1e-15));
}

TEST_CASE("large multipath counts do not overflow") {
    const double v = cdf_snr_dest(200, 180, 1);
    CHECK(std::isfinite(v));
    CHECK(v > 0.5);
    CHECK(v < 1);
    CHECK(std::isfinite(pdf_snr_dest(200, 180, 1)));
}

TEST_CASE("strongest eavesdropper distribution") {
    for (double x : {0.0, 0.3, 1.0, 4.0}) {
        CHECK(cdf_snr_eve_max(x, 1, 3, 2) == doctest::Approx(cdf_snr_dest(x, 3, 2)).epsilon(1e-15));
        CHECK(pdf_snr_eve_max(x, 1, 3, 2) == doctest::Approx(pdf_snr_dest(x, 3, 2)).epsilon(1e-15));
    }
    CHECK(cdf_snr_eve_max(0, 3, 2, 1) == 0);
    CHECK(pdf_snr_eve_max(0, 2, 2, 1) == 0);
    CHECK(cdf_snr_eve_max(1, 2, 1, 1) == doctest::Approx(0.3995764).epsilon(1e-7));
    const double mass = oracles::integrate_semi_infinite([](double x) { return pdf_snr_eve_max(x, 3, 2, 1); }, 0.0,
                                                         4.0)
                            .value;
    CHECK(std::abs(mass - 1) <= 1e-8);
}

TEST_CASE("backhaul mixture") {
    for (double x : {0.0, 0.5, 2.0, 9.0})
        CHECK(cdf_snr_dest_mixture_ka(x, mixture_cfg(2, 1.5, 1.0)) == doctest::Approx(cdf_snr_dest(x, 2, 1.5)).epsilon(1e-15));
    CHECK(cdf_snr_dest_mixture_ka(0, mixture_cfg(2, 1, 0.9)) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(cdf_snr_dest_mixture_ka(2, mixture_cfg(2, 1, 0.5)) == doctest::Approx(0.7969971).epsilon(1e-7));
    CHECK(cdf_snr_dest_mixture_ka(-1, mixture_cfg(2, 1, 0.5)) == 0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 200; ++i) {
        const double x = 20 * u(rng), z = u(rng);
        const auto c = mixture_cfg(1 + i % 4, 0.5 + u(rng), z);
        const double d = cdf_snr_dest_mixture_ka(x, c) - (1 - z) - z * cdf_snr_dest(x, c.dest_paths, c.dest_snr);
        CHECK(std::abs(d) <= 1e-15);
    }
}

TEST_CASE("CDFs are monotone, bounded and reach one") {
    for (const auto& d : distributions()) {
        CAPTURE(d.name);
        double prev = 0;
        for (int i = 0; i <= 200; ++i) {
            const double x = 100 * d.lambda * i / 200.0;
            const double v = d.cdf(x);
            CHECK(v >= prev);
            CHECK(v >= 0);
            CHECK(v <= 1);
            prev = v;
        }
        CHECK(prev == doctest::Approx(1).epsilon(1e-6));
    }
}

TEST_CASE("densities integrate to CDF differences") {
    std::mt19937_64 rng(17);
    for (const auto& d : distributions()) {
        std::uniform_real_distribution<double> u(0, 20 * d.lambda);
        for (int i = 0; i < 20; ++i) {
            double a = u(rng), b = u(rng);
            if (a > b) std::swap(a, b);
            const double q = oracles::integrate_finite(d.pdf, a, b).value;
            CAPTURE(d.name);
            CHECK(std::abs(q - (d.cdf(b) - d.cdf(a))) <= 1e-8);
        }
    }
}
