#include "secrecy/channel.hpp"

#include <cmath>

namespace secrecy::channel {

namespace {

// e^{-z} z^m / m! built multiplicatively, no factorial overflow.
double poisson_term(double z, int m) {
    double t = std::exp(-z);
    for (int i = 1; i <= m; ++i) t *= z / i;
    return t;
}

// Regularized lower incomplete gamma P(M, z) by its series; used for z < M
// where 1 - Q would cancel.
double lower_series(double z, int paths) {
    double term = poisson_term(z, paths);
    double sum = term;
    for (int j = 1; j < 10000; ++j) {
        term *= z / (paths + j);
        sum += term;
        if (term <= sum * 1e-17) break;
    }
    return sum;
}

// Q(M, z) = e^{-z} sum_{m<M} z^m/m!, the Poisson-sum complement.
double upper_sum(double z, int paths) {
    double term = std::exp(-z);
    double sum = term;
    for (int m = 1; m < paths; ++m) {
        term *= z / m;
        sum += term;
    }
    return sum;
}

}  // namespace

double cdf_snr_dest(double x, int paths, double lambda) {
    if (!(x > 0)) return 0.0;
    const double z = x / lambda;
    if (z < paths) return lower_series(z, paths);
    return 1.0 - upper_sum(z, paths);
}

double ccdf_snr_dest(double x, int paths, double lambda) {
    if (!(x > 0)) return 1.0;
    const double z = x / lambda;
    if (z < paths) return 1.0 - lower_series(z, paths);
    return upper_sum(z, paths);
}

double pdf_snr_dest(double x, int paths, double lambda) {
    if (x < 0) return 0.0;
    if (x == 0) return paths == 1 ? 1.0 / lambda : 0.0;
    return poisson_term(x / lambda, paths - 1) / lambda;
}

double cdf_snr_eve_max(double x, int eavesdroppers, int paths, double lambda) {
    return std::pow(cdf_snr_dest(x, paths, lambda), eavesdroppers);
}

double pdf_snr_eve_max(double x, int eavesdroppers, int paths, double lambda) {
    const double pdf = pdf_snr_dest(x, paths, lambda);
    if (eavesdroppers == 1) return pdf;
    return eavesdroppers * std::pow(cdf_snr_dest(x, paths, lambda), eavesdroppers - 1) * pdf;
}

double cdf_snr_dest_mixture_ka(double x, const SystemConfig& cfg) {
    if (x < 0) return 0.0;
    const double zeta = cfg.backhaul_reliability;
    return (1.0 - zeta) + zeta * cdf_snr_dest(x, cfg.dest_paths, cfg.dest_snr);
}

}  // namespace secrecy::channel
