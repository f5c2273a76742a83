#pragma once

// Per-link SNR distributions. A destination link with M resolvable paths of
// average SNR lambda each has a Gamma(M, lambda) post-processing SNR; the
// eavesdropper side of a transmitter is the maximum over N such links.

#include "secrecy/config.hpp"

namespace secrecy::channel {

/// P[gamma <= x] for gamma ~ Gamma(M, lambda); 0 for x <= 0.
double cdf_snr_dest(double x, int paths, double lambda);

/// 1 - cdf_snr_dest, computed without cancellation in the upper tail.
double ccdf_snr_dest(double x, int paths, double lambda);

double pdf_snr_dest(double x, int paths, double lambda);

/// CDF of the strongest of N i.i.d. eavesdropper links.
double cdf_snr_eve_max(double x, int eavesdroppers, int paths, double lambda);
double pdf_snr_eve_max(double x, int eavesdroppers, int paths, double lambda);

/// Destination SNR gated by a Bernoulli(zeta) backhaul: point mass 1-zeta at 0
/// plus zeta times the Gamma law. Right-continuous, so x = 0 gives 1 - zeta.
double cdf_snr_dest_mixture_ka(double x, const SystemConfig& cfg);

}  // namespace secrecy::channel
