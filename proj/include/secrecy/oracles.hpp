#pragma once

// Independent references for the closed forms: a link-level Monte Carlo
// simulator and adaptive quadrature of the defining integrals.

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "secrecy/config.hpp"

namespace secrecy::oracles {

// ---------------------------------------------------------------------------
// Random numbers

/// Philox4x32-10 counter-based generator.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;
    static Counter generate(Counter ctr, Key key);
};

/// Stream of uniforms for one (seed, chunk) pair. Draw i of the stream is a
/// pure function of (seed, chunk, i).
class ChunkStream {
public:
    ChunkStream(std::uint64_t seed, std::uint64_t chunk);
    /// Uniform on the open interval (0, 1), 53 random bits.
    double uniform();
    double exponential();
    /// Gamma(paths, scale) as scale times a sum of `paths` unit exponentials.
    double gamma(int paths, double scale);

private:
    Philox4x32::Key key_;
    std::uint64_t block_ = 0;
    std::uint64_t chunk_;
    Philox4x32::Counter buf_{};
    int used_ = 4;
};

// ---------------------------------------------------------------------------
// Monte Carlo

struct MonteCarloEstimate {
    double mean = 0;
    double stderr_ = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kChunkTrials = 8192;
inline constexpr std::uint64_t kMinTrials = 10'000;

/// Per-transmitter draws of one trial.
struct TrialDraws {
    std::array<double, 16> dest{};
    std::array<double, 16> eve{};  // strongest eavesdropper per transmitter
    std::array<bool, 16> active{};
};

TrialDraws draw_trial(const SystemConfig& cfg, ChunkStream& rng);

/// Secrecy rate of one trial under cfg.scheme / cfg.knowledge.
double secrecy_rate(const SystemConfig& cfg, const TrialDraws& d, Scheme scheme, Knowledge knowledge);
double mc_trial(const SystemConfig& cfg, ChunkStream& rng);

/// SOP and ESR estimates for all four scheme/knowledge variants from one
/// shared set of draws; index [scheme][knowledge]. The entry matching
/// cfg.scheme/knowledge is bit-identical to mc_sop / mc_esr.
struct VariantEstimates {
    std::array<std::array<MonteCarloEstimate, 2>, 2> sop;
    std::array<std::array<MonteCarloEstimate, 2>, 2> esr;
    const MonteCarloEstimate& sop_of(Scheme s, Knowledge k) const { return sop[int(s)][int(k)]; }
    const MonteCarloEstimate& esr_of(Scheme s, Knowledge k) const { return esr[int(s)][int(k)]; }
};

/// threads = 0 picks the hardware concurrency. Results do not depend on it.
VariantEstimates mc_all_variants(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                                 unsigned threads = 0);

MonteCarloEstimate mc_sop(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);
MonteCarloEstimate mc_esr(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureSettings {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
    enum class Tail { exp_map } tail_transform = Tail::exp_map;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate(estimate), error_bound(error_bound) {}
    double estimate;
    double error_bound;
};

struct QuadratureResult {
    double value = 0;
    double error = 0;
    int subdivisions = 0;
};

/// Globally adaptive Gauss-Kronrod (61-point) on [a, b].
QuadratureResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureSettings& s = {});

/// int_lo^inf f(t) dt through t = lo + scale * (-ln(1 - u)), u in [0, 1).
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double lo, double scale,
                                         const QuadratureSettings& s = {});

/// 1 - F(x) by quadrature, x >= 1. Computed directly, no 1 - F cancellation.
double quad_ccdf_ratio(double x, const SystemConfig& cfg, const QuadratureSettings& s = {});
double quad_cdf_ratio(double x, const SystemConfig& cfg, const QuadratureSettings& s = {});
double quad_sop(const SystemConfig& cfg, const QuadratureSettings& s = {});
double quad_esr(const SystemConfig& cfg, const QuadratureSettings& s = {});

}  // namespace secrecy::oracles
