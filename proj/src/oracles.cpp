#include "secrecy/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <queue>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "secrecy/channel.hpp"

namespace secrecy::oracles {

// ---------------------------------------------------------------------------
// Philox

namespace {

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = std::uint64_t{a} * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline Philox4x32::Counter philox_round(const Philox4x32::Counter& c, const Philox4x32::Key& k) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(0xD2511F53u, c[0], hi0, lo0);
    mulhilo(0xCD9E8D57u, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) {
    ctr = philox_round(ctr, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
        ctr = philox_round(ctr, key);
    }
    return ctr;
}

ChunkStream::ChunkStream(std::uint64_t seed, std::uint64_t chunk)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, chunk_(chunk) {}

double ChunkStream::uniform() {
    if (used_ >= 4) {
        buf_ = Philox4x32::generate({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                     static_cast<std::uint32_t>(chunk_), static_cast<std::uint32_t>(chunk_ >> 32)},
                                    key_);
        ++block_;
        used_ = 0;
    }
    const std::uint64_t bits = (std::uint64_t{buf_[used_]} << 32) | buf_[used_ + 1];
    used_ += 2;
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double ChunkStream::exponential() { return -std::log(uniform()); }

double ChunkStream::gamma(int paths, double scale) {
    double s = 0;
    for (int i = 0; i < paths; ++i) s += exponential();
    return scale * s;
}

// ---------------------------------------------------------------------------
// Monte Carlo

TrialDraws draw_trial(const SystemConfig& cfg, ChunkStream& rng) {
    if (cfg.transmitters > 16) throw std::invalid_argument("Monte Carlo supports K <= 16");
    TrialDraws d;
    for (int k = 0; k < cfg.transmitters; ++k) {
        d.dest[k] = rng.gamma(cfg.dest_paths, cfg.dest_snr);
        double strongest = 0;
        for (int n = 0; n < cfg.eavesdroppers; ++n) strongest = std::max(strongest, rng.gamma(cfg.eve_paths, cfg.eve_snr));
        d.eve[k] = strongest;
        d.active[k] = rng.uniform() < cfg.backhaul_reliability;
    }
    return d;
}

double secrecy_rate(const SystemConfig& cfg, const TrialDraws& d, Scheme scheme, Knowledge knowledge) {
    int best = -1;
    double best_score = 0;
    for (int k = 0; k < cfg.transmitters; ++k) {
        if (knowledge == Knowledge::KA && !d.active[k]) continue;
        const double score = scheme == Scheme::SS ? d.dest[k] : (1 + d.dest[k]) / (1 + d.eve[k]);
        if (best < 0 || score > best_score) {
            best = k;
            best_score = score;
        }
    }
    if (best < 0 || !d.active[best]) return 0.0;
    return std::max(0.0, std::log2((1 + d.dest[best]) / (1 + d.eve[best])));
}

double mc_trial(const SystemConfig& cfg, ChunkStream& rng) {
    return secrecy_rate(cfg, draw_trial(cfg, rng), cfg.scheme, cfg.knowledge);
}

namespace {

// Running mean and sum of squared deviations.
struct Moments {
    std::uint64_t n = 0;
    double mean = 0;
    double m2 = 0;

    void add(double v) {
        ++n;
        const double delta = v - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (v - mean);
    }

    void merge(const Moments& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double total = static_cast<double>(n + o.n);
        const double delta = o.mean - mean;
        mean += delta * static_cast<double>(o.n) / total;
        m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
        n += o.n;
    }

    MonteCarloEstimate estimate(std::uint64_t seed) const {
        MonteCarloEstimate e;
        e.mean = mean;
        e.trials = n;
        e.seed = seed;
        e.stderr_ = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
        return e;
    }
};

struct ChunkResult {
    std::array<std::uint64_t, 4> outage{};
    std::array<Moments, 4> rate{};
};

ChunkResult run_chunk(const SystemConfig& cfg, std::uint64_t seed, std::uint64_t chunk, std::uint64_t count) {
    ChunkResult r;
    ChunkStream rng(seed, chunk);
    for (std::uint64_t t = 0; t < count; ++t) {
        const TrialDraws d = draw_trial(cfg, rng);
        for (int v = 0; v < 4; ++v) {
            const double rate = secrecy_rate(cfg, d, Scheme(v / 2), Knowledge(v % 2));
            if (rate <= cfg.rate_threshold) ++r.outage[v];
            r.rate[v].add(rate);
        }
    }
    return r;
}

}  // namespace

VariantEstimates mc_all_variants(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    cfg.validate();
    if (trials < kMinTrials) throw std::invalid_argument("Monte Carlo needs at least 10^4 trials");
    const std::uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<ChunkResult> results(chunks);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            const std::uint64_t count = std::min(kChunkTrials, trials - c * kChunkTrials);
            results[c] = run_chunk(cfg, seed, c, count);
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    VariantEstimates out;
    for (int v = 0; v < 4; ++v) {
        std::uint64_t outage = 0;
        Moments rate;
        for (const auto& r : results) {
            outage += r.outage[v];
            rate.merge(r.rate[v]);
        }
        MonteCarloEstimate s;
        s.trials = trials;
        s.seed = seed;
        s.mean = static_cast<double>(outage) / static_cast<double>(trials);
        const double n = static_cast<double>(trials);
        s.stderr_ = std::sqrt(s.mean * (1 - s.mean) / (n - 1));
        out.sop[v / 2][v % 2] = s;
        out.esr[v / 2][v % 2] = rate.estimate(seed);
    }
    return out;
}

MonteCarloEstimate mc_sop(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    return mc_all_variants(cfg, trials, seed, threads).sop_of(cfg.scheme, cfg.knowledge);
}

MonteCarloEstimate mc_esr(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    return mc_all_variants(cfg, trials, seed, threads).esr_of(cfg.scheme, cfg.knowledge);
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod_panel(const std::function<double(double)>& f, double a, double b) {
    double err = 0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, &err);
    return {a, b, v, err};
}

}  // namespace

QuadratureResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureSettings& s) {
    std::priority_queue<Panel> panels;
    Panel first = kronrod_panel(f, a, b);
    double total = first.value;
    double error = first.error;
    panels.push(first);
    int subdivisions = 1;
    auto done = [&] { return error <= std::max(s.abs_tol, s.rel_tol * std::abs(total)); };
    while (!done()) {
        if (subdivisions >= s.max_subdivisions)
        {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "quadrature: tolerance not met within %d subdivisions (estimate %.10g, error bound %.3g)",
                          s.max_subdivisions, total, error);
            throw QuadratureError(msg, total, error);
        }
        const Panel worst = panels.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted at double resolution
        panels.pop();
        const Panel left = kronrod_panel(f, worst.a, mid);
        const Panel right = kronrod_panel(f, mid, worst.b);
        panels.push(left);
        panels.push(right);
        ++subdivisions;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
    }
    // Final re-sum so the running updates leave no drift.
    total = 0;
    error = 0;
    while (!panels.empty()) {
        total += panels.top().value;
        error += panels.top().error;
        panels.pop();
    }
    return {total, error, subdivisions};
}

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double lo, double scale,
                                         const QuadratureSettings& s) {
    auto mapped = [&](double u) {
        const double w = 1.0 - u;
        if (!(w > 0)) return 0.0;
        const double t = lo - scale * std::log(w);
        if (!std::isfinite(t)) return 0.0;
        const double v = f(t) * scale / w;
        return std::isfinite(v) ? v : 0.0;
    };
    return integrate_finite(mapped, 0.0, 1.0, s);
}

namespace {

// 1 - (1 - p)^K without cancellation.
double one_minus_power(double p, int K) {
    if (p >= 1) return 1.0;
    return -std::expm1(K * std::log1p(-p));
}

// Twice the decay length, so the mapped integrand vanishes at u = 1.
double eve_scale(const SystemConfig& cfg) { return 2 * cfg.eve_snr * cfg.eve_paths; }

}  // namespace

double quad_ccdf_ratio(double x, const SystemConfig& cfg, const QuadratureSettings& s) {
    cfg.validate();
    if (x < 1) throw std::domain_error("quad_cdf_ratio: x must be >= 1");
    const double zeta = cfg.backhaul_reliability;
    if (zeta == 0) return 0.0;
    const int K = cfg.transmitters;
    const bool ka = cfg.knowledge == Knowledge::KA;
    // Activity weight inside the selection (KA) or as an outer gate (KU).
    const double inner_zeta = ka ? zeta : 1.0;
    const double gate = ka ? 1.0 : zeta;
    auto q_dest = [&](double y) { return channel::ccdf_snr_dest(x * (1 + y) - 1, cfg.dest_paths, cfg.dest_snr); };
    auto f_eve = [&](double y) { return channel::pdf_snr_eve_max(y, cfg.eavesdroppers, cfg.eve_paths, cfg.eve_snr); };

    if (cfg.scheme == Scheme::SS && K > 1) {
        auto integrand = [&](double y) { return one_minus_power(inner_zeta * q_dest(y), K) * f_eve(y); };
        return gate * integrate_semi_infinite(integrand, 0.0, eve_scale(cfg), s).value;
    }
    auto integrand = [&](double y) { return q_dest(y) * f_eve(y); };
    const double bracket = integrate_semi_infinite(integrand, 0.0, eve_scale(cfg), s).value;
    return gate * one_minus_power(inner_zeta * bracket, K);
}

double quad_cdf_ratio(double x, const SystemConfig& cfg, const QuadratureSettings& s) {
    return 1.0 - quad_ccdf_ratio(x, cfg, s);
}

double quad_sop(const SystemConfig& cfg, const QuadratureSettings& s) { return quad_cdf_ratio(cfg.rho(), cfg, s); }

double quad_esr(const SystemConfig& cfg, const QuadratureSettings& s) {
    cfg.validate();
    if (cfg.backhaul_reliability == 0) return 0.0;
    auto integrand = [&](double x) { return quad_ccdf_ratio(x, cfg, s) / x; };
    const double scale = std::max(1.0, 2 * cfg.dest_snr * cfg.dest_paths);
    return integrate_semi_infinite(integrand, 1.0, scale, s).value / std::numbers::ln2;
}

}  // namespace secrecy::oracles
