// secrecy-lab: SOP / ESR sweeps for transmitter selection with unreliable backhaul.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "secrecy/acceptance.hpp"
#include "secrecy/algebra.hpp"
#include "secrecy/sop.hpp"
#include "secrecy/sweep.hpp"

using namespace secrecy;

namespace {

constexpr int kExitTolerance = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::optional<std::uint64_t> flag_seed(const CLI::Option* opt, std::uint64_t value) {
    if (opt->count() == 0) return std::nullopt;
    return value;
}

sweep::SweepSpec load(const std::string& path, std::optional<std::uint64_t> seed) {
    auto spec = sweep::load_spec(path);
    spec.seed = sweep::resolve_seed(seed, std::getenv("SECRECY_LAB_SEED"), spec.seed);
    return spec;
}

int cmd_run(const std::string& config, const std::string& out, bool strict, unsigned threads,
            std::optional<std::uint64_t> seed) {
    const auto spec = load(config, seed);
    const auto table = sweep::evaluate(spec, threads);
    sweep::write_csv(out, table);
    if (spec.svg)
        for (const auto& f : sweep::write_svgs(out, table)) std::cerr << "wrote " << f << '\n';

    std::size_t flagged = 0;
    for (const auto& r : table.rows) {
        const auto flags = sweep::row_flags(table, r);
        if (flags.empty()) continue;
        ++flagged;
        std::cerr << "flag: " << r.variant_id << " lambda_D_dB=" << sweep::format_number(r.lambda_d_db);
        for (const auto& f : flags) std::cerr << "; " << f;
        std::cerr << '\n';
    }
    std::cerr << "wrote " << table.rows.size() << " rows to " << out << " (seed " << spec.seed << ", " << flagged
              << " flagged)\n";
    return strict && flagged ? kExitTolerance : 0;
}

int cmd_compare(const std::string& config, unsigned threads, std::optional<std::uint64_t> seed) {
    auto spec = load(config, seed);
    spec.outputs = {sweep::Output::sop_exact, sweep::Output::esr_exact, sweep::Output::mc, sweep::Output::quad};
    const auto table = sweep::evaluate(spec, threads);
    auto col = [&](const char* name) {
        return static_cast<std::size_t>(std::find(table.columns.begin(), table.columns.end(), name) -
                                        table.columns.begin());
    };
    const std::size_t sop = col("sop_exact"), esr = col("esr_exact"), sq = col("sop_quad_delta"),
                      sm = col("sop_mc_delta"), ss = col("mc_sop_stderr"), eq = col("esr_quad_delta"),
                      em = col("esr_mc_delta"), es = col("mc_esr_stderr");

    std::printf("%-22s %8s %12s %10s %9s %10s %10s %9s  %s\n", "variant", "lD_dB", "sop", "|d_quad|", "|d_mc|/se",
                "esr", "|d_quad|", "|d_mc|/se", "result");
    std::size_t failed = 0;
    double max_sq = 0, max_sz = 0, max_eq = 0, max_em = 0;
    for (const auto& r : table.rows) {
        const auto& v = r.values;
        auto sigmas = [](double d, double se) { return se > 0 ? std::abs(d) / se : (d == 0 ? 0.0 : INFINITY); };
        const bool ok = sweep::row_flags(table, r).empty();
        failed += !ok;
        max_sq = std::max(max_sq, std::abs(v[sq]));
        max_sz = std::max(max_sz, sigmas(v[sm], v[ss]));
        max_eq = std::max(max_eq, std::abs(v[eq]));
        max_em = std::max(max_em, std::abs(v[em]));
        std::printf("%-22s %8g %12.6e %10.3e %9.2f %10.6f %10.3e %9.2f  %s\n", r.variant_id.c_str(), r.lambda_d_db,
                    v[sop], std::abs(v[sq]), sigmas(v[sm], v[ss]), v[esr], std::abs(v[eq]), sigmas(v[em], v[es]),
                    ok ? "PASS" : "FAIL");
    }

    // Diversity check: slope of log10 SOP per decade of lambda_D over the last two axis points.
    for (const auto& var : spec.variants) {
        if (var.cfg.backhaul_reliability != 1 || spec.axis_values.size() < 2) continue;
        const double x1 = spec.axis_values[spec.axis_values.size() - 2], x2 = spec.axis_values.back();
        double p1 = 0, p2 = 0;
        for (const auto& r : table.rows) {
            if (r.variant_id != var.id) continue;
            if (r.lambda_d_db == x1) p1 = r.values[sop];
            if (r.lambda_d_db == x2) p2 = r.values[sop];
        }
        const double slope = -(std::log10(p2) - std::log10(p1)) / ((x2 - x1) / 10);
        std::printf("diversity %s: measured slope %.6f, K*M_D = %d\n", var.id.c_str(), slope,
                    sop::diversity_order(var.cfg));
    }
    std::printf(
        "summary: rows=%zu pass=%zu fail=%zu max_sop_quad=%.3e max_sop_mc_sigma=%.3f max_esr_quad=%.3e "
        "max_esr_mc=%.3e seed=%llu\n",
        table.rows.size(), table.rows.size() - failed, failed, max_sq, max_sz, max_eq, max_em,
        static_cast<unsigned long long>(spec.seed));
    return failed ? kExitTolerance : 0;
}

int cmd_selftest(bool quick, unsigned threads, std::optional<std::uint64_t> seed) {
    namespace acc = acceptance;
    acc::GridOptions opt;
    opt.quick = quick;
    opt.threads = threads;
    if (quick) opt.trials = 100'000;
    opt.seed = sweep::resolve_seed(seed, std::getenv("SECRECY_LAB_SEED"), opt.seed);
    opt.progress = [](std::size_t done, std::size_t total) {
        if (done % 16 == 0 || done == total) std::cerr << "\roracle grid " << done << '/' << total << std::flush;
    };
    const auto grid = acc::compute_oracle_grid(opt);
    std::cerr << '\n';

    std::vector<acc::Outcome> out;
    out.push_back(acc::criterion_1());
    out.push_back(acc::criterion_2());
    out.push_back(acc::criterion_3(grid));
    out.push_back(acc::criterion_4(grid));
    out.push_back(acc::criterion_5(quick));
    out.push_back(acc::criterion_6(quick));
    out.push_back(acc::criterion_7());
    out.push_back(acc::criterion_8(grid));
    out.push_back(acc::criterion_9());

    double sq = 0, eq = 0, sz = 0, em = 0;
    for (const auto& r : grid) {
        sq = std::max(sq, std::abs(r.sop - r.sop_quad));
        if (r.sop_mc_stderr > 0) sz = std::max(sz, std::abs(r.sop - r.sop_mc) / r.sop_mc_stderr);
        if (r.has_esr_quad) eq = std::max(eq, std::abs(r.esr - r.esr_quad));
        em = std::max(em, std::abs(r.esr - r.esr_mc));
    }
    int passed = 0;
    for (const auto& o : out) {
        std::printf("%s\n", acc::format_line(o).c_str());
        for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
        passed += o.pass;
    }
    std::printf("max deltas: sop_quad=%.3e sop_mc_sigma=%.3f esr_quad=%.3e esr_mc=%.3e (grid rows %zu, trials %llu)\n",
                sq, sz, eq, em, grid.size(), static_cast<unsigned long long>(opt.trials));
    std::printf("selftest summary: passed=%d failed=%d\n", passed, static_cast<int>(out.size()) - passed);
    return passed == static_cast<int>(out.size()) ? 0 : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secrecy-lab: secrecy outage probability and ergodic secrecy rate of transmitter selection"};
    app.require_subcommand(1);

    std::string config, out;
    bool strict = false, quick = false;
    unsigned threads = 1;
    std::uint64_t seed = 0;

    auto* run = app.add_subcommand("run", "evaluate a sweep and write CSV");
    run->add_option("--config", config, "JSON sweep config")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out, "CSV output path")->required();
    run->add_flag("--strict", strict, "nonzero exit on any tolerance flag");
    run->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
    auto* run_seed = run->add_option("--seed", seed, "overrides SECRECY_LAB_SEED and the config seed");

    auto* cmp = app.add_subcommand("compare", "closed forms against quadrature and Monte Carlo, per row");
    cmp->add_option("--config", config, "JSON sweep config")->required()->check(CLI::ExistingFile);
    cmp->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
    auto* cmp_seed = cmp->add_option("--seed", seed, "overrides SECRECY_LAB_SEED and the config seed");

    auto* self = app.add_subcommand("selftest", "acceptance checks on the cross-oracle grid");
    self->add_flag("--quick", quick, "reduced grid and trial count");
    self->add_option("--threads", threads, "Monte Carlo threads")->check(CLI::Range(1u, 1024u));
    auto* self_seed = self->add_option("--seed", seed, "Monte Carlo seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config, out, strict, threads, flag_seed(run_seed, seed));
        if (*cmp) return cmd_compare(config, threads, flag_seed(cmp_seed, seed));
        if (*self) return cmd_selftest(quick, threads, flag_seed(self_seed, seed));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const algebra::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
