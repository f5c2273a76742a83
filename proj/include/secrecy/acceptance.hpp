#pragma once

// Acceptance criteria as runnable checks. Shared by the acceptance test
// binary and `secrecy-lab selftest`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "secrecy/config.hpp"

namespace secrecy::acceptance {

struct Outcome {
    int criterion = 0;
    bool pass = false;
    std::string title;
    std::string detail;                 // one-line numeric summary
    std::vector<std::string> failures;  // first few offending cases
};

/// One scheme/knowledge variant at one point of the cross-oracle grid.
struct GridRow {
    SystemConfig cfg;
    double lambda_d_db = 0;
    double sop = 0, sop_quad = 0, sop_mc = 0, sop_mc_stderr = 0;
    double esr = 0, esr_quad = 0, esr_mc = 0, esr_mc_stderr = 0;
    bool has_esr_quad = false;
};

struct GridOptions {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 20240611;
    bool quick = false;  // reduced grid and trial count
    unsigned threads = 1;
    std::function<void(std::size_t done, std::size_t total)> progress;
};

/// K,N in {1,2,3}, M_D,M_E in {1,2}, zeta in {0.5,0.9,1}, lambda_D in {0,10,20,30} dB,
/// lambda_E = 5 dB, R_th = 1, all four variants. ESR quadrature only where K,N <= 2.
std::vector<GridRow> compute_oracle_grid(const GridOptions& opt);
void write_grid(const std::string& path, const std::vector<GridRow>& grid);
std::vector<GridRow> read_grid(const std::string& path);

Outcome criterion_1();
Outcome criterion_2();
Outcome criterion_3(const std::vector<GridRow>& grid);
Outcome criterion_4(const std::vector<GridRow>& grid);
Outcome criterion_5(bool quick = false);
Outcome criterion_6(bool quick = false);
Outcome criterion_7();
Outcome criterion_8(const std::vector<GridRow>& grid);
Outcome criterion_9();

/// "criterion N: PASS|FAIL  title  detail"
std::string format_line(const Outcome& o);

}  // namespace secrecy::acceptance
