#pragma once

// Reproducible parameter sweeps over spec grids.  Rows come back in
// generation order regardless of the number of worker threads.

#include <string>

#include "charsum/verify.hpp"

namespace charsum {

struct SweepGrid {
    std::vector<i64> ps, ms, ks, ls, ws, As, Bs;
    i64 c = 1;
    i64 max_q = 1'000'000;
    i64 max_specs = 10'000;

    // Flat key=range text, e.g. "p=3,5,7; m=2..5; k=1..6; l=-3..3; w=1..3; A=-5..5; B=1..5".
    static SweepGrid parse(const std::string& text);
    // The acceptance grid.
    static SweepGrid default_grid();
};

struct SweepRow {
    i64 p = 0;
    int m = 0;
    i64 A = 0, B = 0, k = 0, l = 0, w = 0, c = 1;
    bool skipped = false;
    std::string skip_reason;
    int n = 0, t = 0;
    i64 d = 1;
    std::string regime;
    double s2 = 0.0;                         // numeric |S|^2
    long long expected_s2 = -1;              // magnitude-law constant, -1 when n/a
    std::string verdict;                     // pass | fail | skip
    std::vector<std::pair<i64, i64>> oracle_sparse;  // reduced; kept when requested
    std::vector<std::pair<i64, i64>> closed_sparse;
    i64 ring = 0;
    SpecVerdicts verdicts;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    i64 passed = 0, failed = 0, skipped = 0;
};

// Throws BudgetExceeded when the grid generates more than max_specs specs.
SweepResult run_sweep(const SweepGrid& grid, int jobs = 1, bool keep_values = false);

}  // namespace charsum
