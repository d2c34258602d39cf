#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpb/analysis.hpp"
#include "cpb/decode.hpp"

namespace cpb {

enum class SimMode { Formula, Execute };

/// Repair-traffic simulation under uniform single-node failures. Formula
/// mode evaluates the exact per-node profile; execute mode encodes random
/// stripes, runs every repair, and cross-checks the measured ledgers
/// against the formulas.
struct SimConfig {
    struct GridEntry {
        int k, r, L, m;
    };
    std::vector<GridEntry> grid;
    SimMode mode = SimMode::Formula;
    int trials = 10;            // stripes per grid entry in execute mode
    std::uint64_t seed = 1;     // stripe-data RNG seed, recorded in the CSV
    bool skip_mds_verify = false;
    std::uint64_t verify_cap = kDefaultMdsCap;
};

struct SimRow {
    int k, r, L;
    Rational rate;        // k / n
    Rational gamma_sys, gamma_par, gamma_all;
    Rational reduction;   // 1 - gamma_all
    SimMode mode;
    bool consistent;      // execute mode: measured ledger totals == formula
};

std::vector<SimRow> simulate(const SimConfig& config);

/// The built-in seven-entry high-rate grid used by the CLI's --table3 mode.
std::vector<SimConfig::GridEntry> builtin_grid();

/// One rate-sweep row: the proposed code's exact all-node ratio next to the
/// published bound values of the comparators, normalized the same way.
struct SweepRow {
    int k;
    Rational proposed_all;
    double oop_data_bound;
    double c1_data_bound;
    double c1_par_bound;
    double rsr1_data_bound;
    double msr_norm;  // (n-1)/(kr)
};

std::vector<SweepRow> sweep_rate(int r, int k_min, int k_max, int L);

/// CSV renderings; byte-deterministic for a given config.
/// Row schema: k,r,L,rate,gamma_sys,gamma_par,gamma_all,reduction_pct,mode,consistent
std::string rows_to_csv(const std::vector<SimRow>& rows);
std::string rows_to_csv(const std::vector<SimRow>& rows, const SimConfig& config);
/// Sweep schema: k,proposed_all,oop_data_bound,c1_data_bound,c1_par_bound,rsr1_data_bound,msr_norm
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace cpb
