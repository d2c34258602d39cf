#include "cpb/sim.hpp"

#include <cstdio>
#include <sstream>

#include "cpb/repair.hpp"

namespace cpb {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::string render_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

SimRow formula_row(const SimConfig::GridEntry& e) {
    const BandwidthProfile prof = exact_profile(e.k, e.r, e.L);
    SimRow row;
    row.k = e.k;
    row.r = e.r;
    row.L = e.L;
    row.rate = Rational(e.k, e.k + e.r);
    row.gamma_sys = prof.gamma_sys;
    row.gamma_par = prof.gamma_par;
    row.gamma_all = prof.gamma_all;
    row.reduction = prof.rs_reduction;
    row.mode = SimMode::Formula;
    row.consistent = true;
    return row;
}

SimRow execute_row(const SimConfig& config, std::size_t index) {
    const auto& e = config.grid[index];
    auto field = gf::build_field(e.m);
    const CodeParams params = make_params(e.k + e.r, e.k, e.L, field);

    if (!config.skip_mds_verify && !params.field_bound_ok) {
        const MdsReport report = verify_mds(params, config.verify_cap);
        if (!report.mds()) {
            std::ostringstream os;
            os << "simulate: (k=" << e.k << ", r=" << e.r << ", L=" << e.L
               << ", m=" << e.m << ") is not MDS: " << report.failures.size()
               << " failing patterns out of " << report.patterns_checked;
            throw MathError(os.str());
        }
    }

    const BandwidthProfile prof = exact_profile(e.k, e.r, e.L);
    const int n = e.k + e.r;
    long long sum_data = 0;
    long long sum_par = 0;
    bool consistent = true;
    std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(index + 1)));
    for (int trial = 0; trial < config.trials; ++trial) {
        const DataMatrix data = random_data_matrix(params, rng);
        const CodedStripe stripe = encode(params, data);
        for (int node = 1; node <= n; ++node) {
            const RepairReport rep = repair_node(params, node, stripe);
            (node <= e.k ? sum_data : sum_par) += rep.bandwidth;
            if (rep.bandwidth != rep.predicted) consistent = false;
            if (rep.recovered != stripe.node_row(node)) {
                std::ostringstream os;
                os << "simulate: repair of node " << node << " (k=" << e.k
                   << ", r=" << e.r << ", L=" << e.L
                   << ") did not reproduce the stored symbols";
                throw MathError(os.str());
            }
        }
    }

    // Averages are exact; bandwidth is data-oblivious, so the measured means
    // must equal the formula profile exactly.
    const long long kr = static_cast<long long>(e.k) * e.r;
    const long long trials = config.trials;
    SimRow row = formula_row(e);
    row.gamma_sys = Rational(sum_data, trials * e.k * kr);
    row.gamma_par = Rational(sum_par, trials * e.r * kr);
    row.gamma_all = Rational(sum_data + sum_par, trials * n * kr);
    row.reduction = Rational(1) - row.gamma_all;
    row.mode = SimMode::Execute;
    if (!(row.gamma_sys == prof.gamma_sys) || !(row.gamma_par == prof.gamma_par) ||
        !(row.gamma_all == prof.gamma_all))
        consistent = false;
    row.consistent = consistent;
    return row;
}

}  // namespace

std::vector<SimRow> simulate(const SimConfig& config) {
    std::vector<SimRow> rows;
    for (std::size_t i = 0; i < config.grid.size(); ++i) {
        const auto& e = config.grid[i];
        if (config.mode == SimMode::Formula) {
            make_group_layout(e.k, e.r, e.L);  // validate like the encoder would
            rows.push_back(formula_row(e));
        } else {
            rows.push_back(execute_row(config, i));
        }
    }
    return rows;
}

std::vector<SimConfig::GridEntry> builtin_grid() {
    return {
        {12, 4, 3, 8}, {24, 4, 3, 8}, {36, 4, 3, 8}, {52, 4, 3, 8},
        {30, 5, 3, 8}, {36, 6, 3, 8}, {48, 8, 4, 8},
    };
}

std::vector<SweepRow> sweep_rate(int r, int k_min, int k_max, int L) {
    std::vector<SweepRow> rows;
    for (int k = k_min; k <= k_max; ++k) {
        SweepRow row;
        row.k = k;
        row.proposed_all = exact_profile(k, r, L).gamma_all;
        const auto bounds = comparator_bounds(k, r);
        auto find = [&](ComparatorCode code, RatioKind kind) {
            for (const auto& b : bounds)
                if (b.code == code && b.kind == kind && b.evaluated) return b.value;
            return 0.0;
        };
        row.oop_data_bound = find(ComparatorCode::Oop, RatioKind::Data);
        row.c1_data_bound = find(ComparatorCode::C1, RatioKind::Data);
        row.c1_par_bound = find(ComparatorCode::C1, RatioKind::Parity);
        row.rsr1_data_bound = find(ComparatorCode::RsrI, RatioKind::Data);
        row.msr_norm = static_cast<double>(k + r - 1) /
                       (static_cast<double>(k) * r);
        rows.push_back(row);
    }
    return rows;
}

std::string rows_to_csv(const std::vector<SimRow>& rows) {
    std::ostringstream os;
    os << "k,r,L,rate,gamma_sys,gamma_par,gamma_all,reduction_pct,mode,consistent\n";
    for (const auto& row : rows) {
        os << row.k << "," << row.r << "," << row.L << ","
           << render_fixed(row.rate, 3) << "," << render_fixed(row.gamma_sys, 4)
           << "," << render_fixed(row.gamma_par, 4) << ","
           << render_fixed(row.gamma_all, 4) << ","
           << render_fixed(row.reduction * Rational(100), 1) << ","
           << (row.mode == SimMode::Formula ? "formula" : "execute") << ","
           << (row.consistent ? "true" : "false") << "\n";
    }
    return os.str();
}

std::string rows_to_csv(const std::vector<SimRow>& rows, const SimConfig& config) {
    std::string out;
    if (config.mode == SimMode::Execute) {
        std::ostringstream os;
        os << "# seed=" << config.seed << " trials=" << config.trials << "\n";
        out = os.str();
    }
    return out + rows_to_csv(rows);
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "k,proposed_all,oop_data_bound,c1_data_bound,c1_par_bound,"
          "rsr1_data_bound,msr_norm\n";
    for (const auto& row : rows) {
        os << row.k << "," << render_fixed(row.proposed_all, 6) << ","
           << render_double(row.oop_data_bound) << ","
           << render_double(row.c1_data_bound) << ","
           << render_double(row.c1_par_bound) << ","
           << render_double(row.rsr1_data_bound) << ","
           << render_double(row.msr_norm) << "\n";
    }
    return os.str();
}

}  // namespace cpb
