#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpb/bigint.hpp"
#include "cpb/code.hpp"
#include "cpb/rational.hpp"

namespace cpb {

/// Per-node repair bandwidths plus the averaged ratios, all as exact
/// rationals normalized by the kr data symbols of a stripe.
struct BandwidthProfile {
    std::vector<int> per_node;  // size n, node order
    Rational avg_data;
    Rational avg_parity;
    Rational avg_all;
    Rational gamma_sys;
    Rational gamma_par;
    Rational gamma_all;
    Rational rs_reduction;  // 1 - gamma_all
};

BandwidthProfile exact_profile(int k, int r, int L);
BandwidthProfile exact_profile(const CodeParams& p);

/// Closed-form data-node ratio; requires L | k (use exact_profile otherwise).
Rational gamma_sys_closed(int k, int r, int L);
Rational gamma_sys_closed(const CodeParams& p);

/// Closed-form parity-node ratio; requires L | k.
Rational gamma_par_closed(int k, int r, int L);
Rational gamma_par_closed(const CodeParams& p);

/// Group count minimizing the repair ratio: evaluates both integer
/// neighbours of sqrt(2r-1) (clamped to [2, r]) on the large-k data-node
/// ratio, or on the exact all-node ratio when k is given; ties pick the
/// smaller L.
int optimal_L(int r, std::optional<int> k = std::nullopt);

/// Minimum possible repair bandwidth of an (n, k, l = n-k) MDS array code,
/// in symbols per node: (n-1)*l/(n-k) = n-1.
int msr_bound(const CodeParams& p);
int msr_bound(int n);

enum class ComparatorCode { RsrI, RsrII, Repb, Oop, C0, C1, FirstCode23, Proposed };
enum class RatioKind { Data, Parity, All };

const char* comparator_name(ComparatorCode c);

/// One published lower-bound value for a comparator construction, evaluated
/// at finite (k, r) with the scheme's group parameter set to sqrt(2r-1)
/// where the published form prescribes it.
struct ComparatorBound {
    ComparatorCode code;
    RatioKind kind;
    double value;
    std::string note;  // scheme parameters echoed, or the omission reason
    bool evaluated;    // false when the entry is omitted (with note)
};

std::vector<ComparatorBound> comparator_bounds(int k, int r);

/// Large-k bound levels used by the inequality suite (1/k terms dropped).
double oop_data_bound_kinf(int r);
double oop_parity_bound_kinf(int r);
double c1_data_bound_kinf(int r);
double c1_parity_bound_kinf(int r);
double proposed_data_bound_kinf(int r);
double proposed_parity_bound_kinf(int r);
/// All-node ratio of the sub-packetization-m piggybacking code from the
/// comparison table, large-k level, on the integer grid 1 <= L < m < r.
double firstcode23_all_kinf(int r, int m, int L);

inline constexpr double kBoundTolerance = 1e-9;

/// Proposed-vs-OOP strict inequalities (data and parity), r > 5.
bool beats_oop_bounds(int r);
/// Proposed parity ratio strictly below the sub-packetization-r
/// competitor's, r > 1.
bool beats_c1_parity_bound(int r);
/// Proposed all-node level strictly below the whole integer (m, L) grid of
/// the small-sub-packetization competitor, r in {5, 6, 7}.
bool beats_firstcode_grid(int r);

/// Published field-size thresholds (the feasibility comparison): exact big
/// integers where binomials are involved.
struct FieldSizeThreshold {
    std::string scheme;
    std::string bound;  // decimal rendering of the threshold
    std::string note;
};

std::vector<FieldSizeThreshold> field_size_thresholds(int n, int k);
BigUint htec_field_threshold(int n, int k, int alpha);
BigUint bpd_field_threshold(int n, int k);
BigUint etrs_field_threshold(int n, int k, int alpha_star);

}  // namespace cpb
