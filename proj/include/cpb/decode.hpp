#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cpb/code.hpp"

namespace cpb {

/// A set of erased node indices (1-based, sorted, distinct).
struct ErasurePattern {
    std::vector<int> erased;
    bool operator==(const ErasurePattern&) const = default;
    bool operator<(const ErasurePattern& other) const { return erased < other.erased; }
};

/// node -> its r stored symbols, for the surviving nodes.
using ShareMap = std::map<int, std::vector<Elem>>;

ShareMap shares_from_stripe(const CodedStripe& stripe, const std::vector<int>& erased);

/// Coefficient vector (length k*r) of the stored symbol at (node, col) as a
/// linear functional of the flattened data, position (i-1)*r + (j-1).
/// Defaults to the final stage; earlier stages are exposed for analysis.
std::vector<Elem> symbol_coefficients(const CodeParams& p, int node, int col,
                                      Stage stage = Stage::G3);

/// Oracle decoder: solves the kr x kr system assembled from the first k
/// supplied nodes in ascending index order. Throws NotDecodableError naming
/// the node set if that system is singular.
DataMatrix decode_generic(const CodeParams& p, const ShareMap& shares);

/// Structured decoder for exactly r erased nodes, following the column-wise
/// recovery order: undo the conjugate pairs among surviving parity rows,
/// recover the erased columns matching those rows sequentially, then the
/// columns beyond the last surviving row, then the mixed columns by a t x t
/// solve each. Throws FieldTooSmallError if a mixed-column system is
/// singular; with fallback_to_generic it reruns decode_generic instead.
DataMatrix decode_structured(const CodeParams& p, const ShareMap& shares,
                             bool fallback_to_generic = false);

struct MdsReport {
    std::uint64_t patterns_checked = 0;
    std::vector<ErasurePattern> failures;
    bool mds() const { return failures.empty(); }
};

inline constexpr std::uint64_t kDefaultMdsCap = 1'000'000;

/// Exhaustive erasure search: checks every r-subset of nodes for
/// decodability. Refuses (ParamError) if C(n, r) exceeds the cap.
MdsReport verify_mds(const CodeParams& p, std::uint64_t pattern_cap = kDefaultMdsCap);

/// Number of r-subsets, saturating at 2^64-1.
std::uint64_t pattern_count(int n, int r);

/// Single-pattern decodability check used by verify_mds (invertibility of
/// the surviving-symbol system restricted to the erased data unknowns).
bool pattern_decodable(const CodeParams& p, const std::vector<int>& erased);

}  // namespace cpb
