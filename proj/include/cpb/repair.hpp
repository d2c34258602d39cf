#pragma once

#include <vector>

#include "cpb/code.hpp"

namespace cpb {

/// One downloaded symbol: where it came from and its value.
struct Download {
    int node;
    int col;
    Elem value;
    bool operator==(const Download&) const = default;
};

/// Result of repairing one node: the r recovered symbols plus an itemized
/// ledger of every symbol downloaded from the surviving nodes.
struct RepairReport {
    int failed_node = 0;
    std::vector<Elem> recovered;      // the node's r symbols, column order
    std::vector<Download> downloads;  // in procedure order; no duplicates
    int bandwidth = 0;                // |downloads|
    int predicted = 0;                // closed-form count for this node
};

/// Closed-form repair bandwidth of one node, in symbols.
int predicted_bandwidth(const GroupLayout& g, int node);
int predicted_bandwidth(const CodeParams& p, int node);

/// Repairs a failed data node (f in [k]): recovers the trailing columns via
/// the per-column base-code instances, then per remaining column unmixes one
/// transformed parity pair and peels the piggyback down to the group mates.
RepairReport repair_data_node(const CodeParams& p, int f, const CodedStripe& stripe,
                              const std::vector<int>& unreadable = {});

/// Repairs a failed parity node (f in [k+1, k+r]): rebuilds its column's
/// pre-transform values from the column data plus piggyback feeds, then
/// re-derives the erased row through the transform relations.
RepairReport repair_parity_node(const CodeParams& p, int f, const CodedStripe& stripe,
                                const std::vector<int>& unreadable = {});

/// Dispatch over the two cases.
RepairReport repair_node(const CodeParams& p, int f, const CodedStripe& stripe,
                         const std::vector<int>& unreadable = {});

}  // namespace cpb
