#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cpb/code.hpp"
#include "cpb/repair.hpp"

namespace cpb {

/// On-disk stripe document: one JSON header line
///   {"n":14,"k":10,"L":3,"m":8,"poly":"0x11d","stage":"G3","orig_len":40}
/// followed by n rows of r fixed-width lowercase-hex symbols. Node and
/// column indices are 1-based: row 1 is node 1, leftmost symbol is column 1.
struct StripeFile {
    CodeParams params;
    CodedStripe stripe;
    std::uint64_t orig_len = 0;  // byte length of the original input, 0 if n/a
};

std::string write_stripe(const StripeFile& file);
void write_stripe(std::ostream& os, const StripeFile& file);

StripeFile read_stripe(std::istream& is);
StripeFile read_stripe_string(const std::string& text);

/// Repair-report document: failed node, measured and predicted bandwidth,
/// then the ledger sorted by (node, column).
std::string write_repair_report(const RepairReport& report);

}  // namespace cpb
