#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cpb/errors.hpp"

namespace cpb::gf {

/// One field element of GF(2^m), m <= 16. Values are in [0, 2^m).
using Elem = std::uint16_t;

/// GF(2^m) arithmetic context with full exp/log tables.
///
/// The generator alpha is always the polynomial x (value 2); construction
/// verifies that the reduction polynomial is irreducible over GF(2) and that
/// x generates the whole multiplicative group of order 2^m - 1. Immutable
/// after construction and safe to share across threads.
class GaloisField {
public:
    static constexpr int kMinDegree = 2;
    static constexpr int kMaxDegree = 16;

    /// Builds GF(2^m) with the default reduction polynomial for m.
    explicit GaloisField(int degree);

    /// Builds GF(2^m) with an explicit degree-m reduction polynomial,
    /// given as an (m+1)-bit integer.
    GaloisField(int degree, std::uint32_t reduction_poly);

    int degree() const { return degree_; }
    std::uint32_t reduction_poly() const { return poly_; }
    std::uint32_t order() const { return 1u << degree_; }
    std::uint32_t group_order() const { return order() - 1; }
    Elem alpha() const { return 2; }

    Elem add(Elem a, Elem b) const { return a ^ b; }
    Elem sub(Elem a, Elem b) const { return a ^ b; }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[static_cast<std::uint32_t>(log_[a]) + log_[b]];
    }

    Elem inv(Elem a) const {
        if (a == 0) throw MathError("gf_inv: division by zero");
        return exp_[group_order() - log_[a]];
    }

    Elem div(Elem a, Elem b) const {
        if (b == 0) throw MathError("gf_div: division by zero");
        if (a == 0) return 0;
        return exp_[static_cast<std::uint32_t>(log_[a]) + group_order() - log_[b]];
    }

    /// a^e, with the exponent reduced mod 2^m - 1 for nonzero a. 0^e is 0
    /// for e > 0 and an error otherwise.
    Elem pow(Elem a, long long e) const;

    /// alpha^e for any (possibly negative) integer exponent.
    Elem alpha_pow(long long e) const { return exp_[mod_group(e)]; }

    /// Discrete log base alpha; errors on 0.
    std::uint32_t log(Elem a) const {
        if (a == 0) throw MathError("gf_log: log of zero");
        return log_[a];
    }

    /// e mod (2^m - 1), mapped into [0, 2^m - 2].
    std::uint32_t mod_group(long long e) const {
        long long go = group_order();
        long long r = e % go;
        if (r < 0) r += go;
        return static_cast<std::uint32_t>(r);
    }

    /// The default reduction polynomial the library uses for degree m.
    static std::uint32_t default_poly(int degree);

private:
    void build_tables();

    int degree_;
    std::uint32_t poly_;
    std::vector<Elem> exp_;           // 2*(2^m - 1) entries, doubled to skip a mod
    std::vector<std::uint16_t> log_;  // 2^m entries; log_[0] unused
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Builds a shared field; the common entry point mirroring the two
/// constructors above.
FieldPtr build_field(int degree);
FieldPtr build_field(int degree, std::uint32_t reduction_poly);

/// True iff poly (with its top bit at `degree`) is irreducible over GF(2).
bool poly_irreducible(std::uint32_t poly, int degree);

}  // namespace cpb::gf
