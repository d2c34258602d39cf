#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpb/errors.hpp"

namespace cpb {

/// Minimal unsigned big integer (base 10^9 limbs) for the field-size
/// thresholds that involve binomial coefficients.
class BigUint {
public:
    BigUint() : limbs_{0} {}
    BigUint(std::uint64_t v);

    static BigUint binomial(int n, int k);

    BigUint& mul_small(std::uint64_t factor);
    BigUint& div_small_exact(std::uint64_t divisor);  // remainder must be zero
    BigUint& add(const BigUint& other);
    BigUint& sub(const BigUint& other);  // requires *this >= other

    int compare(const BigUint& other) const;  // -1, 0, 1
    bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }

    std::string to_string() const;

private:
    void trim();
    static constexpr std::uint64_t kBase = 1'000'000'000ull;
    std::vector<std::uint32_t> limbs_;  // little-endian base-10^9
};

}  // namespace cpb
