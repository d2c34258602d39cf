#include "cpb/rational.hpp"

#include "cpb/bigint.hpp"

namespace cpb {

std::string render_fixed(const Rational& v, int decimals) {
    if (v.num < 0) throw DataError("render_fixed: negative value");
    long long scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    const long long scaled_num = v.num * scale;
    long long q = scaled_num / v.den;
    const long long rem = scaled_num % v.den;
    // Round to nearest, ties to even.
    if (2 * rem > v.den || (2 * rem == v.den && (q % 2) != 0)) ++q;

    const long long whole = q / scale;
    long long frac = q % scale;
    std::string out = std::to_string(whole);
    if (decimals > 0) {
        std::string digits(static_cast<std::size_t>(decimals), '0');
        for (int i = decimals - 1; i >= 0 && frac > 0; --i) {
            digits[static_cast<std::size_t>(i)] = static_cast<char>('0' + frac % 10);
            frac /= 10;
        }
        out += "." + digits;
    }
    return out;
}

BigUint::BigUint(std::uint64_t v) {
    limbs_.clear();
    do {
        limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
        v /= kBase;
    } while (v > 0);
}

void BigUint::trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::mul_small(std::uint64_t factor) {
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
        const std::uint64_t cur = static_cast<std::uint64_t>(limb) * factor + carry;
        limb = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
    }
    while (carry > 0) {
        limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
        carry /= kBase;
    }
    return *this;
}

BigUint& BigUint::div_small_exact(std::uint64_t divisor) {
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        const std::uint64_t cur = rem * kBase + limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(cur / divisor);
        rem = cur % divisor;
    }
    if (rem != 0) throw MathError("BigUint::div_small_exact: nonzero remainder");
    trim();
    return *this;
}

BigUint& BigUint::add(const BigUint& other) {
    const std::size_t n = std::max(limbs_.size(), other.limbs_.size());
    limbs_.resize(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t cur = carry + limbs_[i];
        if (i < other.limbs_.size()) cur += other.limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

BigUint& BigUint::sub(const BigUint& other) {
    if (compare(other) < 0) throw MathError("BigUint::sub: negative result");
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::int64_t cur = static_cast<std::int64_t>(limbs_[i]) - borrow;
        if (i < other.limbs_.size()) cur -= other.limbs_[i];
        if (cur < 0) {
            cur += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        limbs_[i] = static_cast<std::uint32_t>(cur);
    }
    trim();
    return *this;
}

int BigUint::compare(const BigUint& other) const {
    if (limbs_.size() != other.limbs_.size())
        return limbs_.size() < other.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != other.limbs_[i]) return limbs_[i] < other.limbs_[i] ? -1 : 1;
    }
    return 0;
}

std::string BigUint::to_string() const {
    std::string out = std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs_[i]);
        out += std::string(9 - part.size(), '0') + part;
    }
    return out;
}

BigUint BigUint::binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return BigUint(0);
    if (k > n - k) k = n - k;
    BigUint result(1);
    for (int i = 1; i <= k; ++i) {
        result.mul_small(static_cast<std::uint64_t>(n - k + i));
        result.div_small_exact(static_cast<std::uint64_t>(i));
    }
    return result;
}

}  // namespace cpb
