// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "orlent/error.hpp"

namespace orlent {

/// Minimal arbitrary-precision unsigned integer (base 2^32 limbs). Supports
/// exactly what the counting code needs: add, multiply, exact small division,
/// comparison and bit length.
class BigUint {
public:
    BigUint() = default;

    explicit BigUint(std::uint64_t v) {
        if (v) limbs_.push_back(static_cast<std::uint32_t>(v));
        if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    }

    static BigUint one() { return BigUint(1); }

    static BigUint pow2(std::uint64_t e) {
        BigUint r;
        r.limbs_.assign(e / 32 + 1, 0);
        r.limbs_.back() = std::uint32_t(1) << (e % 32);
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }

    BigUint& operator+=(const BigUint& o) {
        limbs_.resize(std::max(limbs_.size(), o.limbs_.size()), 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
            limbs_[i] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        return *this;
    }

    BigUint& mul_small(std::uint32_t m) {
        if (m == 0 || is_zero()) {
            limbs_.clear();
            return *this;
        }
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint64_t s = std::uint64_t(limb) * m + carry;
            limb = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        while (carry) {
            limbs_.push_back(static_cast<std::uint32_t>(carry));
            carry >>= 32;
        }
        return *this;
    }

    // Division by a small divisor known to divide exactly.
    BigUint& div_small_exact(std::uint32_t d) {
        std::uint64_t rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        if (rem != 0) fail("Inconsistent", "BigUint exact division left a remainder");
        trim();
        return *this;
    }

    BigUint operator*(const BigUint& o) const {
        if (is_zero() || o.is_zero()) return BigUint();
        BigUint r;
        r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
                std::uint64_t s = std::uint64_t(limbs_[i]) * o.limbs_[j] + r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<std::uint32_t>(s);
                carry = s >> 32;
            }
            r.limbs_[i + o.limbs_.size()] += static_cast<std::uint32_t>(carry);
        }
        r.trim();
        return r;
    }

    int compare(const BigUint& o) const {
        if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
        for (std::size_t i = limbs_.size(); i-- > 0;)
            if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
        return 0;
    }

    bool operator==(const BigUint& o) const { return compare(o) == 0; }
    bool operator<=(const BigUint& o) const { return compare(o) <= 0; }

    /// Number of bits; 0 for zero. log2(x) < bit_length(x) <= log2(x) + 1.
    std::size_t bit_length() const {
        if (is_zero()) return 0;
        std::size_t bits = (limbs_.size() - 1) * 32;
        std::uint32_t top = limbs_.back();
        while (top) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    std::string to_decimal() const {
        if (is_zero()) return "0";
        std::vector<std::uint32_t> work(limbs_);
        std::string out;
        while (!work.empty()) {
            std::uint64_t rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | work[i];
                work[i] = static_cast<std::uint32_t>(cur / 1000000000ULL);
                rem = cur % 1000000000ULL;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            std::string chunk = std::to_string(rem);
            if (!work.empty()) chunk.insert(0, 9 - chunk.size(), '0');
            out.insert(0, chunk);
        }
        return out;
    }

private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    std::vector<std::uint32_t> limbs_; // little-endian
};

} // namespace orlent
