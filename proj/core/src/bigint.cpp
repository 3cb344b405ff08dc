#include "shieldsim/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace shieldsim {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

BigUint::BigUint(u64 value) {
    if (value != 0)
        limbs_.push_back(value);
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0)
        limbs_.pop_back();
}

BigUint BigUint::from_hex(const std::string &hex) {
    std::string s = hex;
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0)
        s = s.substr(2);
    if (s.empty())
        throw std::invalid_argument("BigUint::from_hex: empty string");
    BigUint out;
    out.limbs_.assign((s.size() + 15) / 16, 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[s.size() - 1 - i];
        u64 digit;
        if (c >= '0' && c <= '9')
            digit = static_cast<u64>(c - '0');
        else if (c >= 'a' && c <= 'f')
            digit = static_cast<u64>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            digit = static_cast<u64>(c - 'A' + 10);
        else
            throw std::invalid_argument("BigUint::from_hex: bad digit");
        out.limbs_[i / 16] |= digit << (4 * (i % 16));
    }
    out.trim();
    return out;
}

std::string BigUint::to_hex() const {
    if (limbs_.empty())
        return "0";
    static const char *digits = "0123456789abcdef";
    std::string out;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        for (int nib = 15; nib >= 0; --nib) {
            const unsigned d = (limbs_[i] >> (4 * nib)) & 0xf;
            if (!out.empty() || d != 0)
                out.push_back(digits[d]);
        }
    }
    return out;
}

BigUint BigUint::random_bits(int bits, Rng &rng) {
    if (bits < 0)
        throw std::invalid_argument("BigUint::random_bits: negative width");
    BigUint out;
    out.limbs_.assign((bits + 63) / 64, 0);
    for (auto &limb : out.limbs_)
        limb = rng.next_u64();
    const int top = bits % 64;
    if (top != 0 && !out.limbs_.empty())
        out.limbs_.back() &= (u64{1} << top) - 1;
    out.trim();
    return out;
}

int BigUint::bit_length() const {
    if (limbs_.empty())
        return 0;
    int len = static_cast<int>(limbs_.size() - 1) * 64;
    u64 top = limbs_.back();
    while (top != 0) {
        ++len;
        top >>= 1;
    }
    return len;
}

bool BigUint::bit(int index) const {
    const std::size_t limb = static_cast<std::size_t>(index) / 64;
    if (limb >= limbs_.size())
        return false;
    return (limbs_[limb] >> (index % 64)) & 1;
}

int BigUint::compare(const BigUint &a, const BigUint &b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i])
            return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigUint operator+(const BigUint &a, const BigUint &b) {
    BigUint out;
    const std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
    out.limbs_.assign(n + 1, 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const u64 x = i < a.limbs_.size() ? a.limbs_[i] : 0;
        const u64 y = i < b.limbs_.size() ? b.limbs_[i] : 0;
        const u64 sum = x + y;
        const u64 c1 = sum < x ? 1 : 0;
        const u64 sum2 = sum + carry;
        const u64 c2 = sum2 < sum ? 1 : 0;
        out.limbs_[i] = sum2;
        carry = c1 + c2;
    }
    out.limbs_[n] = carry;
    out.trim();
    return out;
}

BigUint operator-(const BigUint &a, const BigUint &b) {
    if (BigUint::compare(a, b) < 0)
        throw std::invalid_argument("BigUint subtraction underflow");
    BigUint out;
    out.limbs_.assign(a.limbs_.size(), 0);
    u64 borrow = 0;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        const u64 x = a.limbs_[i];
        const u64 y = i < b.limbs_.size() ? b.limbs_[i] : 0;
        const u64 d = x - y;
        const u64 b1 = x < y ? 1 : 0;
        const u64 d2 = d - borrow;
        const u64 b2 = d < borrow ? 1 : 0;
        out.limbs_[i] = d2;
        borrow = b1 + b2;
    }
    out.trim();
    return out;
}

BigUint operator*(const BigUint &a, const BigUint &b) {
    if (a.is_zero() || b.is_zero())
        return BigUint{};
    BigUint out;
    out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        u64 carry = 0;
        for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
            const u128 cur = static_cast<u128>(a.limbs_[i]) * b.limbs_[j] +
                             out.limbs_[i + j] + carry;
            out.limbs_[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        out.limbs_[i + b.limbs_.size()] = carry;
    }
    out.trim();
    return out;
}

BigUint BigUint::shifted_left(int bits) const {
    if (is_zero() || bits == 0)
        return *this;
    const int limb_shift = bits / 64;
    const int bit_shift = bits % 64;
    BigUint out;
    out.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        out.limbs_[i + limb_shift] |= limbs_[i] << bit_shift;
        if (bit_shift != 0)
            out.limbs_[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
    }
    out.trim();
    return out;
}

// Shift-and-subtract long division, one bit at a time. Quadratic in the bit
// length, which is fine for the operand sizes used here.
void BigUint::divmod(const BigUint &num, const BigUint &den, BigUint &quot, BigUint &rem) {
    if (den.is_zero())
        throw std::invalid_argument("BigUint division by zero");
    if (compare(num, den) < 0) {
        quot = BigUint{};
        rem = num;
        return;
    }
    const int shift = num.bit_length() - den.bit_length();
    BigUint current = den.shifted_left(shift);
    BigUint q;
    q.limbs_.assign(static_cast<std::size_t>(shift) / 64 + 1, 0);
    BigUint r = num;
    for (int i = shift; i >= 0; --i) {
        if (compare(r, current) >= 0) {
            r = r - current;
            q.limbs_[static_cast<std::size_t>(i) / 64] |= u64{1} << (i % 64);
        }
        // Halve `current` in place.
        u64 carry = 0;
        for (std::size_t j = current.limbs_.size(); j-- > 0;) {
            const u64 limb = current.limbs_[j];
            current.limbs_[j] = (limb >> 1) | (carry << 63);
            carry = limb & 1;
        }
        current.trim();
    }
    q.trim();
    quot = q;
    rem = r;
}

BigUint operator%(const BigUint &a, const BigUint &b) {
    BigUint q, r;
    BigUint::divmod(a, b, q, r);
    return r;
}

} // namespace shieldsim
