#ifndef SHIELDSIM_BIGINT_HPP
#define SHIELDSIM_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "shieldsim/rng.hpp"

namespace shieldsim {

// Unsigned arbitrary-precision integer, little-endian 64-bit limbs.
// Schoolbook arithmetic only: operand sizes here top out around 2048 bits,
// where anything fancier does not pay for itself.
class BigUint {
  public:
    BigUint() = default;
    BigUint(std::uint64_t value); // NOLINT(google-explicit-constructor)

    static BigUint from_hex(const std::string &hex);
    static BigUint random_bits(int bits, Rng &rng); // uniform in [0, 2^bits)

    std::string to_hex() const; // lowercase, no leading zeros, "0" for zero

    bool is_zero() const { return limbs_.empty(); }
    int bit_length() const;
    bool bit(int index) const;

    // Value as u64; caller guarantees it fits.
    std::uint64_t low_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }

    friend bool operator==(const BigUint &a, const BigUint &b) { return a.limbs_ == b.limbs_; }
    static int compare(const BigUint &a, const BigUint &b);
    friend bool operator<(const BigUint &a, const BigUint &b) { return compare(a, b) < 0; }
    friend bool operator>=(const BigUint &a, const BigUint &b) { return compare(a, b) >= 0; }

    friend BigUint operator+(const BigUint &a, const BigUint &b);
    friend BigUint operator-(const BigUint &a, const BigUint &b); // requires a >= b
    friend BigUint operator*(const BigUint &a, const BigUint &b);

    // Quotient and remainder; throws on division by zero.
    static void divmod(const BigUint &num, const BigUint &den, BigUint &quot, BigUint &rem);
    friend BigUint operator%(const BigUint &a, const BigUint &b);

    BigUint shifted_left(int bits) const;

  private:
    void trim();
    std::vector<std::uint64_t> limbs_;
};

} // namespace shieldsim

#endif
