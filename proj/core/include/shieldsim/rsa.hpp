#ifndef SHIELDSIM_RSA_HPP
#define SHIELDSIM_RSA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "shieldsim/bigint.hpp"
#include "shieldsim/floorplan.hpp"

namespace shieldsim {

// Private exponent as an LSB-first bit vector plus the modulus. Leading zero
// bits are kept: the schedule emits a squaring step for them like for any
// other bit.
struct RsaKey {
    std::vector<std::uint8_t> d_bits; // LSB first, values 0/1
    BigUint modulus;

    int n_bits() const { return static_cast<int>(d_bits.size()); }
    int popcount() const;
    std::string d_hex() const;

    static RsaKey from_exponent_hex(const std::string &hex, int n_bits, BigUint modulus);
    static RsaKey random_key(int n_bits, BigUint modulus, Rng &rng);

    void validate() const; // throws std::invalid_argument
};

// Square-and-multiply modular exponentiation, LSB first:
// R=1, S=M; per bit: if d_i==1 then R=R*S mod N; S=S*S mod N.
// Rejects M >= N or N < 2.
BigUint modexp(const BigUint &message, const std::vector<std::uint8_t> &d_bits,
               const BigUint &modulus);

struct VictimPowerParams {
    double p_square = 0.0; // watts while squaring
    double p_mult = 0.0;   // watts while multiplying
    double p_idle = 0.0;   // watts otherwise
    std::int64_t t_square = 1; // ticks per squaring step
    std::int64_t t_mult = 1;   // ticks per multiply step
    GridLoc location;

    void validate() const; // enforces p_mult > p_square >= p_idle >= 0 etc.
};

struct PowerSegment {
    std::int64_t duration = 0; // ticks
    double watts = 0.0;
    int bit_index = -1; // -1 tags idle filler, >= 0 tags a key bit
};

// Per-tick power demand of one modular exponentiation. The multiply segment
// is emitted before the squaring segment of the same bit, only for 1-bits.
class PowerSchedule {
  public:
    const std::vector<PowerSegment> &segments() const { return segments_; }
    std::int64_t total_ticks() const { return total_ticks_; }
    double idle_watts() const { return idle_watts_; }

    // Piecewise-constant lookup; a tick on a boundary belongs to the later
    // segment, ticks at or past total_ticks() return the idle power.
    double power_at(std::int64_t tick) const;

    // Tick span [first, last) covering every segment tagged with `bit`.
    struct BitSpan {
        std::int64_t begin = 0;
        std::int64_t end = 0;
    };
    const std::vector<BitSpan> &bit_spans() const { return bit_spans_; }

    static PowerSchedule build(const RsaKey &key, const VictimPowerParams &params,
                               std::int64_t head_idle_ticks = 0);

  private:
    std::vector<PowerSegment> segments_;
    std::vector<std::int64_t> segment_starts_;
    std::vector<BitSpan> bit_spans_;
    std::int64_t total_ticks_ = 0;
    double idle_watts_ = 0.0;
};

} // namespace shieldsim

#endif
