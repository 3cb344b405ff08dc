#include "shieldsim/rsa.hpp"

#include <algorithm>
#include <stdexcept>

namespace shieldsim {

int RsaKey::popcount() const {
    int ones = 0;
    for (auto b : d_bits)
        ones += b ? 1 : 0;
    return ones;
}

std::string RsaKey::d_hex() const {
    BigUint d;
    for (std::size_t i = d_bits.size(); i-- > 0;) {
        d = d.shifted_left(1);
        if (d_bits[i])
            d = d + BigUint{1};
    }
    return d.to_hex();
}

RsaKey RsaKey::from_exponent_hex(const std::string &hex, int n_bits, BigUint modulus) {
    const BigUint d = BigUint::from_hex(hex);
    if (d.bit_length() > n_bits)
        throw std::invalid_argument("RsaKey: exponent wider than declared bit length");
    RsaKey key;
    key.modulus = std::move(modulus);
    key.d_bits.resize(static_cast<std::size_t>(n_bits));
    for (int i = 0; i < n_bits; ++i)
        key.d_bits[static_cast<std::size_t>(i)] = d.bit(i) ? 1 : 0;
    key.validate();
    return key;
}

RsaKey RsaKey::random_key(int n_bits, BigUint modulus, Rng &rng) {
    RsaKey key;
    key.modulus = std::move(modulus);
    key.d_bits.resize(static_cast<std::size_t>(n_bits));
    for (auto &bit : key.d_bits)
        bit = (rng.next_u64() & 1) ? 1 : 0;
    key.validate();
    return key;
}

void RsaKey::validate() const {
    if (d_bits.empty())
        throw std::invalid_argument("RsaKey: key must have at least one bit");
    if (BigUint::compare(modulus, BigUint{2}) < 0)
        throw std::invalid_argument("RsaKey: modulus must be >= 2");
    for (auto b : d_bits)
        if (b > 1)
            throw std::invalid_argument("RsaKey: bit vector entries must be 0 or 1");
}

BigUint modexp(const BigUint &message, const std::vector<std::uint8_t> &d_bits,
               const BigUint &modulus) {
    if (BigUint::compare(modulus, BigUint{2}) < 0)
        throw std::invalid_argument("modexp: modulus must be >= 2");
    if (BigUint::compare(message, modulus) >= 0)
        throw std::invalid_argument("modexp: message must be < modulus");
    BigUint result{1};
    BigUint square = message;
    for (auto bit : d_bits) {
        if (bit)
            result = (result * square) % modulus;
        square = (square * square) % modulus;
    }
    return result;
}

void VictimPowerParams::validate() const {
    if (p_idle < 0.0)
        throw std::invalid_argument("victim.p_idle must be >= 0");
    if (p_square < p_idle)
        throw std::invalid_argument("victim.p_square must be >= p_idle");
    if (p_mult <= p_square)
        throw std::invalid_argument("victim.p_mult must be > p_square");
    if (t_square < 1 || t_mult < 1)
        throw std::invalid_argument("victim step durations must be >= 1 tick");
}

double PowerSchedule::power_at(std::int64_t tick) const {
    if (tick < 0 || tick >= total_ticks_ || segments_.empty())
        return idle_watts_;
    // Boundary tick belongs to the later segment by construction of the
    // half-open spans.
    auto it = std::upper_bound(segment_starts_.begin(), segment_starts_.end(), tick);
    const std::size_t index = static_cast<std::size_t>(it - segment_starts_.begin()) - 1;
    return segments_[index].watts;
}

PowerSchedule PowerSchedule::build(const RsaKey &key, const VictimPowerParams &params,
                                   std::int64_t head_idle_ticks) {
    key.validate();
    params.validate();
    if (head_idle_ticks < 0)
        throw std::invalid_argument("PowerSchedule: negative head idle");

    PowerSchedule sched;
    sched.idle_watts_ = params.p_idle;
    sched.bit_spans_.resize(key.d_bits.size());

    std::int64_t cursor = 0;
    auto push = [&](std::int64_t duration, double watts, int bit_index) {
        sched.segments_.push_back(PowerSegment{duration, watts, bit_index});
        sched.segment_starts_.push_back(cursor);
        cursor += duration;
    };

    if (head_idle_ticks > 0)
        push(head_idle_ticks, params.p_idle, -1);

    for (std::size_t i = 0; i < key.d_bits.size(); ++i) {
        const std::int64_t begin = cursor;
        if (key.d_bits[i])
            push(params.t_mult, params.p_mult, static_cast<int>(i));
        push(params.t_square, params.p_square, static_cast<int>(i));
        sched.bit_spans_[i] = BitSpan{begin, cursor};
    }
    sched.total_ticks_ = cursor;
    return sched;
}

} // namespace shieldsim
