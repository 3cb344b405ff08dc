#include <gtest/gtest.h>

#include <cstdint>

#include "shieldsim/rng.hpp"
#include "shieldsim/rsa.hpp"

using namespace shieldsim;

namespace {

std::vector<std::uint8_t> bits_lsb(std::uint64_t d, int n) {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = (d >> i) & 1;
    return out;
}

// MSB-first binary exponentiation: a different traversal than the
// implementation's LSB-first loop, used as the independent route.
BigUint modexp_msb_first(const BigUint &m, std::uint64_t d, const BigUint &n) {
    BigUint result{1};
    for (int i = 63; i >= 0; --i) {
        result = (result * result) % n;
        if ((d >> i) & 1)
            result = (result * m) % n;
    }
    return result;
}

// Native 64-bit route for moduli below 2^32, fully independent arithmetic.
std::uint64_t modexp_native(std::uint64_t m, std::uint64_t d, std::uint64_t n) {
    std::uint64_t result = 1 % n;
    std::uint64_t square = m % n;
    while (d) {
        if (d & 1)
            result = result * square % n;
        square = square * square % n;
        d >>= 1;
    }
    return result;
}

} // namespace

TEST(ModExp, SpecExamples) {
    EXPECT_EQ(modexp(BigUint{7}, bits_lsb(0, 1), BigUint{13}), BigUint{1});
    EXPECT_EQ(modexp(BigUint{7}, bits_lsb(1, 1), BigUint{13}), BigUint{7});
    EXPECT_EQ(modexp(BigUint{4}, bits_lsb(13, 4), BigUint{497}), BigUint{445});
    EXPECT_EQ(modexp(BigUint{65}, bits_lsb(17, 5), BigUint{3233}), BigUint{2790});
}

TEST(ModExp, LeadingZeroBitsDoNotChangeTheResult) {
    EXPECT_EQ(modexp(BigUint{4}, bits_lsb(13, 64), BigUint{497}), BigUint{445});
}

TEST(ModExp, RejectsBadInputs) {
    EXPECT_THROW(modexp(BigUint{14}, bits_lsb(3, 2), BigUint{13}), std::invalid_argument);
    EXPECT_THROW(modexp(BigUint{0}, bits_lsb(3, 2), BigUint{1}), std::invalid_argument);
}

// Frozen vectors computed with an external arbitrary-precision oracle.
TEST(ModExp, FrozenArbitraryPrecisionVectors) {
    struct Vector {
        const char *m, *d, *n, *expected;
    };
    static const Vector vectors[] = {
        {"5818", "2287e4939ebf8617", "cc25", "b6b3"},
        {"3e2f", "eed3f69df80493fc", "fff9", "4600"},
        {"1e65c036a9fff0d054d2f13d4537303121b1a365ef6e28c013c0f66f9fe849a72380d8db5ae45999fc5c8269f3080c986f792559733e93692e99cee6581bb17a56a0faf4e1d6ba3271b45cbcaa6784a947317a143cac8bd4047800067005a794a10f9f42e6063fab8b90336ad69bd6553ca8aa611bdb513f1d9079c91aa14015",
         "84e6537",
         "b713ea02a121939a9009593f6ff3998ae45bb9442044bf594aec65d4a4585e93bbef607161063d4674f01c5dbc8882fd69c138a5e382419eae5189930e6732c15bf0969c7f00746be92d7757d136863115cda492dc06e1d597e48ebdc6f2cd22ce0faa84e824779e229331dbd39d7de076feab4e088acfa19d08336734aa7333",
         "5775f6d3ce477a65e74625ea9301d82a4202da8887e80c4b615901241108902a96f127b29446750938f31dedd127aee51c6c665119d909fc9fb6e7f1444d0f2b63d9c215e0cf7ac8daa9a8cef2dc0cfa50d5fda650194e95aea54d3633cd4913bce9fa65b33ba555b8531262bf37d87bd0921d17db8723c0f228e4972cd87783"},
        {"b4c480c037f630f15d04f64f9d89990b9817ad38d1bf5927272b8572970209ca", "ee",
         "c920f019f900a3d444254d695a3cd2c4b38001edd8a105a1fc419c2b4e699961",
         "b9b9a4aa8feb3ef722fd516f9c229e402e3685e6054de265cbaad647d9b58055"},
        {"657b", "91f4f32698771eaf", "bdb9", "9b8c"},
        {"21ed", "11a6e83d263e244d", "f0b3", "1702"},
        {"8cc2f3e7f1094f402a23aa4d0bb6c6a81a5656236dda2bd3520a0d5ca72d98921b616702f4cfc9aeeec9961f54aef698c59612d5403daffd65e1613da643aca9e6c79427547ad3c9bc49c8848eeaed9325c805b4b25a69e7cf9a1e6f87358ab7b36f6593f0aa87dd8dd4f69d8430f31a7cbc9c09a49412712ce78c3e379a32c7",
         "3f4e0eb19b003741",
         "c485a5e5085d6ee3a9fd6626c93f554b1cee51bca30e9d19061125a364822e891f06a7ff01f5bc8ab260421ce1aee17b922a578db28d32e1c0dee672fc0dab98c8b7afd12b8fd8837bd305e64703b03bd09917bc58de88a76ab66637a22ba6bdd5f593077fac61b575dc75b863e8045e335c8613b142e071afa6e248c7590261",
         "89c8b67758a6e0406d6f9ec10d94e4db744de2e3cc61f701ab96b589c148f7b2e5201abcb2ce1fec5fe826e2adc23fbd1668dc376683e28ad72dd11db12b41d0e46e71c516bddfa9e264f6b453b0170d5023466a37e00c2c8ae135e09e0d0abcc3d7679688786531a190205aaa36c0f2fcbe2ca9255592b52eb10858e5366baa"},
        {"563cc4e05b9711498837d8b096ea7976cc985da85efa82ce910263554dd2d34d",
         "499deea998e86a54",
         "d5945f21ee44eead294bdda8d21f62c09c500b6cab9d26474a2facb11c0a2317",
         "cc4d9d61f00890202a92856297c11442f6b819fa6b7cc09b4cb786591ca8f363"},
        {"4ef33c9fdf95f9da1d481c3fe5c867565416dd566d8430a979c40ddab06866b5", "b1",
         "aa1011e4f3798b9bece88890bfb3672655836d845af9de03d770dad25e74d557",
         "1ef2e2a66c074636c767c41c75e782c799988a72f7844023464f4e6f565c0a35"},
        {"3af568e9399b3d938f42cd1fc9416ca0d1903fdf867d7caa550c0b5a1b7c8b03f09c829c7116231016982855e9b46dc7d6ddf74e305b082c19377ee6bf1982597797cda707f74531f0e80c2c74668f6a29e7bb8134ca95418d83d0ff0eed7dda45efc874166c5bbd8d837bab76e6f112de72b5c36eeeb47d9f39f8de3f81b386",
         "de5c722b71d1d246",
         "e08e7de6f17b9b2e327891e441d86835451b139a6b86a36235bdd9877c65f65657824fa69b627f300d2b86c2384eb85617a984198e836824102adba33f117788ffb90ded3edfebdf374defe45d4bf9c8fccd4ede86f5c2ec51e46ded5c6aaa2cd0a61de9453ae2bd5e02a3514d1b1702664c959c163805d855fc322b11b476b1",
         "d8aacff3b0e437fb8cef37f0ee30f66af48165746a73e2e128924c1d561cfdd14a23020ce6c725ac930e3eead11aa55376ffc1ef5e40a05a0b97b7318010246a6b614eccc5b55b2143f76ec7660bc0a8d256c374198943655e0f3c7e6e3ca222604e0154370bf92018f5fdf7c444d59464a50edb261805eee222848257fde18f"},
        {"7935", "9a48d7cc", "dd75", "743e"},
        {"2520340633703b4fd4609acfccea24f9747afcca2ef1ca1a2452eb93416c83ac968020f05f99dc9fbb06945e92dd24099983b94335f321eba533fced36b270b9909233e862be99cd18fc1fa25edfc805cc5902a6b6490972952b474ffb381f2eeb63125bcfb16a95aa5bd02dbaad3bd2c7d6f86ecec6abc8bab287f5dc3cd36a",
         "ee57c886",
         "b3ca753127d1e5a76bbdb491f838c9b652526b55ebc54685ca725a439b8cfcf68b58e29d3f336037304957ebcefbb6afe7165b17f4a7ce8585aaddc22b39116f1071d8222f34d801122c3f55e67d8154cb4ffc6be71cc2c15bf9693d53964fd8a47da76b430315bd12dec5f8f4c405f7f5b6edf1e3d139f47f327fd04841e4b7",
         "3839f5629a20ca160133ee77266d2eee6781eaf7864da4796857db8e4b049c41ab0aa50f1ee880ebeb77febc755c15cba53f86215443b5ff6744354559019d652c8feb81c82a1fbc6bcb45473f02f6f4fddb5a88d74a4360d0aa46f39bfea64cb70a7850304276815ff54d93dfd3fe222749ad659c0875f613e6847a4bf994aa"},
    };
    for (const auto &vec : vectors) {
        const BigUint n = BigUint::from_hex(vec.n);
        const BigUint d = BigUint::from_hex(vec.d);
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(d.bit_length() ? d.bit_length() : 1));
        for (int i = 0; i < static_cast<int>(bits.size()); ++i)
            bits[static_cast<std::size_t>(i)] = d.bit(i) ? 1 : 0;
        EXPECT_EQ(modexp(BigUint::from_hex(vec.m), bits, n).to_hex(), vec.expected);
    }
}

TEST(ModExp, RandomInstancesAgainstIndependentRoutes) {
    Rng rng(4242);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t d = rng.next_u64();
        BigUint n = BigUint::random_bits(96, rng);
        if (BigUint::compare(n, BigUint{2}) < 0)
            n = BigUint{97};
        const BigUint m = BigUint::random_bits(64, rng) % n;
        EXPECT_EQ(modexp(m, bits_lsb(d, 64), n), modexp_msb_first(m, d, n));
    }
    // Small moduli checked against native integer arithmetic as well.
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t n = (rng.next_u64() & 0xffffffffULL) | 2;
        const std::uint64_t m = rng.next_u64() % n;
        const std::uint64_t d = rng.next_u64();
        EXPECT_EQ(modexp(BigUint{m}, bits_lsb(d, 64), BigUint{n}).low_u64(),
                  modexp_native(m, d, n));
    }
}

TEST(Rsa, EncryptDecryptRoundTrip) {
    // Textbook pair: n = 61*53, e = 17, d = 2753.
    const BigUint n{3233};
    const BigUint message{1234};
    const BigUint cipher = modexp(message, bits_lsb(17, 5), n);
    EXPECT_EQ(modexp(cipher, bits_lsb(2753, 12), n), message);
}

TEST(RsaKey, HexRoundTripAndValidation) {
    RsaKey key = RsaKey::from_exponent_hex("ac5", 12, BigUint{1}.shifted_left(13));
    EXPECT_EQ(key.n_bits(), 12);
    EXPECT_EQ(key.d_hex(), "ac5");
    EXPECT_EQ(key.popcount(), 6);
    EXPECT_THROW(RsaKey::from_exponent_hex("1ac5", 12, BigUint{1}.shifted_left(13)),
                 std::invalid_argument);
}

TEST(PowerSchedule, SpecExamples) {
    VictimPowerParams params;
    params.p_idle = 0.1;
    params.p_square = 0.5;
    params.p_mult = 1.0;
    params.t_square = 4;
    params.t_mult = 4;
    params.location = GridLoc{0, 0};

    RsaKey zero;
    zero.d_bits = {0};
    zero.modulus = BigUint{4};
    const PowerSchedule s0 = PowerSchedule::build(zero, params);
    ASSERT_EQ(s0.segments().size(), 1u);
    EXPECT_EQ(s0.segments()[0].duration, 4);
    EXPECT_DOUBLE_EQ(s0.segments()[0].watts, 0.5);
    EXPECT_EQ(s0.segments()[0].bit_index, 0);

    RsaKey one;
    one.d_bits = {1};
    one.modulus = BigUint{4};
    const PowerSchedule s1 = PowerSchedule::build(one, params);
    ASSERT_EQ(s1.segments().size(), 2u);
    EXPECT_DOUBLE_EQ(s1.segments()[0].watts, 1.0); // multiply first
    EXPECT_DOUBLE_EQ(s1.segments()[1].watts, 0.5);

    RsaKey k101;
    k101.d_bits = {1, 0, 1};
    k101.modulus = BigUint{16};
    const PowerSchedule s101 = PowerSchedule::build(k101, params);
    EXPECT_EQ(s101.total_ticks(), 20);
    int mult_segments = 0;
    for (const auto &seg : s101.segments())
        if (seg.watts == params.p_mult) {
            ++mult_segments;
            EXPECT_TRUE(seg.bit_index == 0 || seg.bit_index == 2);
        }
    EXPECT_EQ(mult_segments, 2);
}

TEST(PowerSchedule, LookupBoundaries) {
    VictimPowerParams params;
    params.p_idle = 0.1;
    params.p_square = 0.5;
    params.p_mult = 1.0;
    params.t_square = 4;
    params.t_mult = 4;
    RsaKey one;
    one.d_bits = {1};
    one.modulus = BigUint{4};
    const PowerSchedule sched = PowerSchedule::build(one, params);
    EXPECT_DOUBLE_EQ(sched.power_at(0), 1.0);
    EXPECT_DOUBLE_EQ(sched.power_at(3), 1.0);
    // A boundary tick belongs to the later segment.
    EXPECT_DOUBLE_EQ(sched.power_at(4), 0.5);
    EXPECT_DOUBLE_EQ(sched.power_at(sched.total_ticks() + 5), 0.1);
    EXPECT_DOUBLE_EQ(sched.power_at(-1), 0.1);
}

TEST(PowerSchedule, LengthFormulaProperty) {
    VictimPowerParams params;
    params.p_idle = 0.0;
    params.p_square = 0.5;
    params.p_mult = 1.0;
    params.t_square = 7;
    params.t_mult = 3;
    Rng rng(11);
    for (int round = 0; round < 50; ++round) {
        const int n = 1 + static_cast<int>(rng.next_below(200));
        RsaKey key = RsaKey::random_key(n, BigUint{1}.shifted_left(n + 1), rng);
        const PowerSchedule sched = PowerSchedule::build(key, params);
        EXPECT_EQ(sched.total_ticks(),
                  static_cast<std::int64_t>(n) * params.t_square +
                      static_cast<std::int64_t>(key.popcount()) * params.t_mult);
        EXPECT_EQ(static_cast<int>(sched.bit_spans().size()), n);
    }
}

// Mean power over a 1-bit's slot strictly exceeds a 0-bit's slot.
TEST(PowerSchedule, LeakagePremise) {
    VictimPowerParams params;
    params.p_idle = 0.0;
    params.p_square = 0.5;
    params.p_mult = 1.2;
    params.t_square = 5;
    params.t_mult = 5;
    RsaKey key;
    key.d_bits = {1, 0, 1, 1, 0};
    key.modulus = BigUint{64};
    const PowerSchedule sched = PowerSchedule::build(key, params);
    auto slot_mean = [&](int bit) {
        const auto span = sched.bit_spans()[static_cast<std::size_t>(bit)];
        double acc = 0.0;
        for (std::int64_t t = span.begin; t < span.end; ++t)
            acc += sched.power_at(t);
        return acc / static_cast<double>(span.end - span.begin);
    };
    for (std::size_t i = 0; i < key.d_bits.size(); ++i)
        for (std::size_t j = 0; j < key.d_bits.size(); ++j)
            if (key.d_bits[i] && !key.d_bits[j])
                EXPECT_GT(slot_mean(static_cast<int>(i)), slot_mean(static_cast<int>(j)));
}

TEST(VictimPowerParams, InvariantChecks) {
    VictimPowerParams params;
    params.p_idle = 0.2;
    params.p_square = 0.1; // below idle
    params.p_mult = 0.5;
    EXPECT_THROW(params.validate(), std::invalid_argument);
    params.p_square = 0.5;
    params.p_mult = 0.5; // not strictly greater
    EXPECT_THROW(params.validate(), std::invalid_argument);
    params.p_mult = 0.6;
    params.t_square = 0;
    EXPECT_THROW(params.validate(), std::invalid_argument);
}
