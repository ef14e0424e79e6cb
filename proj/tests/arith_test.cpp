#include "catr/arith.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace catr;

namespace {

std::vector<unsigned> sample_stream(std::mt19937_64& rng, const std::vector<double>& p, size_t n) {
    std::discrete_distribution<unsigned> dist(p.begin(), p.end());
    std::vector<unsigned> out(n);
    for (auto& s : out) s = dist(rng);
    return out;
}

uint64_t encode_iid(const freq_table& f, const std::vector<unsigned>& stream, bit_writer& w) {
    arithmetic_encoder enc(w);
    for (unsigned s : stream) enc.encode(f, s);
    enc.finish();
    return w.bit_count();
}

}  // namespace

TEST(arith, uniform_trit_entropy_bound) {
    std::mt19937_64 rng(100);
    const size_t n = 1000000;
    auto stream = sample_stream(rng, {1, 1, 1}, n);
    freq_table f{1, 1, 1};
    bit_writer w;
    uint64_t bits = encode_iid(f, stream, w);
    uint64_t bound = uint64_t(std::ceil(double(n) * std::log2(3.0))) + 64;
    EXPECT_LE(bits, bound);

    bit_reader r(w.bytes(), 0, bits);
    arithmetic_decoder dec(r);
    for (unsigned s : stream) ASSERT_EQ(dec.decode(f), s);
}

TEST(arith, skewed_monte_carlo_entropy) {
    std::mt19937_64 rng(200);
    const size_t n = 100000;
    std::vector<double> p = {0.6, 0.39, 0.01};
    auto stream = sample_stream(rng, p, n);
    freq_table f{60, 39, 1};
    bit_writer w;
    uint64_t bits = encode_iid(f, stream, w);

    size_t counts[3] = {0, 0, 0};
    for (unsigned s : stream) ++counts[s];
    double target = 0;
    for (int i = 0; i < 3; ++i) target += double(counts[i]) * std::log2(1.0 / p[i]);
    EXPECT_LE(double(bits), 1.01 * target + 64);
    EXPECT_GE(double(bits), 0.99 * target - 64);
}

TEST(arith, degenerate_single_symbol) {
    freq_table f{255};
    bit_writer w;
    arithmetic_encoder enc(w);
    for (int i = 0; i < 10000; ++i) enc.encode(f, 0);
    enc.finish();
    EXPECT_LE(w.bit_count(), 64u);

    bit_reader r(w.bytes(), 0, w.bit_count());
    arithmetic_decoder dec(r);
    for (int i = 0; i < 10000; ++i) ASSERT_EQ(dec.decode(f), 0u);
}

TEST(arith, zero_count_symbol_rejected) {
    freq_table f{3, 0, 5};
    bit_writer w;
    arithmetic_encoder enc(w);
    EXPECT_THROW(enc.encode(f, 1), domain_error);
    EXPECT_NO_THROW(enc.encode(f, 2));
}

TEST(arith, total_overflow_rejected) {
    freq_table f{uint32_t(1) << 30, 1, 1};
    bit_writer w;
    arithmetic_encoder enc(w);
    EXPECT_THROW(enc.encode(f, 0), domain_error);
}

TEST(arith, empty_message_termination) {
    bit_writer w;
    arithmetic_encoder enc(w);
    enc.finish();
    EXPECT_LE(w.bit_count(), 33u);
}

TEST(arith, random_round_trips) {
    std::mt19937_64 rng(4711);
    for (int round = 0; round < 10000; ++round) {
        unsigned alphabet = 2 + rng() % 3;
        std::vector<uint32_t> counts(alphabet);
        for (auto& c : counts) c = 1 + rng() % 100;
        if (round % 5 == 0 && alphabet > 2) counts[alphabet - 1] = 0;  // legal unused symbol
        freq_table f{std::span<const uint32_t>(counts)};

        size_t n = rng() % 50;
        std::vector<unsigned> stream(n);
        for (auto& s : stream) {
            do {
                s = rng() % alphabet;
            } while (counts[s] == 0);
        }

        bit_writer w;
        uint64_t bits = encode_iid(f, stream, w);
        bit_reader r(w.bytes(), 0, bits);
        arithmetic_decoder dec(r);
        for (unsigned s : stream) ASSERT_EQ(dec.decode(f), s);
    }
}

TEST(arith, varying_tables_round_trip) {
    std::mt19937_64 rng(31337);
    for (int round = 0; round < 2000; ++round) {
        size_t n = rng() % 200;
        std::vector<std::vector<uint32_t>> tables(n);
        std::vector<unsigned> stream(n);
        for (size_t i = 0; i < n; ++i) {
            unsigned alphabet = 2 + rng() % 3;
            tables[i].resize(alphabet);
            for (auto& c : tables[i]) c = 1 + rng() % 1000;
            stream[i] = rng() % alphabet;
        }
        bit_writer w;
        arithmetic_encoder enc(w);
        for (size_t i = 0; i < n; ++i)
            enc.encode(freq_table{std::span<const uint32_t>(tables[i])}, stream[i]);
        enc.finish();

        bit_reader r(w.bytes(), 0, w.bit_count());
        arithmetic_decoder dec(r);
        for (size_t i = 0; i < n; ++i)
            ASSERT_EQ(dec.decode(freq_table{std::span<const uint32_t>(tables[i])}), stream[i]);
    }
}

// Two messages framed back to back in one buffer, each with its own
// finish/attach and bit window.
TEST(arith, independent_framing) {
    std::mt19937_64 rng(55);
    freq_table f{5, 3, 2};
    for (int round = 0; round < 500; ++round) {
        std::vector<unsigned> m1(rng() % 40), m2(rng() % 40);
        for (auto& s : m1) s = rng() % 3;
        for (auto& s : m2) s = rng() % 3;

        bit_writer w;
        arithmetic_encoder e1(w);
        for (unsigned s : m1) e1.encode(f, s);
        e1.finish();
        uint64_t split = w.bit_count();
        arithmetic_encoder e2(w);
        for (unsigned s : m2) e2.encode(f, s);
        e2.finish();
        uint64_t end = w.bit_count();

        bit_reader r1(w.bytes(), 0, split);
        arithmetic_decoder d1(r1);
        for (unsigned s : m1) ASSERT_EQ(d1.decode(f), s);
        bit_reader r2(w.bytes(), split, end - split);
        arithmetic_decoder d2(r2);
        for (unsigned s : m2) ASSERT_EQ(d2.decode(f), s);
    }
}

// Payload placed at an arbitrary bit offset, exercising byte straddling.
TEST(arith, byte_straddling_windows) {
    std::mt19937_64 rng(77);
    freq_table f{7, 2, 11};
    for (unsigned offset = 0; offset < 24; ++offset) {
        std::vector<unsigned> msg(64);
        for (auto& s : msg) s = rng() % 3;
        bit_writer w;
        for (unsigned i = 0; i < offset; ++i) w.write_bit(rng() & 1);
        arithmetic_encoder enc(w);
        for (unsigned s : msg) enc.encode(f, s);
        enc.finish();

        bit_reader r(w.bytes(), offset, w.bit_count() - offset);
        arithmetic_decoder dec(r);
        for (unsigned s : msg) ASSERT_EQ(dec.decode(f), s);
    }
}

TEST(arith, deterministic_output) {
    std::mt19937_64 rng(88);
    std::vector<unsigned> msg(500);
    for (auto& s : msg) s = rng() % 3;
    freq_table f{9, 1, 4};
    bit_writer w1, w2;
    encode_iid(f, msg, w1);
    encode_iid(f, msg, w2);
    EXPECT_EQ(w1.bytes(), w2.bytes());
    EXPECT_EQ(w1.bit_count(), w2.bit_count());
}
