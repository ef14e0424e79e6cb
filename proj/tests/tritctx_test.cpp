#include "catr/tritctx.hpp"

#include <gtest/gtest.h>

#include <random>

#include "catr/codecs.hpp"
#include "catr/synthetic.hpp"

using namespace catr;

namespace {

inverted_index figure_index() {
    inverted_index idx;
    idx.nb_documents = 16;
    idx.words = {{12, 4}, {2, 5, 1, 2, 1, 2}, {2, 1, 1}, {11}, {4, 1, 1, 3, 5, 2}};
    return idx;
}

inverted_index random_index(std::mt19937_64& rng, uint32_t max_docs, uint32_t max_words) {
    for (;;) {
        synthetic_config cfg;
        cfg.nb_documents = 1 + uint32_t(rng() % max_docs);
        cfg.nb_words = 1 + uint32_t(rng() % max_words);
        cfg.seed = rng();
        cfg.clustered = rng() % 2 == 0;
        try {
            return generate_synthetic(cfg);
        } catch (const domain_error&) {
        }
    }
}

}  // namespace

TEST(tritctx, figure_index_round_trips_all_variants) {
    inverted_index idx = figure_index();
    for (bool adaptive : {false, true}) {
        for (bool quatrit : {false, true}) {
            compressed_index c = tritctx_compress(idx, adaptive, quatrit);
            inverted_index back = decompress_index(c.bytes);
            EXPECT_EQ(back, idx);
        }
    }
}

TEST(tritctx, forced_two_degenerate_universe) {
    inverted_index idx;
    idx.nb_documents = 1;
    idx.words = {{1}};
    compressed_index c = tritctx_compress(idx, false, false);
    // the single trit is forced, so the payload is just coder termination
    EXPECT_LE(c.sections.payload, 33u);
    EXPECT_EQ(decompress_index(c.bytes), idx);

    compressed_index a = tritctx_compress(idx, true, false);
    EXPECT_LE(a.sections.payload, 33u);
    EXPECT_EQ(decompress_index(a.bytes), idx);
}

TEST(tritctx, adaptive_stores_no_model) {
    std::mt19937_64 rng(1);
    inverted_index idx = random_index(rng, 5000, 40);
    compressed_index c = tritctx_compress(idx, true, false);
    EXPECT_EQ(c.sections.model, 0u);
    EXPECT_EQ(c.header.model_bits, 0u);
    compressed_index q = tritctx_compress(idx, true, true);
    EXPECT_EQ(q.sections.model, 0u);
}

TEST(tritctx, quatrit_drops_lengths_section) {
    std::mt19937_64 rng(2);
    inverted_index idx = random_index(rng, 5000, 40);
    compressed_index q = tritctx_compress(idx, false, true);
    EXPECT_EQ(q.sections.lengths, 0u);
    compressed_index t = tritctx_compress(idx, false, false);
    EXPECT_GT(t.sections.lengths, 0u);
    EXPECT_EQ(decompress_index(q.bytes), idx);
}

TEST(tritctx, static_model_size_matches_formula) {
    std::mt19937_64 rng(3);
    inverted_index idx = random_index(rng, 20000, 60);
    compressed_index c = tritctx_compress(idx, false, false);
    context_params p;
    p.k = c.header.p0;
    p.w = c.header.p1;
    p.k_init = c.header.p2;
    p.norm_bits = c.header.p3;
    EXPECT_EQ(c.sections.model, serialized_model_bits(p, 3));
}

TEST(tritctx, decoder_replays_encoder_model) {
    std::mt19937_64 rng(4);
    for (bool quatrit : {false, true}) {
        inverted_index idx = random_index(rng, 3000, 25);
        std::vector<occurrence_table> enc_states;
        compressed_index c = tritctx_compress(idx, true, quatrit, {},
                                              [&](const occurrence_table& t) { enc_states.push_back(t); });
        size_t at = 0;
        bool all_equal = true;
        payload_header h = parse_header(c.bytes);
        tritctx_decompress(h, c.bytes, [&](const occurrence_table& t) {
            if (at >= enc_states.size() || !(t == enc_states[at])) all_equal = false;
            ++at;
        });
        EXPECT_TRUE(all_equal);
        EXPECT_EQ(at, enc_states.size());
        EXPECT_EQ(at, idx.nb_words());
    }
}

TEST(tritctx, word_order_sensitivity_decodes_exactly) {
    std::mt19937_64 rng(5);
    inverted_index idx = random_index(rng, 8000, 50);
    inverted_index sorted = sort_words_by_density(idx);
    compressed_index plain = tritctx_compress(idx, true, false);
    compressed_index dense = tritctx_compress(sorted, true, false);
    EXPECT_EQ(decompress_index(plain.bytes), idx);
    EXPECT_EQ(decompress_index(dense.bytes), sorted);
    RecordProperty("unsorted_bits", std::to_string(plain.sections.total()));
    RecordProperty("sorted_bits", std::to_string(dense.sections.total()));
}

TEST(tritctx, random_round_trips_small) {
    std::mt19937_64 rng(6);
    for (int round = 0; round < 60; ++round) {
        inverted_index idx = random_index(rng, 2000, 25);
        for (bool adaptive : {false, true}) {
            for (bool quatrit : {false, true}) {
                compressed_index c = tritctx_compress(idx, adaptive, quatrit);
                ASSERT_EQ(decompress_index(c.bytes), idx);
            }
        }
    }
}

TEST(tritctx, deterministic_output) {
    std::mt19937_64 rng(7);
    inverted_index idx = random_index(rng, 4000, 30);
    for (codec_kind kind : {codec_kind::tc, codec_kind::tca}) {
        compressed_index a = compress_index(idx, kind, {});
        compressed_index b = compress_index(idx, kind, {});
        EXPECT_EQ(a.bytes, b.bytes);
    }
}

TEST(tritctx, accounting_exact) {
    std::mt19937_64 rng(8);
    inverted_index idx = random_index(rng, 6000, 40);
    for (bool adaptive : {false, true}) {
        for (bool quatrit : {false, true}) {
            compressed_index c = tritctx_compress(idx, adaptive, quatrit);
            EXPECT_EQ(c.sections.total(), c.sections.header + c.sections.lengths +
                                              c.sections.model + c.sections.payload);
            EXPECT_EQ(c.sections.header, header_bytes * 8);
            EXPECT_EQ(c.bytes.size(), header_bytes + (c.header.stream_bits() + 7) / 8);
            payload_header h = parse_header(c.bytes);
            EXPECT_EQ(h.sections().total(), c.sections.total());
        }
    }
}

TEST(tritctx, parameter_overrides) {
    inverted_index idx = figure_index();
    tritctx_options opt;
    opt.k = 2;
    opt.w = 1;
    opt.k_init = 2;
    compressed_index c = tritctx_compress(idx, false, false, opt);
    EXPECT_EQ(c.header.p0, 2);
    EXPECT_EQ(c.header.p1, 1);
    EXPECT_EQ(c.header.p2, 2);
    EXPECT_EQ(decompress_index(c.bytes), idx);

    tritctx_options bad;
    bad.k = 2;
    bad.w = 1;
    bad.k_init = 5;  // exceeds k + w
    EXPECT_THROW(tritctx_compress(idx, false, false, bad), format_error);
}

TEST(tritctx, truncated_payload_detected) {
    inverted_index idx = figure_index();
    compressed_index c = tritctx_compress(idx, false, false);
    std::vector<uint8_t> chopped(c.bytes.begin(), c.bytes.end() - 1);
    EXPECT_THROW(decompress_index(chopped), format_error);
    std::vector<uint8_t> head(c.bytes.begin(), c.bytes.begin() + 20);
    EXPECT_THROW(decompress_index(head), format_error);
}

TEST(tritctx, payload_bit_flips_never_yield_wrong_data_silently) {
    std::mt19937_64 rng(9);
    inverted_index idx = random_index(rng, 800, 15);
    compressed_index c = tritctx_compress(idx, true, false);
    uint64_t payload_begin = header_bytes * 8 + c.header.lengths_bits + c.header.model_bits;
    int flips = 0;
    for (uint64_t bit = payload_begin; bit < payload_begin + c.header.payload_bits && flips < 64;
         bit += 1 + rng() % 7, ++flips) {
        std::vector<uint8_t> mutated = c.bytes;
        mutated[bit / 8] ^= uint8_t(0x80u >> (bit % 8));
        try {
            inverted_index back = decompress_index(mutated);
            EXPECT_NE(back, idx);  // a silent identical decode would hide corruption
        } catch (const error&) {
            // detected: acceptable outcome
        }
    }
    EXPECT_GT(flips, 0);
}

namespace {

std::string hex_image(const compressed_index& c) {
    static const char digits[] = "0123456789abcdef";
    std::string hex;
    for (uint8_t b : c.bytes) {
        hex += digits[b >> 4];
        hex += digits[b & 15];
    }
    return hex;
}

// Frozen payload images of the figure index; any byte change is a format
// break. Regenerate by printing hex_image() when the format version moves.
constexpr const char* golden_tc = "434154520100100000000000000005000000000000001200000000000000010201081300000000000000900000000000000025000000000000008b4ad9800c0bf00fe01ff00fe492500fe01fe00019a5e3fe09";
constexpr const char* golden_tca = "43415452010110000000000000000500000000000000120000000000000001010101130000000000000000000000000000003b000000000000008b4acb7d59e36b7a4b84";
constexpr const char* golden_gamma = "43415452010810000000000000000500000000000000120000000000000000000000130000000000000000000000000000003a000000000000008b4add3132890e782e60";

}  // namespace

TEST(tritctx, golden_payload_bytes) {
    inverted_index idx = figure_index();
    EXPECT_EQ(hex_image(tritctx_compress(idx, false, false)), golden_tc);
    EXPECT_EQ(hex_image(tritctx_compress(idx, true, false)), golden_tca);
    EXPECT_EQ(hex_image(compress_index(idx, codec_kind::gamma, {})), golden_gamma);
}
