#include "catr/index.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "catr/synthetic.hpp"

using namespace catr;

namespace {

// The five-word binary matrix from the running example, one document per row.
std::vector<std::string> matrix_corpus() {
    //             word:          1  2  3  4  5
    const char* rows[16] = {"",          "w2 w3", "w3", "w3 w5", "w5",    "w5", "w2", "w2",
                            "w5",        "w2",    "w2 w4", "w1", "w2",    "w5", "",   "w1 w5"};
    return {rows, rows + 16};
}

}  // namespace

TEST(ingest, two_document_hand_case) {
    inverted_index idx = ingest_corpus({"a b", "b"});
    ASSERT_EQ(idx.nb_words(), 2u);
    EXPECT_EQ(idx.nb_documents, 2u);
    EXPECT_EQ(idx.words[0], (gap_list{1}));     // a: doc 1
    EXPECT_EQ(idx.words[1], (gap_list{1, 1}));  // b: docs 1, 2
}

TEST(ingest, repeated_word_single_posting) {
    inverted_index idx = ingest_corpus({"x x x y x"});
    ASSERT_EQ(idx.nb_words(), 2u);
    EXPECT_EQ(idx.words[0], (gap_list{1}));
    EXPECT_EQ(idx.words[1], (gap_list{1}));
}

TEST(ingest, tokenizer_case_folds_and_splits) {
    inverted_index idx = ingest_corpus({"Foo,BAR!foo2;  bar"});
    // tokens: foo, bar, foo2, bar -> words bar, foo, foo2
    ASSERT_EQ(idx.nb_words(), 3u);
    EXPECT_EQ(idx.nb_pointers(), 3u);
}

TEST(ingest, matrix_reproduces_gap_lists) {
    inverted_index idx = ingest_corpus(matrix_corpus());
    EXPECT_EQ(idx.nb_documents, 16u);
    ASSERT_EQ(idx.nb_words(), 5u);
    EXPECT_EQ(idx.words[0], (gap_list{12, 4}));
    EXPECT_EQ(idx.words[1], (gap_list{2, 5, 1, 2, 1, 2}));
    EXPECT_EQ(idx.words[2], (gap_list{2, 1, 1}));
    EXPECT_EQ(idx.words[3], (gap_list{11}));
    EXPECT_EQ(idx.words[4], (gap_list{4, 1, 1, 3, 5, 2}));
    EXPECT_EQ(idx.nb_pointers(), 18u);
}

TEST(ingest, empty_corpus_rejected) {
    EXPECT_THROW(ingest_corpus({}), domain_error);
}

TEST(permutation, identity_keeps_index) {
    inverted_index idx = ingest_corpus(matrix_corpus());
    std::vector<uint32_t> perm(16);
    std::iota(perm.begin(), perm.end(), 1u);
    EXPECT_EQ(apply_doc_permutation(idx, perm), idx);
}

TEST(permutation, reversal_hand_case) {
    inverted_index idx = ingest_corpus(matrix_corpus());
    std::vector<uint32_t> perm(16);
    for (size_t i = 0; i < 16; ++i) perm[i] = uint32_t(16 - i);
    inverted_index out = apply_doc_permutation(idx, perm);
    // word 3 held docs (2, 3, 4); under p(i) = 17 - i they become (13, 14, 15)
    EXPECT_EQ(out.docs(2), (std::vector<uint32_t>{13, 14, 15}));
}

TEST(permutation, pointers_invariant_under_random_perms) {
    synthetic_config cfg;
    cfg.nb_documents = 500;
    cfg.nb_words = 40;
    cfg.seed = 3;
    inverted_index idx = generate_synthetic(cfg);
    std::mt19937_64 rng(17);
    std::vector<uint32_t> perm(cfg.nb_documents);
    std::iota(perm.begin(), perm.end(), 1u);
    for (int round = 0; round < 20; ++round) {
        std::shuffle(perm.begin(), perm.end(), rng);
        inverted_index out = apply_doc_permutation(idx, perm);
        EXPECT_EQ(out.nb_pointers(), idx.nb_pointers());
        for (size_t w = 0; w < idx.words.size(); ++w)
            EXPECT_EQ(out.words[w].size(), idx.words[w].size());
        out.validate();
    }
}

TEST(permutation, non_bijection_rejected) {
    inverted_index idx = ingest_corpus({"a", "b"});
    EXPECT_THROW(apply_doc_permutation(idx, {1}), domain_error);
    EXPECT_THROW(apply_doc_permutation(idx, {1, 1}), domain_error);
    EXPECT_THROW(apply_doc_permutation(idx, {1, 3}), domain_error);
}

TEST(density_sort, stable_and_idempotent) {
    inverted_index idx;
    idx.nb_documents = 10;
    idx.words = {{1, 1}, {1, 1, 1, 1, 1, 1}, {1, 1, 1}, {1}, {2, 1, 1, 1, 1, 1}};
    inverted_index sorted = sort_words_by_density(idx);
    // lengths (2,6,3,1,6) -> word4, word1, word3, word2, word5 (stable on ties)
    EXPECT_EQ(sorted.words[0], idx.words[3]);
    EXPECT_EQ(sorted.words[1], idx.words[0]);
    EXPECT_EQ(sorted.words[2], idx.words[2]);
    EXPECT_EQ(sorted.words[3], idx.words[1]);
    EXPECT_EQ(sorted.words[4], idx.words[4]);
    EXPECT_EQ(sort_words_by_density(sorted), sorted);
}

TEST(batches, boundary_conventions) {
    EXPECT_EQ(batch_of_density(0.0002), 0u);   // interval (0, 0.0002] is batch 1
    EXPECT_EQ(batch_of_density(0.00021), 1u);
    EXPECT_EQ(batch_of_density(1.0), 6u);
    EXPECT_EQ(batch_of_density(0.03), 3u);
    EXPECT_EQ(batch_of_density(0.0300001), 4u);
}

TEST(batches, partition_covers_words) {
    synthetic_config cfg;
    cfg.nb_documents = 20000;
    cfg.nb_words = 200;
    cfg.seed = 5;
    inverted_index idx = generate_synthetic(cfg);
    batch_partition part = partition_batches(idx);
    size_t total = 0;
    std::vector<char> seen(idx.nb_words(), 0);
    for (const auto& b : part.batches) {
        total += b.size();
        for (uint32_t w : b) {
            EXPECT_FALSE(seen[w]);
            seen[w] = 1;
        }
    }
    EXPECT_EQ(total, idx.nb_words());
}

TEST(raw_io, round_trip_and_exact_size) {
    inverted_index idx = ingest_corpus(matrix_corpus());
    std::ostringstream out;
    save_raw(idx, out);
    std::string body = out.str();
    EXPECT_EQ(body.size(), 16u + 5 * 4u + 18 * 4u);  // 108 bytes
    std::istringstream in(body);
    EXPECT_EQ(load_raw(in), idx);
}

TEST(raw_io, random_round_trips) {
    std::mt19937_64 rng(29);
    for (int round = 0; round < 50; ++round) {
        synthetic_config cfg;
        cfg.nb_documents = 50 + uint32_t(rng() % 5000);
        cfg.nb_words = 1 + uint32_t(rng() % 50);
        cfg.seed = rng();
        inverted_index idx;
        try {
            idx = generate_synthetic(cfg);
        } catch (const domain_error&) {
            continue;
        }
        std::ostringstream out;
        save_raw(idx, out);
        std::istringstream in(out.str());
        EXPECT_EQ(load_raw(in), idx);
    }
}

TEST(raw_io, truncated_and_corrupt_rejected) {
    inverted_index idx = ingest_corpus(matrix_corpus());
    std::ostringstream out;
    save_raw(idx, out);
    std::string body = out.str();

    std::istringstream truncated(body.substr(0, body.size() - 3));
    EXPECT_THROW(load_raw(truncated), format_error);

    std::string swapped = body;
    std::swap(swapped[16 + 4], swapped[16 + 8]);  // break monotonicity in word 1
    std::istringstream bad(swapped);
    EXPECT_THROW(load_raw(bad), format_error);
}

TEST(synthetic, deterministic_and_valid) {
    synthetic_config cfg;
    cfg.nb_documents = 3000;
    cfg.nb_words = 60;
    cfg.seed = 77;
    inverted_index a = generate_synthetic(cfg);
    inverted_index b = generate_synthetic(cfg);
    EXPECT_EQ(a, b);
    a.validate();
    cfg.clustered = false;
    generate_synthetic(cfg).validate();
}
