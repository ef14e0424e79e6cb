#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "catr/bitio.hpp"
#include "catr/trits.hpp"

namespace catr {

/// Word-major inverted index stored as gap lists; the first gap of a list is
/// the first document ID itself. Every list is nonempty and reconstructs to
/// strictly increasing document IDs in [1, nb_documents].
struct inverted_index {
    uint64_t nb_documents = 0;
    std::vector<gap_list> words;

    uint64_t nb_words() const { return words.size(); }

    uint64_t nb_pointers() const {
        uint64_t n = 0;
        for (const auto& g : words) n += g.size();
        return n;
    }

    std::vector<uint32_t> docs(size_t word) const {
        std::vector<uint32_t> d;
        d.reserve(words[word].size());
        uint64_t cur = 0;
        for (uint32_t gap : words[word]) {
            cur += gap;
            d.push_back(uint32_t(cur));
        }
        return d;
    }

    void validate() const {
        for (const auto& g : words) {
            if (g.empty()) throw format_error("empty posting list");
            uint64_t cur = 0;
            for (uint32_t gap : g) {
                if (gap == 0) throw format_error("zero gap in posting list");
                cur += gap;
            }
            if (cur > nb_documents) throw format_error("document ID beyond nbDocuments");
        }
    }

    bool operator==(const inverted_index& o) const {
        return nb_documents == o.nb_documents && words == o.words;
    }
};

inline gap_list docs_to_gaps(std::span<const uint32_t> docs) {
    gap_list g;
    g.reserve(docs.size());
    uint32_t prev = 0;
    for (uint32_t d : docs) {
        if (d <= prev) throw domain_error("document IDs must strictly increase");
        g.push_back(d - prev);
        prev = d;
    }
    return g;
}

// Case-folded maximal alphanumeric substrings.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            cur.push_back(char(std::tolower(c)));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

// Documents get IDs 1..N in input order; words are kept in lexicographic
// order; a word repeated inside one document yields a single posting.
inline inverted_index ingest_corpus(const std::vector<std::string>& documents) {
    if (documents.empty()) throw domain_error("corpus must hold at least one document");
    std::map<std::string, std::vector<uint32_t>> postings;
    for (size_t i = 0; i < documents.size(); ++i) {
        uint32_t doc_id = uint32_t(i) + 1;
        for (auto& tok : tokenize(documents[i])) {
            auto& list = postings[tok];
            if (list.empty() || list.back() != doc_id) list.push_back(doc_id);
        }
    }
    inverted_index idx;
    idx.nb_documents = documents.size();
    idx.words.reserve(postings.size());
    for (auto& [word, docs] : postings) idx.words.push_back(docs_to_gaps(docs));
    return idx;
}

// perm[i - 1] is the new ID of old document i.
inline inverted_index apply_doc_permutation(const inverted_index& idx,
                                            const std::vector<uint32_t>& perm) {
    if (perm.size() != idx.nb_documents) throw domain_error("permutation size mismatch");
    std::vector<uint8_t> seen(perm.size(), 0);
    for (uint32_t p : perm) {
        if (p < 1 || p > perm.size() || seen[p - 1]) throw domain_error("not a bijection");
        seen[p - 1] = 1;
    }
    inverted_index out;
    out.nb_documents = idx.nb_documents;
    out.words.reserve(idx.words.size());
    for (size_t w = 0; w < idx.words.size(); ++w) {
        std::vector<uint32_t> docs = idx.docs(w);
        for (uint32_t& d : docs) d = perm[d - 1];
        std::sort(docs.begin(), docs.end());
        out.words.push_back(docs_to_gaps(docs));
    }
    return out;
}

// Stable ascending sort by list length; the original order is recoverable.
inline inverted_index sort_words_by_density(const inverted_index& idx) {
    std::vector<size_t> order(idx.words.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return idx.words[a].size() < idx.words[b].size();
    });
    inverted_index out;
    out.nb_documents = idx.nb_documents;
    out.words.reserve(idx.words.size());
    for (size_t i : order) out.words.push_back(idx.words[i]);
    return out;
}

constexpr std::array<double, 8> batch_delimiters = {0.0, 0.0002, 0.001, 0.01,
                                                    0.03, 0.1,    0.2,   1.0};

struct batch_partition {
    std::array<std::vector<uint32_t>, 7> batches;  // word ids per density interval
};

// Word with density d goes to the batch whose interval (d_i, d_{i+1}] holds d.
inline unsigned batch_of_density(double density) {
    for (unsigned b = 0; b < 7; ++b)
        if (density <= batch_delimiters[b + 1]) return b;
    return 6;
}

inline batch_partition partition_batches(const inverted_index& idx) {
    if (idx.nb_documents == 0) throw domain_error("nbDocuments must be >= 1");
    batch_partition part;
    for (size_t w = 0; w < idx.words.size(); ++w) {
        double density = double(idx.words[w].size()) / double(idx.nb_documents);
        part.batches[batch_of_density(density)].push_back(uint32_t(w));
    }
    return part;
}

namespace raw_detail {
inline void put_u64(std::ostream& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(char((v >> (8 * i)) & 0xFF));
}
inline void put_u32(std::ostream& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(char((v >> (8 * i)) & 0xFF));
}
inline uint64_t get_u64(std::istream& in) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        int c = in.get();
        if (c < 0) throw format_error("truncated raw index");
        v |= uint64_t(uint8_t(c)) << (8 * i);
    }
    return v;
}
inline uint32_t get_u32(std::istream& in) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        int c = in.get();
        if (c < 0) throw format_error("truncated raw index");
        v |= uint32_t(uint8_t(c)) << (8 * i);
    }
    return v;
}
}  // namespace raw_detail

// Flat little-endian layout: nbDocuments, nbWords as u64, then per word a u32
// length followed by the u32 document IDs.
inline void save_raw(const inverted_index& idx, std::ostream& out) {
    raw_detail::put_u64(out, idx.nb_documents);
    raw_detail::put_u64(out, idx.nb_words());
    for (size_t w = 0; w < idx.words.size(); ++w) {
        auto docs = idx.docs(w);
        raw_detail::put_u32(out, uint32_t(docs.size()));
        for (uint32_t d : docs) raw_detail::put_u32(out, d);
    }
}

inline inverted_index load_raw(std::istream& in) {
    inverted_index idx;
    idx.nb_documents = raw_detail::get_u64(in);
    uint64_t nb_words = raw_detail::get_u64(in);
    idx.words.reserve(size_t(std::min<uint64_t>(nb_words, 1u << 20)));
    for (uint64_t w = 0; w < nb_words; ++w) {
        uint32_t len = raw_detail::get_u32(in);
        if (len == 0) throw format_error("empty posting list in raw index");
        if (len > idx.nb_documents) throw format_error("list length beyond nbDocuments");
        std::vector<uint32_t> docs(len);
        for (uint32_t i = 0; i < len; ++i) docs[i] = raw_detail::get_u32(in);
        uint32_t prev = 0;
        for (uint32_t d : docs) {
            if (d <= prev || d > idx.nb_documents)
                throw format_error("raw index IDs not increasing within range");
            prev = d;
        }
        idx.words.push_back(docs_to_gaps(docs));
    }
    if (in.peek() != std::istream::traits_type::eof())
        throw format_error("trailing bytes after raw index");
    return idx;
}

}  // namespace catr
