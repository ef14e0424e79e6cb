#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "catr/bitio.hpp"
#include "catr/universal.hpp"

namespace catr {

// Minimal binary code over `range` values with the shorter codewords assigned
// to a centered band. Codeword lengths are floor(log2 range) or ceil(log2 range).
inline void write_centered(bit_writer& out, uint64_t v, uint64_t range) {
    if (range == 0 || v >= range) throw domain_error("centered-code input out of range");
    if (range == 1) return;
    unsigned s = unsigned(std::bit_width(range - 1));
    uint64_t shorts = (uint64_t(1) << s) - range;
    uint64_t band = (range - shorts) / 2;
    if (v >= band && v < band + shorts) {
        out.write_bits(v - band, s - 1);
    } else {
        uint64_t w = v < band ? v : v - shorts;
        out.write_bits(2 * shorts + w, s);
    }
}

inline uint64_t read_centered(bit_reader& in, uint64_t range) {
    if (range == 0) throw domain_error("empty centered-code range");
    if (range == 1) return 0;
    unsigned s = unsigned(std::bit_width(range - 1));
    uint64_t shorts = (uint64_t(1) << s) - range;
    uint64_t band = (range - shorts) / 2;
    uint64_t x = s > 1 ? in.read_bits(s - 1) : 0;
    if (x < shorts) return band + x;
    uint64_t w = ((x << 1) | in.read_bit()) - 2 * shorts;
    return w < band ? w : w + shorts;
}

namespace interp_detail {

// Split index favoring full 2^t - 1 left subtrees.
inline size_t split_point(size_t n) {
    uint64_t h = std::bit_ceil(uint64_t(n) + 1);
    return size_t(h / 2 - 1);
}

inline void encode_range(bit_writer& out, std::span<const uint32_t> docs, uint64_t lo,
                         uint64_t hi) {
    size_t n = docs.size();
    if (n == 0) return;
    if (hi - lo + 1 == n) return;  // fully constrained run, zero bits
    size_t m = split_point(n);
    uint64_t d = docs[m];
    uint64_t d_lo = lo + m;
    uint64_t d_hi = hi - (n - 1 - m);
    write_centered(out, d - d_lo, d_hi - d_lo + 1);
    encode_range(out, docs.first(m), lo, d - 1);
    encode_range(out, docs.subspan(m + 1), d + 1, hi);
}

inline void decode_range(bit_reader& in, std::span<uint32_t> docs, uint64_t lo, uint64_t hi) {
    size_t n = docs.size();
    if (n == 0) return;
    if (hi - lo + 1 == n) {
        for (size_t i = 0; i < n; ++i) docs[i] = uint32_t(lo + i);
        return;
    }
    size_t m = split_point(n);
    uint64_t d_lo = lo + m;
    uint64_t d_hi = hi - (n - 1 - m);
    uint64_t d = d_lo + read_centered(in, d_hi - d_lo + 1);
    docs[m] = uint32_t(d);
    decode_range(in, docs.first(m), lo, d - 1);
    decode_range(in, docs.subspan(m + 1), d + 1, hi);
}

}  // namespace interp_detail

// Recursive middle-first encoding of a strictly increasing sequence within
// [lo, hi]; the element count is the decoder's side information.
inline void interp_encode(bit_writer& out, std::span<const uint32_t> docs, uint64_t lo,
                          uint64_t hi) {
    uint64_t prev = lo == 0 ? 0 : lo - 1;
    for (size_t i = 0; i < docs.size(); ++i) {
        if (docs[i] < lo || docs[i] > hi || (i > 0 && docs[i] <= prev))
            throw domain_error("interp input not strictly increasing within range");
        prev = docs[i];
    }
    if (hi < lo + docs.size() - 1 && !docs.empty())
        throw domain_error("interp range too small for the element count");
    interp_detail::encode_range(out, docs, lo, hi);
}

inline std::vector<uint32_t> interp_decode(bit_reader& in, size_t count, uint64_t lo,
                                           uint64_t hi) {
    if (count > 0 && hi < lo + count - 1)
        throw format_error("interp range too small for the element count");
    std::vector<uint32_t> docs(count);
    interp_detail::decode_range(in, docs, lo, hi);
    return docs;
}

struct interp_config {
    bool blocked = false;
    uint32_t block_size = 128;
    bool padding = false;
    bool redundant_max = false;
};

// Per-block encoder instrumentation for size differentials and range checks.
struct block_interp_stats {
    std::vector<uint32_t> block_maxima;
    std::vector<std::pair<uint32_t, uint32_t>> rebased_ranges;  // [first, max] after rebasing
    uint64_t redundant_bits = 0;
};

// Appendix-style blocked layout: per block a VByte of the block maximum
// (rebased by the running maximum, block size subtracted), the redundant
// in-block maximum when configured, then the block's remaining IDs
// interpolative-coded below the maximum.
inline void block_interp_encode(bit_writer& out, std::span<const uint32_t> docs,
                                const interp_config& cfg, block_interp_stats* stats = nullptr) {
    if (cfg.block_size == 0) throw domain_error("block size must be >= 1");
    uint64_t prev_max = 0;
    for (size_t begin = 0; begin < docs.size(); begin += cfg.block_size) {
        size_t len = std::min<size_t>(cfg.block_size, docs.size() - begin);
        auto block = docs.subspan(begin, len);
        uint64_t block_max = block.back();
        if (block_max <= prev_max || block.front() <= prev_max)
            throw domain_error("block-interp input not strictly increasing");
        uint64_t rebased_max = block_max - prev_max;
        write_vbyte(out, rebased_max - len + 1);
        if (cfg.redundant_max) {
            write_vbyte(out, rebased_max);
            if (stats) stats->redundant_bits += vbyte_bits(rebased_max);
        }
        if (stats) {
            stats->block_maxima.push_back(uint32_t(block_max));
            stats->rebased_ranges.emplace_back(uint32_t(block.front() - prev_max),
                                               uint32_t(rebased_max));
        }
        if (len > 1) {
            std::vector<uint32_t> rebased(len - 1);
            for (size_t i = 0; i + 1 < len; ++i) rebased[i] = uint32_t(block[i] - prev_max);
            interp_encode(out, rebased, 1, rebased_max - 1);
        }
        if (cfg.padding) out.align_to(8);
        prev_max = block_max;
    }
}

inline std::vector<uint32_t> block_interp_decode(bit_reader& in, size_t count,
                                                 const interp_config& cfg) {
    if (cfg.block_size == 0) throw domain_error("block size must be >= 1");
    std::vector<uint32_t> docs;
    docs.reserve(count);
    uint64_t prev_max = 0;
    for (size_t begin = 0; begin < count; begin += cfg.block_size) {
        size_t len = std::min<size_t>(cfg.block_size, count - begin);
        uint64_t rebased_max = read_vbyte(in) + len - 1;
        if (cfg.redundant_max) {
            if (read_vbyte(in) != rebased_max) throw format_error("redundant block maximum mismatch");
        }
        if (len > 1) {
            auto rebased = interp_decode(in, len - 1, 1, rebased_max - 1);
            for (uint32_t v : rebased) docs.push_back(uint32_t(v + prev_max));
        }
        docs.push_back(uint32_t(prev_max + rebased_max));
        if (cfg.padding) in.align_to(8);
        prev_max += rebased_max;
    }
    return docs;
}

}  // namespace catr
