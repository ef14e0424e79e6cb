#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "catr/bitio.hpp"

namespace catr {

using gap_list = std::vector<uint32_t>;

/// Packed sequence of base-3 or base-4 symbols, 2 bits per symbol.
class trit_list {
public:
    void push_back(unsigned sym) {
        unsigned off = (size_ & 31) * 2;
        if (off == 0) words_.push_back(0);
        words_.back() |= uint64_t(sym & 3u) << off;
        ++size_;
    }

    unsigned operator[](size_t i) const { return (words_[i >> 5] >> ((i & 31) * 2)) & 3u; }

    size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    size_t count(unsigned sym) const {
        size_t n = 0;
        for (size_t i = 0; i < size_; ++i)
            if ((*this)[i] == sym) ++n;
        return n;
    }

    bool operator==(const trit_list& o) const noexcept {
        return size_ == o.size_ && words_ == o.words_;
    }

private:
    std::vector<uint64_t> words_;
    size_t size_ = 0;
};

// Binary digits of the gap minus the leading 1, each as trit 0/1, then a closing 2.
inline void append_gap_trits(trit_list& out, uint32_t gap) {
    if (gap == 0) throw domain_error("gap must be >= 1");
    int width = std::bit_width(gap);
    for (int i = width - 2; i >= 0; --i) out.push_back((gap >> i) & 1u);
    out.push_back(2);
}

inline trit_list gaps_to_trits(const gap_list& g) {
    trit_list l;
    for (uint32_t gap : g) append_gap_trits(l, gap);
    return l;
}

// Inverse of gaps_to_trits on the prefix holding exactly `count` twos.
inline gap_list trits_to_gaps(const trit_list& l, size_t count) {
    gap_list g;
    g.reserve(count);
    uint64_t value = 1;
    for (size_t i = 0; i < l.size() && g.size() < count; ++i) {
        unsigned t = l[i];
        if (t == 2) {
            g.push_back(uint32_t(value));
            value = 1;
        } else {
            value = value * 2 + t;
            if (value > UINT32_MAX) throw format_error("gap exceeds 32 bits");
        }
    }
    if (g.size() < count) throw out_of_data("trit list holds fewer gaps than requested");
    return g;
}

// Trit body plus a terminal 3; decoding needs no external length.
inline trit_list gaps_to_quatrits(const gap_list& g) {
    trit_list q = gaps_to_trits(g);
    q.push_back(3);
    return q;
}

inline gap_list quatrits_to_gaps(const trit_list& q) {
    gap_list g;
    uint64_t value = 1;
    for (size_t i = 0; i < q.size(); ++i) {
        unsigned t = q[i];
        if (t == 3) {
            if (value != 1) throw format_error("terminator inside a gap body");
            return g;
        }
        if (t == 2) {
            g.push_back(uint32_t(value));
            value = 1;
        } else {
            value = value * 2 + t;
            if (value > UINT32_MAX) throw format_error("gap exceeds 32 bits");
        }
    }
    throw out_of_data("quatrit list lacks its terminator");
}

struct b2_b01 {
    std::vector<uint8_t> b2;   // b2[i] = 1 iff the trit at i is 2
    std::vector<uint8_t> b01;  // the non-2 trits, in order
};

inline b2_b01 split_b2b01(const trit_list& l) {
    b2_b01 r;
    r.b2.reserve(l.size());
    for (size_t i = 0; i < l.size(); ++i) {
        unsigned t = l[i];
        if (t == 2) {
            r.b2.push_back(1);
        } else {
            r.b2.push_back(0);
            r.b01.push_back(uint8_t(t));
        }
    }
    return r;
}

inline trit_list merge_b2b01(const b2_b01& s) {
    trit_list l;
    size_t next01 = 0;
    for (uint8_t flag : s.b2) {
        if (flag) {
            l.push_back(2);
        } else {
            if (next01 >= s.b01.size()) throw format_error("b01 shorter than zeros in b2");
            l.push_back(s.b01[next01++]);
        }
    }
    if (next01 != s.b01.size()) throw format_error("b01 longer than zeros in b2");
    return l;
}

struct tl_b01 {
    trit_list tl;              // trit encoding of the per-gap bit lengths
    std::vector<uint8_t> b01;  // the non-2 trits of the gap trit list
};

inline tl_b01 split_tlb01(const gap_list& g) {
    tl_b01 r;
    gap_list lengths;
    lengths.reserve(g.size());
    for (uint32_t gap : g) {
        if (gap == 0) throw domain_error("gap must be >= 1");
        lengths.push_back(uint32_t(std::bit_width(gap)));
    }
    r.tl = gaps_to_trits(lengths);
    r.b01 = split_b2b01(gaps_to_trits(g)).b01;
    return r;
}

inline gap_list merge_tlb01(const tl_b01& s) {
    gap_list lengths = trits_to_gaps(s.tl, s.tl.count(2));
    gap_list g;
    g.reserve(lengths.size());
    size_t pos = 0;
    for (uint32_t len : lengths) {
        if (len == 0 || len > 32) throw format_error("gap bit length out of range");
        uint64_t value = 1;
        for (uint32_t i = 1; i < len; ++i) {
            if (pos >= s.b01.size()) throw format_error("b01 shorter than the gap lengths require");
            value = value * 2 + s.b01[pos++];
        }
        g.push_back(uint32_t(value));
    }
    if (pos != s.b01.size()) throw format_error("b01 longer than the gap lengths require");
    return g;
}

}  // namespace catr
