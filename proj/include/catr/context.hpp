#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "catr/bitio.hpp"

namespace catr {

// Longest possible run of non-terminator trits: no gap exceeds nbDocuments.
inline unsigned forced2_cap(uint64_t nb_documents) {
    if (nb_documents == 0) throw domain_error("nbDocuments must be >= 1");
    return unsigned(std::bit_width(nb_documents) - 1);
}

struct context_params {
    unsigned k = 1;       // exact-suffix length
    unsigned w = 0;       // counting-window length
    unsigned k_init = 0;  // maximum initial-context depth
    unsigned norm_bits = 8;
    unsigned halving_exponent = 0;  // adaptive: halve counters every 2^e coded symbols

    unsigned general_contexts() const { return (w + 1) << k; }
    unsigned initial_contexts() const { return (1u << (k_init + 1)) - 1; }
    uint64_t halving_period() const { return uint64_t(1) << halving_exponent; }
};

inline void validate_params(const context_params& p) {
    if (p.k < 1 || p.k > 24) throw format_error("context parameter k out of range");
    if (p.w > 40) throw format_error("context parameter w out of range");
    if (p.k_init > p.k + p.w) throw format_error("kInit exceeds k + w");
    if (p.norm_bits < 2 || p.norm_bits > 16) throw format_error("normBits out of range");
    if (p.halving_exponent > 30) throw format_error("halving exponent out of range");
}

// Model storage cost in bits for the static parameter rule (w = k+1, kInit = ceil(k/3)).
inline uint64_t static_model_bits(unsigned k, unsigned norm_bits) {
    unsigned w = k + 1;
    unsigned k_init = (k + 2) / 3;
    uint64_t contexts = (uint64_t(w + 1) << k) + (uint64_t(1) << (k_init + 1)) - 1;
    return 2 * uint64_t(norm_bits) * contexts;
}

namespace detail {
inline void clamp_to_cap(context_params& p, unsigned cap) {
    if (p.k + p.w > cap) {
        p.k = std::max(1u, cap / 2);
        p.w = cap > p.k ? cap - p.k : 0;
    }
}
}  // namespace detail

// Largest k whose model fits in 2% of nbPointers; w = k+1, kInit = ceil(k/3).
inline context_params select_static_params(uint64_t nb_pointers, uint64_t nb_documents,
                                           unsigned norm_bits = 8) {
    if (nb_pointers == 0) throw domain_error("nbPointers must be >= 1");
    unsigned k = 1;
    while (k < 24 && 50 * static_model_bits(k + 1, norm_bits) <= nb_pointers) ++k;
    context_params p;
    p.k = k;
    p.w = k + 1;
    p.norm_bits = norm_bits;
    detail::clamp_to_cap(p, forced2_cap(nb_documents));
    p.k_init = std::min((p.k + 2) / 3, p.k + p.w);
    return p;
}

// k = w from a linear fit on log nbPointers; kInit = min(2k - 1, 16);
// counters are halved every 2^k coded symbols.
inline context_params select_adaptive_params(uint64_t nb_pointers, uint64_t nb_documents) {
    if (nb_pointers == 0) throw domain_error("nbPointers must be >= 1");
    constexpr double a = 1.67264;
    constexpr double b = -2.24758;
    double raw = std::floor(std::log(double(nb_pointers)) / a + b + 0.5);
    unsigned k = raw < 1.0 ? 1u : unsigned(raw);
    context_params p;
    p.k = k;
    p.w = k;
    detail::clamp_to_cap(p, forced2_cap(nb_documents));
    p.k_init = std::min({2 * p.k - 1, 16u, p.k + p.w});
    p.halving_exponent = p.k;
    return p;
}

/// Rolling context over the terminator-class flags of the last k + w symbols
/// of the current list. Flag bit 0 is the most recent symbol.
class context_state {
public:
    void reset() {
        flags_ = 0;
        seen_ = 0;
        run_ = 0;
    }

    void push(bool terminator) {
        flags_ = (flags_ << 1) | uint64_t(terminator);
        run_ = terminator ? 0 : run_ + 1;
        ++seen_;
    }

    bool in_initial(const context_params& p) const { return seen_ < p.k + p.w; }

    unsigned initial_id(const context_params& p) const {
        unsigned depth = unsigned(std::min<uint64_t>(seen_, p.k_init));
        return (1u << depth) - 1 + unsigned(flags_ & ((uint64_t(1) << depth) - 1));
    }

    unsigned general_id(const context_params& p) const {
        unsigned recent = unsigned(flags_ & ((uint64_t(1) << p.k) - 1));
        uint64_t window = (flags_ >> p.k) & ((uint64_t(1) << p.w) - 1);
        return (unsigned(std::popcount(window)) << p.k) | recent;
    }

    // Non-terminator symbols since the last terminator (or since the list start).
    uint32_t run() const noexcept { return run_; }
    uint64_t seen() const noexcept { return seen_; }

private:
    uint64_t flags_ = 0;
    uint64_t seen_ = 0;
    uint32_t run_ = 0;
};

/// Occurrence counters for every initial and general context, 3 per context
/// for trits, 4 for quatrits.
class occurrence_table {
public:
    occurrence_table(const context_params& p, unsigned symbols, uint32_t initial_value)
        : symbols_(symbols),
          init_(size_t(p.initial_contexts()) * symbols, initial_value),
          general_(size_t(p.general_contexts()) * symbols, initial_value) {}

    unsigned symbols() const { return symbols_; }

    std::span<uint32_t> initial(unsigned id) { return {&init_[size_t(id) * symbols_], symbols_}; }
    std::span<uint32_t> general(unsigned id) {
        return {&general_[size_t(id) * symbols_], symbols_};
    }
    std::span<const uint32_t> initial(unsigned id) const {
        return {&init_[size_t(id) * symbols_], symbols_};
    }
    std::span<const uint32_t> general(unsigned id) const {
        return {&general_[size_t(id) * symbols_], symbols_};
    }

    std::span<uint32_t> at(bool is_initial, unsigned id) {
        return is_initial ? initial(id) : general(id);
    }

    void add(bool is_initial, unsigned id, unsigned sym) { ++at(is_initial, id)[sym]; }

    void halve_all() {
        for (uint32_t& c : init_) c = (c + 1) / 2;
        for (uint32_t& c : general_) c = (c + 1) / 2;
    }

    bool operator==(const occurrence_table& o) const {
        return symbols_ == o.symbols_ && init_ == o.init_ && general_ == o.general_;
    }

private:
    unsigned symbols_;
    std::vector<uint32_t> init_;
    std::vector<uint32_t> general_;
};

// One adaptive update: bump the (context, symbol) counter; once the context's
// occurrences no longer fit in halving_exponent bits, halve them (ceil, so no
// counter drops below 1). Counters start at 1, P(i|C) = 1/3 each.
inline void adaptive_step(occurrence_table& table, bool is_initial, unsigned id, unsigned sym,
                          const context_params& p) {
    auto counts = table.at(is_initial, id);
    ++counts[sym];
    uint64_t total = 0;
    for (uint32_t c : counts) total += c;
    if (total >= p.halving_period())
        for (uint32_t& c : counts) c = (c + 1) / 2;
}

/// Scales raw counts to integers summing to 2^norm_bits - 1 with
/// largest-remainder rounding; nonzero raw counts keep at least 1.
inline std::vector<uint32_t> normalize_counts(std::span<const uint32_t> raw, unsigned norm_bits) {
    if (norm_bits < 2) throw domain_error("normBits must be >= 2");
    size_t n = raw.size();
    uint32_t target = (1u << norm_bits) - 1;
    if (target < n) throw domain_error("normBits too small for the alphabet");
    uint64_t sum = std::accumulate(raw.begin(), raw.end(), uint64_t(0));
    std::vector<uint32_t> out(n, 0);

    if (sum == 0) {
        uint32_t base = target / uint32_t(n);
        uint32_t extra = target % uint32_t(n);
        for (size_t i = 0; i < n; ++i) out[i] = base + (i < extra ? 1 : 0);
        return out;
    }

    std::vector<uint64_t> rem(n, 0);
    std::vector<char> bumped(n, 0);
    uint64_t assigned = 0;
    for (size_t i = 0; i < n; ++i) {
        uint64_t num = uint64_t(raw[i]) * target;
        out[i] = uint32_t(num / sum);
        rem[i] = num % sum;
        if (raw[i] > 0 && out[i] == 0) {
            out[i] = 1;
            bumped[i] = 1;
        }
        assigned += out[i];
    }

    while (assigned > target) {
        size_t largest = n;
        for (size_t i = 0; i < n; ++i)
            if (out[i] > 1 && (largest == n || out[i] > out[largest])) largest = i;
        --out[largest];
        --assigned;
    }
    while (assigned < target) {
        size_t best = n;
        for (size_t i = 0; i < n; ++i) {
            if (bumped[i] || raw[i] == 0) continue;
            if (best == n || rem[i] > rem[best]) best = i;
        }
        ++out[best];
        rem[best] = 0;
        ++assigned;
    }
    return out;
}

inline occurrence_table normalize_table(const occurrence_table& raw, const context_params& p) {
    occurrence_table norm(p, raw.symbols(), 0);
    for (unsigned id = 0; id < p.initial_contexts(); ++id) {
        auto v = normalize_counts(raw.initial(id), p.norm_bits);
        std::copy(v.begin(), v.end(), norm.initial(id).begin());
    }
    for (unsigned id = 0; id < p.general_contexts(); ++id) {
        auto v = normalize_counts(raw.general(id), p.norm_bits);
        std::copy(v.begin(), v.end(), norm.general(id).begin());
    }
    return norm;
}

// Canonical model layout: initial contexts by depth then flag value, general
// contexts by window count then flag value; per context every normalized
// count except occ'(c, 1), each norm_bits wide.
inline void write_static_model(bit_writer& out, const occurrence_table& norm,
                               const context_params& p) {
    auto emit = [&](std::span<const uint32_t> counts) {
        out.write_bits(counts[0], p.norm_bits);
        out.write_bits(counts[2], p.norm_bits);
        if (norm.symbols() == 4) out.write_bits(counts[3], p.norm_bits);
    };
    for (unsigned id = 0; id < p.initial_contexts(); ++id) emit(norm.initial(id));
    for (unsigned id = 0; id < p.general_contexts(); ++id) emit(norm.general(id));
}

inline occurrence_table read_static_model(bit_reader& in, const context_params& p,
                                          unsigned symbols) {
    occurrence_table norm(p, symbols, 0);
    uint32_t target = (1u << p.norm_bits) - 1;
    auto fill = [&](std::span<uint32_t> counts) {
        counts[0] = uint32_t(in.read_bits(p.norm_bits));
        counts[2] = uint32_t(in.read_bits(p.norm_bits));
        uint64_t stored = counts[0] + counts[2];
        if (symbols == 4) {
            counts[3] = uint32_t(in.read_bits(p.norm_bits));
            stored += counts[3];
        }
        if (stored > target) throw format_error("model counts exceed the normalization target");
        counts[1] = uint32_t(target - stored);
    };
    for (unsigned id = 0; id < p.initial_contexts(); ++id) fill(norm.initial(id));
    for (unsigned id = 0; id < p.general_contexts(); ++id) fill(norm.general(id));
    return norm;
}

inline uint64_t serialized_model_bits(const context_params& p, unsigned symbols) {
    uint64_t per_context = uint64_t(symbols - 1) * p.norm_bits;
    return per_context * (uint64_t(p.initial_contexts()) + p.general_contexts());
}

}  // namespace catr
