#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "catr/bitio.hpp"

namespace catr {

/// Cumulative frequencies over a small alphabet. Counts of symbols that can
/// never occur at a step may be zero; an encoded symbol's count must be >= 1.
class freq_table {
public:
    freq_table(std::initializer_list<uint32_t> counts) : n_(0) {
        for (uint32_t c : counts) counts_[n_++] = c;
    }
    explicit freq_table(std::span<const uint32_t> counts) : n_(counts.size()) {
        for (size_t i = 0; i < n_; ++i) counts_[i] = counts[i];
    }

    uint32_t count(unsigned sym) const { return counts_[sym]; }
    size_t size() const { return n_; }

    uint64_t total() const {
        uint64_t t = 0;
        for (size_t i = 0; i < n_; ++i) t += counts_[i];
        return t;
    }

    uint64_t cum_below(unsigned sym) const {
        uint64_t t = 0;
        for (unsigned i = 0; i < sym; ++i) t += counts_[i];
        return t;
    }

private:
    std::array<uint32_t, 4> counts_{};
    size_t n_;
};

namespace arith_detail {
constexpr uint32_t state_mask = 0xFFFFFFFFu;
constexpr uint32_t half = 0x80000000u;
constexpr uint32_t quarter = 0x40000000u;
constexpr uint64_t max_total = uint64_t(1) << 30;
}  // namespace arith_detail

/// Integer range encoder over 32-bit state with carry-free underflow handling.
/// Identical frequency-table sequences on both sides make enc/dec bit-exact.
class arithmetic_encoder {
public:
    explicit arithmetic_encoder(bit_writer& out) : out_(&out) {}

    void encode(const freq_table& f, unsigned sym) {
        using namespace arith_detail;
        uint64_t total = f.total();
        if (total == 0 || total > max_total) throw domain_error("frequency total out of range");
        if (f.count(sym) == 0) throw domain_error("cannot encode a zero-count symbol");
        uint64_t lo = f.cum_below(sym);
        uint64_t hi = lo + f.count(sym);

        uint64_t range = uint64_t(high_) - low_ + 1;
        uint32_t new_low = low_ + uint32_t(lo * range / total);
        uint32_t new_high = low_ + uint32_t(hi * range / total - 1);
        low_ = new_low;
        high_ = new_high;

        while (((low_ ^ high_) & half) == 0) {
            unsigned bit = low_ >> 31;
            out_->write_bit(bit);
            for (; pending_ > 0; --pending_) out_->write_bit(bit ^ 1u);
            low_ = low_ << 1;
            high_ = (high_ << 1) | 1u;
        }
        while ((low_ & ~high_ & quarter) != 0) {
            ++pending_;
            low_ = (low_ << 1) ^ half;
            high_ = ((high_ << 1) ^ half) | half | 1u;
        }
    }

    // One disambiguating bit; the decoder reads zeros past the payload end.
    void finish() { out_->write_bit(1); }

private:
    bit_writer* out_;
    uint32_t low_ = 0;
    uint32_t high_ = arith_detail::state_mask;
    uint64_t pending_ = 0;
};

class arithmetic_decoder {
public:
    explicit arithmetic_decoder(bit_reader& in) : in_(&in) {
        for (int i = 0; i < 32; ++i) code_ = (code_ << 1) | in_->read_bit_or_zero();
    }

    unsigned decode(const freq_table& f) {
        using namespace arith_detail;
        uint64_t total = f.total();
        if (total == 0 || total > max_total) throw domain_error("frequency total out of range");

        uint64_t range = uint64_t(high_) - low_ + 1;
        uint64_t offset = code_ - low_;
        uint64_t value = ((offset + 1) * total - 1) / range;

        unsigned sym = 0;
        uint64_t lo = 0;
        while (sym + 1 < f.size() && lo + f.count(sym) <= value) lo += f.count(sym++);
        uint64_t hi = lo + f.count(sym);

        uint32_t new_low = low_ + uint32_t(lo * range / total);
        uint32_t new_high = low_ + uint32_t(hi * range / total - 1);
        low_ = new_low;
        high_ = new_high;

        while (((low_ ^ high_) & half) == 0) {
            code_ = (code_ << 1) | in_->read_bit_or_zero();
            low_ = low_ << 1;
            high_ = (high_ << 1) | 1u;
        }
        while ((low_ & ~high_ & quarter) != 0) {
            code_ = (code_ & half) | ((code_ << 1) & (state_mask >> 1)) | in_->read_bit_or_zero();
            low_ = (low_ << 1) ^ half;
            high_ = ((high_ << 1) ^ half) | half | 1u;
        }
        return sym;
    }

private:
    bit_reader* in_;
    uint32_t low_ = 0;
    uint32_t high_ = arith_detail::state_mask;
    uint32_t code_ = 0;
};

}  // namespace catr
