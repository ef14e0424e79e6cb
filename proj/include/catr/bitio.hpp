#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace catr {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input exhausted before the requested data could be read.
class out_of_data : public error {
public:
    using error::error;
};

// Malformed or inconsistent serialized data.
class format_error : public error {
public:
    using error::error;
};

// Argument outside the domain of an operation.
class domain_error : public error {
public:
    using error::error;
};

/// Appends bits most-significant first into a growable byte buffer.
/// The buffer is always zero-padded to the byte boundary; bit_count() is
/// the authoritative size, padding bits are not part of the stream.
class bit_writer {
public:
    void write_bit(unsigned bit) {
        unsigned off = bit_count_ & 7;
        if (off == 0) buf_.push_back(0);
        if (bit) buf_.back() |= uint8_t(0x80u >> off);
        ++bit_count_;
    }

    void write_bits(uint64_t value, unsigned width) {
        if (width > 64) throw domain_error("bit width > 64");
        if (width < 64 && (value >> width) != 0)
            throw domain_error("value does not fit in " + std::to_string(width) + " bits");
        unsigned rem = width;
        while (rem > 0) {
            unsigned off = bit_count_ & 7;
            if (off == 0) buf_.push_back(0);
            unsigned take = 8 - off;
            if (take > rem) take = rem;
            uint64_t chunk = (value >> (rem - take)) & ((uint64_t(1) << take) - 1);
            buf_.back() |= uint8_t(chunk << (8 - off - take));
            bit_count_ += take;
            rem -= take;
        }
    }

    // Zero-pads to the next multiple of `granularity` bits (8 for byte codes).
    void align_to(unsigned granularity) {
        while (bit_count_ % granularity != 0) write_bit(0);
    }

    uint64_t bit_count() const noexcept { return bit_count_; }
    const std::vector<uint8_t>& bytes() const noexcept { return buf_; }
    std::vector<uint8_t> take() noexcept { return std::move(buf_); }

private:
    std::vector<uint8_t> buf_;
    uint64_t bit_count_ = 0;
};

/// Sequential most-significant-bit-first reader over a byte buffer,
/// optionally restricted to a bit window [begin, begin + length).
class bit_reader {
public:
    explicit bit_reader(std::span<const uint8_t> bytes)
        : buf_(bytes), pos_(0), end_(uint64_t(bytes.size()) * 8) {}

    bit_reader(std::span<const uint8_t> bytes, uint64_t bit_begin, uint64_t bit_length)
        : buf_(bytes), pos_(bit_begin), end_(bit_begin + bit_length) {
        if (end_ > uint64_t(bytes.size()) * 8) throw out_of_data("bit window beyond buffer");
    }

    unsigned read_bit() {
        if (pos_ >= end_) throw out_of_data("read past end of bit stream");
        return take_bit();
    }

    // Arithmetic-decoder tail behavior: reads past the window yield zeros.
    unsigned read_bit_or_zero() noexcept {
        if (pos_ >= end_) {
            ++pos_;
            return 0;
        }
        return take_bit();
    }

    uint64_t read_bits(unsigned width) {
        if (width > 64) throw domain_error("bit width > 64");
        if (remaining() < width) throw out_of_data("read past end of bit stream");
        uint64_t value = 0;
        unsigned rem = width;
        while (rem > 0) {
            unsigned off = pos_ & 7;
            unsigned take = 8 - off;
            if (take > rem) take = rem;
            uint64_t chunk = (buf_[pos_ >> 3] >> (8 - off - take)) & ((uint64_t(1) << take) - 1);
            value = (value << take) | chunk;
            pos_ += take;
            rem -= take;
        }
        return value;
    }

    void align_to(unsigned granularity) {
        while (pos_ % granularity != 0) read_bit();
    }

    uint64_t position() const noexcept { return pos_; }
    uint64_t remaining() const noexcept { return pos_ >= end_ ? 0 : end_ - pos_; }

private:
    unsigned take_bit() {
        unsigned bit = (buf_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
        ++pos_;
        return bit;
    }

    std::span<const uint8_t> buf_;
    uint64_t pos_;
    uint64_t end_;
};

}  // namespace catr
