#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

#include "catr/bitio.hpp"

namespace catr {

// All codes below map positive integers only: document IDs strictly increase,
// so the integer 0 never has to be coded.

inline void write_unary(bit_writer& out, uint64_t n) {
    if (n == 0) throw domain_error("unary input must be >= 1");
    for (uint64_t i = 1; i < n; ++i) out.write_bit(1);
    out.write_bit(0);
}

inline uint64_t read_unary(bit_reader& in) {
    uint64_t n = 1;
    while (in.read_bit() == 1) ++n;
    return n;
}

inline void write_gamma(bit_writer& out, uint64_t n) {
    if (n == 0) throw domain_error("gamma input must be >= 1");
    unsigned width = unsigned(std::bit_width(n));
    write_unary(out, width);
    if (width > 1) out.write_bits(n & ((uint64_t(1) << (width - 1)) - 1), width - 1);
}

inline uint64_t read_gamma(bit_reader& in) {
    unsigned width = unsigned(read_unary(in));
    if (width > 64) throw format_error("gamma length out of range");
    uint64_t low = width > 1 ? in.read_bits(width - 1) : 0;
    return (uint64_t(1) << (width - 1)) | low;
}

inline void write_delta(bit_writer& out, uint64_t n) {
    if (n == 0) throw domain_error("delta input must be >= 1");
    unsigned width = unsigned(std::bit_width(n));
    write_gamma(out, width);
    if (width > 1) out.write_bits(n & ((uint64_t(1) << (width - 1)) - 1), width - 1);
}

inline uint64_t read_delta(bit_reader& in) {
    unsigned width = unsigned(read_gamma(in));
    if (width == 0 || width > 64) throw format_error("delta length out of range");
    uint64_t low = width > 1 ? in.read_bits(width - 1) : 0;
    return (uint64_t(1) << (width - 1)) | low;
}

// Fixed-width code for n in [1, universe]; width = bit_width(universe - 1).
inline unsigned binary_code_width(uint64_t universe) {
    if (universe == 0) throw domain_error("universe must be >= 1");
    return unsigned(std::bit_width(universe - 1));
}

inline void write_binary(bit_writer& out, uint64_t n, uint64_t universe) {
    if (n == 0 || n > universe) throw domain_error("binary input out of range");
    out.write_bits(n - 1, binary_code_width(universe));
}

inline uint64_t read_binary(bit_reader& in, uint64_t universe) {
    unsigned width = binary_code_width(universe);
    uint64_t v = width > 0 ? in.read_bits(width) : 0;
    if (v >= universe) throw format_error("binary code out of range");
    return v + 1;
}

// Truncated binary over `range` values, shorter codewords for smaller values.
inline void write_truncated(bit_writer& out, uint64_t v, uint64_t range) {
    if (range == 0 || v >= range) throw domain_error("truncated-binary input out of range");
    if (range == 1) return;
    unsigned s = unsigned(std::bit_width(range - 1));
    uint64_t shorts = (uint64_t(1) << s) - range;
    if (v < shorts)
        out.write_bits(v, s - 1);
    else
        out.write_bits(v + shorts, s);
}

inline uint64_t read_truncated(bit_reader& in, uint64_t range) {
    if (range == 0) throw domain_error("empty truncated-binary range");
    if (range == 1) return 0;
    unsigned s = unsigned(std::bit_width(range - 1));
    uint64_t shorts = (uint64_t(1) << s) - range;
    uint64_t x = in.read_bits(s - 1);
    if (x < shorts) return x;
    return ((x << 1) | in.read_bit()) - shorts;
}

// Boldi-Vigna zeta code with shape parameter zk >= 1; zeta_1 equals gamma.
inline void write_zeta(bit_writer& out, uint64_t n, unsigned zk) {
    if (n == 0) throw domain_error("zeta input must be >= 1");
    if (zk == 0) throw domain_error("zeta parameter must be >= 1");
    unsigned h = (unsigned(std::bit_width(n)) - 1) / zk;
    write_unary(out, h + 1);
    uint64_t base = uint64_t(1) << (h * zk);
    uint64_t range = (uint64_t(1) << ((h + 1) * zk)) - base;
    write_truncated(out, n - base, range);
}

inline uint64_t read_zeta(bit_reader& in, unsigned zk) {
    if (zk == 0) throw domain_error("zeta parameter must be >= 1");
    uint64_t h = read_unary(in) - 1;
    if ((h + 1) * zk > 63) throw format_error("zeta magnitude out of range");
    uint64_t base = uint64_t(1) << (h * zk);
    uint64_t range = (uint64_t(1) << ((h + 1) * zk)) - base;
    return base + read_truncated(in, range);
}

// Gallager-Van Voorhis optimal Golomb parameter for gap density p.
inline uint64_t golomb_parameter(double density) {
    if (density <= 0.0) throw domain_error("density must be positive");
    if (density >= 1.0) return 1;
    double b = std::ceil(std::log(2.0 - density) / -std::log1p(-density));
    if (!(b >= 1.0)) return 1;
    return uint64_t(b);
}

inline void write_golomb(bit_writer& out, uint64_t n, uint64_t b) {
    if (n == 0) throw domain_error("golomb input must be >= 1");
    if (b == 0) throw domain_error("golomb parameter must be >= 1");
    uint64_t q = (n - 1) / b;
    write_unary(out, q + 1);
    write_truncated(out, (n - 1) % b, b);
}

inline uint64_t read_golomb(bit_reader& in, uint64_t b) {
    if (b == 0) throw domain_error("golomb parameter must be >= 1");
    uint64_t q = read_unary(in) - 1;
    return q * b + read_truncated(in, b) + 1;
}

// Rice exponent: the Golomb parameter rounded to the nearest power of two,
// lower power on ties.
inline unsigned rice_exponent(uint64_t b) {
    if (b == 0) throw domain_error("rice parameter must be >= 1");
    unsigned r = unsigned(std::bit_width(b)) - 1;
    uint64_t down = uint64_t(1) << r;
    if (r < 63 && (b - down) > ((down << 1) - b)) ++r;
    return r;
}

inline void write_rice(bit_writer& out, uint64_t n, unsigned r) {
    if (n == 0) throw domain_error("rice input must be >= 1");
    uint64_t q = (n - 1) >> r;
    write_unary(out, q + 1);
    if (r > 0) out.write_bits((n - 1) & ((uint64_t(1) << r) - 1), r);
}

inline uint64_t read_rice(bit_reader& in, unsigned r) {
    uint64_t q = read_unary(in) - 1;
    uint64_t rem = r > 0 ? in.read_bits(r) : 0;
    return (q << r) + rem + 1;
}

// 7-bit groups, least significant first; a set high bit marks continuation.
inline void write_vbyte(bit_writer& out, uint64_t n) {
    if (n == 0) throw domain_error("vbyte input must be >= 1");
    uint64_t v = n - 1;
    while (v >= 128) {
        out.write_bits(0x80u | (v & 0x7Fu), 8);
        v >>= 7;
    }
    out.write_bits(v, 8);
}

inline uint64_t read_vbyte(bit_reader& in) {
    uint64_t v = 0;
    unsigned shift = 0;
    for (;;) {
        uint64_t byte = in.read_bits(8);
        v |= (byte & 0x7Fu) << shift;
        if ((byte & 0x80u) == 0) break;
        shift += 7;
        if (shift > 63) throw format_error("vbyte code too long");
    }
    return v + 1;
}

inline unsigned vbyte_bits(uint64_t n) {
    uint64_t v = n - 1;
    unsigned bytes = 1;
    while (v >= 128) {
        v >>= 7;
        ++bytes;
    }
    return 8 * bytes;
}

// Same scheme on nibbles: 3 payload bits plus a continuation bit.
inline void write_vnibble(bit_writer& out, uint64_t n) {
    if (n == 0) throw domain_error("vnibble input must be >= 1");
    uint64_t v = n - 1;
    while (v >= 8) {
        out.write_bits(0x8u | (v & 0x7u), 4);
        v >>= 3;
    }
    out.write_bits(v, 4);
}

inline uint64_t read_vnibble(bit_reader& in) {
    uint64_t v = 0;
    unsigned shift = 0;
    for (;;) {
        uint64_t nib = in.read_bits(4);
        v |= (nib & 0x7u) << shift;
        if ((nib & 0x8u) == 0) break;
        shift += 3;
        if (shift > 63) throw format_error("vnibble code too long");
    }
    return v + 1;
}

}  // namespace catr
