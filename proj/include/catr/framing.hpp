#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catr/bitio.hpp"

namespace catr {

enum class codec_kind : uint8_t {
    tc = 0,
    tca = 1,
    tc_quatrit = 2,
    tca_quatrit = 3,
    interp = 4,
    block_interp = 5,
    unary = 6,
    binary = 7,
    gamma = 8,
    delta = 9,
    zeta = 10,
    golomb = 11,
    rice = 12,
    vbyte = 13,
    vnibble = 14,
    batch = 15,
};

inline std::string codec_name(codec_kind k) {
    switch (k) {
        case codec_kind::tc: return "tc";
        case codec_kind::tca: return "tca";
        case codec_kind::tc_quatrit: return "tcq";
        case codec_kind::tca_quatrit: return "tcaq";
        case codec_kind::interp: return "interp";
        case codec_kind::block_interp: return "block-interp";
        case codec_kind::unary: return "unary";
        case codec_kind::binary: return "binary";
        case codec_kind::gamma: return "gamma";
        case codec_kind::delta: return "delta";
        case codec_kind::zeta: return "zeta";
        case codec_kind::golomb: return "golomb";
        case codec_kind::rice: return "rice";
        case codec_kind::vbyte: return "vbyte";
        case codec_kind::vnibble: return "vnibble";
        case codec_kind::batch: return "batch";
    }
    return "unknown";
}

struct section_bits {
    uint64_t header = 0;
    uint64_t lengths = 0;
    uint64_t model = 0;
    uint64_t payload = 0;

    uint64_t total() const { return header + lengths + model + payload; }
};

constexpr size_t header_bytes = 58;
constexpr uint8_t format_version = 1;
constexpr std::string_view format_magic = "CATR";

/// Fixed 58-byte header: magic, version, codec id, nbDocuments / nbWords /
/// nbPointers (u64 LE), four codec parameter bytes, then the lengths, model
/// and payload section sizes in bits (u64 LE each).
struct payload_header {
    uint8_t version = format_version;
    codec_kind codec = codec_kind::tc;
    uint64_t nb_documents = 0;
    uint64_t nb_words = 0;
    uint64_t nb_pointers = 0;
    uint8_t p0 = 0, p1 = 0, p2 = 0, p3 = 0;
    uint64_t lengths_bits = 0;
    uint64_t model_bits = 0;
    uint64_t payload_bits = 0;

    uint64_t stream_bits() const { return lengths_bits + model_bits + payload_bits; }

    section_bits sections() const {
        return {header_bytes * 8, lengths_bits, model_bits, payload_bits};
    }
};

namespace framing_detail {
inline void put_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(uint8_t((v >> (8 * i)) & 0xFF));
}
inline uint64_t get_u64(std::span<const uint8_t> in, size_t at) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(in[at + i]) << (8 * i);
    return v;
}
}  // namespace framing_detail

inline std::vector<uint8_t> write_header(const payload_header& h) {
    std::vector<uint8_t> out;
    out.reserve(header_bytes);
    for (char c : format_magic) out.push_back(uint8_t(c));
    out.push_back(h.version);
    out.push_back(uint8_t(h.codec));
    framing_detail::put_u64(out, h.nb_documents);
    framing_detail::put_u64(out, h.nb_words);
    framing_detail::put_u64(out, h.nb_pointers);
    out.push_back(h.p0);
    out.push_back(h.p1);
    out.push_back(h.p2);
    out.push_back(h.p3);
    framing_detail::put_u64(out, h.lengths_bits);
    framing_detail::put_u64(out, h.model_bits);
    framing_detail::put_u64(out, h.payload_bits);
    return out;
}

// Parses the fixed header without checking the trailing payload size;
// batch containers hold sub-payloads whose extent this determines.
inline payload_header parse_header_prefix(std::span<const uint8_t> bytes) {
    if (bytes.size() < header_bytes) throw format_error("payload shorter than its header");
    for (size_t i = 0; i < format_magic.size(); ++i)
        if (bytes[i] != uint8_t(format_magic[i])) throw format_error("bad magic bytes");
    payload_header h;
    h.version = bytes[4];
    if (h.version != format_version) throw format_error("unknown format version");
    if (bytes[5] > uint8_t(codec_kind::batch)) throw format_error("unknown codec id");
    h.codec = codec_kind(bytes[5]);
    h.nb_documents = framing_detail::get_u64(bytes, 6);
    h.nb_words = framing_detail::get_u64(bytes, 14);
    h.nb_pointers = framing_detail::get_u64(bytes, 22);
    h.p0 = bytes[30];
    h.p1 = bytes[31];
    h.p2 = bytes[32];
    h.p3 = bytes[33];
    h.lengths_bits = framing_detail::get_u64(bytes, 34);
    h.model_bits = framing_detail::get_u64(bytes, 42);
    h.payload_bits = framing_detail::get_u64(bytes, 50);
    return h;
}

inline uint64_t payload_size_bytes(const payload_header& h) {
    return header_bytes + (h.stream_bits() + 7) / 8;
}

inline payload_header parse_header(std::span<const uint8_t> bytes) {
    payload_header h = parse_header_prefix(bytes);
    if (bytes.size() != payload_size_bytes(h))
        throw format_error("section bit counts do not match the payload size");
    return h;
}

/// A compressed index image plus its exact per-section bit accounting.
struct compressed_index {
    std::vector<uint8_t> bytes;
    payload_header header;
    section_bits sections;

    double bits_per_pointer() const {
        return double(sections.total()) / double(header.nb_pointers);
    }
};

inline compressed_index assemble(payload_header h, bit_writer&& stream, uint64_t lengths_bits,
                                 uint64_t model_bits) {
    uint64_t total = stream.bit_count();
    h.lengths_bits = lengths_bits;
    h.model_bits = model_bits;
    h.payload_bits = total - lengths_bits - model_bits;
    compressed_index out;
    out.bytes = write_header(h);
    std::vector<uint8_t> body = stream.take();
    out.bytes.insert(out.bytes.end(), body.begin(), body.end());
    out.header = h;
    out.sections = h.sections();
    return out;
}

}  // namespace catr
