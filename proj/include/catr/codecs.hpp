#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catr/framing.hpp"
#include "catr/index.hpp"
#include "catr/interp.hpp"
#include "catr/tritctx.hpp"
#include "catr/universal.hpp"

namespace catr {

struct codec_options {
    tritctx_options tritctx;
    unsigned zeta_zk = 2;
    bool bi_padding = false;
    bool bi_redundant_max = false;
};

inline std::optional<codec_kind> codec_from_name(const std::string& name, codec_options& opt) {
    if (name == "tc") return codec_kind::tc;
    if (name == "tca") return codec_kind::tca;
    if (name == "tcq") return codec_kind::tc_quatrit;
    if (name == "tcaq") return codec_kind::tca_quatrit;
    if (name == "interp") return codec_kind::interp;
    if (name == "block-interp") return codec_kind::block_interp;
    if (name == "block-interp-pad") {
        opt.bi_padding = true;
        return codec_kind::block_interp;
    }
    if (name == "block-interp-rmax") {
        opt.bi_redundant_max = true;
        return codec_kind::block_interp;
    }
    if (name == "block-interp-rmax-pad") {
        opt.bi_padding = true;
        opt.bi_redundant_max = true;
        return codec_kind::block_interp;
    }
    if (name == "unary") return codec_kind::unary;
    if (name == "binary") return codec_kind::binary;
    if (name == "gamma") return codec_kind::gamma;
    if (name == "delta") return codec_kind::delta;
    if (name == "zeta") return codec_kind::zeta;
    if (name == "golomb") return codec_kind::golomb;
    if (name == "rice") return codec_kind::rice;
    if (name == "vbyte") return codec_kind::vbyte;
    if (name == "vnibble") return codec_kind::vnibble;
    if (name == "batch") return codec_kind::batch;
    return std::nullopt;
}

namespace baseline_detail {

inline double list_density(size_t len, uint64_t nb_documents) {
    return double(len) / double(nb_documents);
}

inline void encode_list(bit_writer& out, const inverted_index& idx, size_t word, codec_kind kind,
                        const codec_options& opt) {
    const gap_list& g = idx.words[word];
    switch (kind) {
        case codec_kind::unary:
            for (uint32_t gap : g) write_unary(out, gap);
            break;
        case codec_kind::binary:
            for (uint32_t gap : g) write_binary(out, gap, idx.nb_documents);
            break;
        case codec_kind::gamma:
            for (uint32_t gap : g) write_gamma(out, gap);
            break;
        case codec_kind::delta:
            for (uint32_t gap : g) write_delta(out, gap);
            break;
        case codec_kind::zeta:
            for (uint32_t gap : g) write_zeta(out, gap, opt.zeta_zk);
            break;
        case codec_kind::golomb: {
            uint64_t b = golomb_parameter(list_density(g.size(), idx.nb_documents));
            for (uint32_t gap : g) write_golomb(out, gap, b);
            break;
        }
        case codec_kind::rice: {
            unsigned r = rice_exponent(golomb_parameter(list_density(g.size(), idx.nb_documents)));
            for (uint32_t gap : g) write_rice(out, gap, r);
            break;
        }
        case codec_kind::vbyte:
            out.align_to(8);
            for (uint32_t gap : g) write_vbyte(out, gap);
            break;
        case codec_kind::vnibble:
            out.align_to(4);
            for (uint32_t gap : g) write_vnibble(out, gap);
            break;
        case codec_kind::interp: {
            auto docs = idx.docs(word);
            interp_encode(out, docs, 1, idx.nb_documents);
            break;
        }
        case codec_kind::block_interp: {
            auto docs = idx.docs(word);
            interp_config cfg{true, 128, opt.bi_padding, opt.bi_redundant_max};
            block_interp_encode(out, docs, cfg);
            break;
        }
        default:
            throw domain_error("not a per-list baseline codec");
    }
}

inline gap_list decode_list(bit_reader& in, const payload_header& h, size_t len,
                            codec_kind kind) {
    gap_list g;
    g.reserve(len);
    auto read_gaps = [&](auto&& read_one) {
        uint64_t doc = 0;
        for (size_t i = 0; i < len; ++i) {
            uint64_t gap = read_one();
            doc += gap;
            if (gap == 0 || doc > h.nb_documents)
                throw format_error("decoded document ID beyond nbDocuments");
            g.push_back(uint32_t(gap));
        }
    };
    switch (kind) {
        case codec_kind::unary:
            read_gaps([&] { return read_unary(in); });
            break;
        case codec_kind::binary:
            read_gaps([&] { return read_binary(in, h.nb_documents); });
            break;
        case codec_kind::gamma:
            read_gaps([&] { return read_gamma(in); });
            break;
        case codec_kind::delta:
            read_gaps([&] { return read_delta(in); });
            break;
        case codec_kind::zeta:
            read_gaps([&] { return read_zeta(in, h.p0); });
            break;
        case codec_kind::golomb: {
            uint64_t b = golomb_parameter(list_density(len, h.nb_documents));
            read_gaps([&] { return read_golomb(in, b); });
            break;
        }
        case codec_kind::rice: {
            unsigned r = rice_exponent(golomb_parameter(list_density(len, h.nb_documents)));
            read_gaps([&] { return read_rice(in, r); });
            break;
        }
        case codec_kind::vbyte:
            in.align_to(8);
            read_gaps([&] { return read_vbyte(in); });
            break;
        case codec_kind::vnibble:
            in.align_to(4);
            read_gaps([&] { return read_vnibble(in); });
            break;
        case codec_kind::interp: {
            auto docs = interp_decode(in, len, 1, h.nb_documents);
            g = docs_to_gaps(docs);
            break;
        }
        case codec_kind::block_interp: {
            interp_config cfg{true, 128, h.p0 != 0, h.p1 != 0};
            auto docs = block_interp_decode(in, len, cfg);
            if (!docs.empty() && docs.back() > h.nb_documents)
                throw format_error("decoded document ID beyond nbDocuments");
            g = docs_to_gaps(docs);
            break;
        }
        default:
            throw domain_error("not a per-list baseline codec");
    }
    return g;
}

}  // namespace baseline_detail

inline compressed_index baseline_compress(const inverted_index& idx, codec_kind kind,
                                          const codec_options& opt = {}) {
    if (idx.words.empty()) throw domain_error("index holds no words");
    idx.validate();

    bit_writer stream;
    for (const auto& g : idx.words) write_delta(stream, g.size());
    uint64_t lengths_bits = stream.bit_count();
    for (size_t w = 0; w < idx.words.size(); ++w)
        baseline_detail::encode_list(stream, idx, w, kind, opt);

    payload_header h;
    h.codec = kind;
    h.nb_documents = idx.nb_documents;
    h.nb_words = idx.nb_words();
    h.nb_pointers = idx.nb_pointers();
    if (kind == codec_kind::zeta) h.p0 = uint8_t(opt.zeta_zk);
    if (kind == codec_kind::block_interp) {
        h.p0 = opt.bi_padding ? 1 : 0;
        h.p1 = opt.bi_redundant_max ? 1 : 0;
    }
    return assemble(h, std::move(stream), lengths_bits, 0);
}

inline inverted_index baseline_decompress(const payload_header& h,
                                          std::span<const uint8_t> bytes) {
    if (h.nb_words == 0) throw format_error("compressed index holds no words");
    if (h.nb_words > h.lengths_bits) throw format_error("lengths section too small for nbWords");
    if (h.model_bits != 0) throw format_error("baseline payload carries a model section");
    bit_reader in(bytes, header_bytes * 8, h.stream_bits());
    std::vector<uint64_t> lengths;
    lengths.reserve(h.nb_words);
    for (uint64_t i = 0; i < h.nb_words; ++i) {
        uint64_t len = read_delta(in);
        if (len > h.nb_documents) throw format_error("list length beyond nbDocuments");
        lengths.push_back(len);
    }
    if (in.position() != header_bytes * 8 + h.lengths_bits)
        throw format_error("lengths section size mismatch");

    inverted_index idx;
    idx.nb_documents = h.nb_documents;
    idx.words.reserve(h.nb_words);
    for (uint64_t w = 0; w < h.nb_words; ++w)
        idx.words.push_back(baseline_detail::decode_list(in, h, lengths[w], h.codec));
    if (in.position() != header_bytes * 8 + h.stream_bits())
        throw format_error("payload section size mismatch");
    return idx;
}

compressed_index compress_index(const inverted_index& idx, codec_kind kind,
                                const codec_options& opt = {}, const model_hook& hook = {});

inverted_index decompress_index(std::span<const uint8_t> bytes, const model_hook& hook = {});

// Word order a batch container decodes to: batches in delimiter order, words
// inside a batch in their original relative order.
inline inverted_index batch_word_order(const inverted_index& idx) {
    batch_partition part = partition_batches(idx);
    inverted_index out;
    out.nb_documents = idx.nb_documents;
    out.words.reserve(idx.words.size());
    for (const auto& batch : part.batches)
        for (uint32_t w : batch) out.words.push_back(idx.words[w]);
    return out;
}

// Batch container: per density batch a selector byte naming the best codec
// among interp, tc and tca, followed by that codec's standalone image.
inline compressed_index batch_compress(const inverted_index& idx, const codec_options& opt = {}) {
    if (idx.words.empty()) throw domain_error("index holds no words");
    idx.validate();
    batch_partition part = partition_batches(idx);

    std::vector<uint8_t> container;
    constexpr codec_kind candidates[3] = {codec_kind::interp, codec_kind::tc, codec_kind::tca};
    for (const auto& batch : part.batches) {
        if (batch.empty()) {
            container.push_back(0xFF);
            continue;
        }
        inverted_index sub;
        sub.nb_documents = idx.nb_documents;
        sub.words.reserve(batch.size());
        for (uint32_t w : batch) sub.words.push_back(idx.words[w]);

        compressed_index best;
        unsigned best_sel = 0;
        for (unsigned sel = 0; sel < 3; ++sel) {
            compressed_index c = compress_index(sub, candidates[sel], opt);
            if (sel == 0 || c.sections.total() < best.sections.total()) {
                best = std::move(c);
                best_sel = sel;
            }
        }
        container.push_back(uint8_t(best_sel));
        container.insert(container.end(), best.bytes.begin(), best.bytes.end());
    }

    payload_header h;
    h.codec = codec_kind::batch;
    h.nb_documents = idx.nb_documents;
    h.nb_words = idx.nb_words();
    h.nb_pointers = idx.nb_pointers();
    h.payload_bits = uint64_t(container.size()) * 8;

    compressed_index out;
    out.bytes = write_header(h);
    out.bytes.insert(out.bytes.end(), container.begin(), container.end());
    out.header = h;
    out.sections = h.sections();
    return out;
}

inline inverted_index batch_decompress(const payload_header& h, std::span<const uint8_t> bytes) {
    inverted_index idx;
    idx.nb_documents = h.nb_documents;
    size_t at = header_bytes;
    for (unsigned b = 0; b < 7; ++b) {
        if (at >= bytes.size()) throw format_error("batch container truncated");
        uint8_t sel = bytes[at++];
        if (sel == 0xFF) continue;
        if (sel > 2) throw format_error("unknown batch selector");
        payload_header sub = parse_header_prefix(bytes.subspan(at));
        uint64_t sub_size = payload_size_bytes(sub);
        if (bytes.size() - at < sub_size) throw format_error("batch container truncated");
        if (sub.nb_documents != h.nb_documents)
            throw format_error("batch sub-index universe mismatch");
        inverted_index part = decompress_index(bytes.subspan(at, size_t(sub_size)));
        for (auto& g : part.words) idx.words.push_back(std::move(g));
        at += size_t(sub_size);
    }
    if (at != bytes.size()) throw format_error("trailing bytes after batch container");
    if (idx.nb_words() != h.nb_words) throw format_error("batch word count mismatch");
    return idx;
}

inline compressed_index compress_index(const inverted_index& idx, codec_kind kind,
                                       const codec_options& opt, const model_hook& hook) {
    switch (kind) {
        case codec_kind::tc: return tritctx_compress(idx, false, false, opt.tritctx, hook);
        case codec_kind::tca: return tritctx_compress(idx, true, false, opt.tritctx, hook);
        case codec_kind::tc_quatrit:
            return tritctx_compress(idx, false, true, opt.tritctx, hook);
        case codec_kind::tca_quatrit:
            return tritctx_compress(idx, true, true, opt.tritctx, hook);
        case codec_kind::batch: return batch_compress(idx, opt);
        default: return baseline_compress(idx, kind, opt);
    }
}

inline inverted_index decompress_index(std::span<const uint8_t> bytes, const model_hook& hook) {
    payload_header h = parse_header(bytes);
    switch (h.codec) {
        case codec_kind::tc:
        case codec_kind::tca:
        case codec_kind::tc_quatrit:
        case codec_kind::tca_quatrit:
            return tritctx_decompress(h, bytes, hook);
        case codec_kind::batch:
            return batch_decompress(h, bytes);
        default:
            return baseline_decompress(h, bytes);
    }
}

// The index a payload must decode back to: the input itself, except for batch
// containers which decode to the density-batched word order.
inline inverted_index expected_decompression(const inverted_index& idx, codec_kind kind) {
    return kind == codec_kind::batch ? batch_word_order(idx) : idx;
}

inline bool verify_round_trip(const inverted_index& idx, const compressed_index& c) {
    inverted_index back = decompress_index(c.bytes);
    return back == expected_decompression(idx, c.header.codec);
}

}  // namespace catr
