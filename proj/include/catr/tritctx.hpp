#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "catr/arith.hpp"
#include "catr/bitio.hpp"
#include "catr/context.hpp"
#include "catr/framing.hpp"
#include "catr/index.hpp"
#include "catr/trits.hpp"
#include "catr/universal.hpp"

namespace catr {

struct tritctx_options {
    std::optional<unsigned> k;
    std::optional<unsigned> w;
    std::optional<unsigned> k_init;
    std::optional<unsigned> norm_bits;  // static field width; adaptive halving exponent
};

// Test hook: called with the live occurrence table after each encoded or
// decoded list.
using model_hook = std::function<void(const occurrence_table&)>;

namespace tritctx_detail {

inline context_params resolve_params(bool adaptive, uint64_t nb_pointers, uint64_t nb_documents,
                                     const tritctx_options& opt) {
    context_params p = adaptive ? select_adaptive_params(nb_pointers, nb_documents)
                                : select_static_params(nb_pointers, nb_documents,
                                                       opt.norm_bits.value_or(8));
    if (opt.k) {
        p.k = *opt.k;
        p.w = opt.w.value_or(adaptive ? p.k : p.k + 1);
        p.k_init = opt.k_init.value_or(
            adaptive ? std::min({2 * p.k - 1, 16u, p.k + p.w}) : std::min((p.k + 2) / 3, p.k + p.w));
    } else {
        if (opt.w) p.w = *opt.w;
        if (opt.k_init) p.k_init = *opt.k_init;
    }
    if (adaptive) p.halving_exponent = opt.norm_bits.value_or(p.k);
    validate_params(p);
    return p;
}

// The next symbol is a certain terminator when the run of non-terminator
// trits has reached the longest length any gap can produce. With quatrits a
// list terminator may follow a '2', so the empty-context case is not forced.
inline bool forced_two(const context_state& st, unsigned cap, bool quatrit) {
    return st.run() == cap && (cap >= 1 || !quatrit);
}

template <typename Fn>
inline void for_each_symbol(const gap_list& g, bool quatrit, Fn&& fn) {
    trit_list l = gaps_to_trits(g);
    for (size_t i = 0; i < l.size(); ++i) fn(l[i]);
    if (quatrit) fn(3u);
}

}  // namespace tritctx_detail

inline compressed_index tritctx_compress(const inverted_index& idx, bool adaptive, bool quatrit,
                                         const tritctx_options& opt = {},
                                         const model_hook& hook = {}) {
    using namespace tritctx_detail;
    if (idx.words.empty()) throw domain_error("index holds no words");
    idx.validate();

    uint64_t nb_pointers = idx.nb_pointers();
    context_params params = resolve_params(adaptive, nb_pointers, idx.nb_documents, opt);
    unsigned cap = forced2_cap(idx.nb_documents);
    unsigned symbols = quatrit ? 4 : 3;

    bit_writer stream;
    if (!quatrit)
        for (const auto& g : idx.words) write_delta(stream, g.size());
    uint64_t lengths_bits = stream.bit_count();

    occurrence_table model(params, symbols, adaptive ? 1 : 0);
    if (!adaptive) {
        occurrence_table raw(params, symbols, 0);
        context_state st;
        for (const auto& g : idx.words) {
            st.reset();
            for_each_symbol(g, quatrit, [&](unsigned sym) {
                if (!forced_two(st, cap, quatrit))
                    raw.add(st.in_initial(params),
                            st.in_initial(params) ? st.initial_id(params) : st.general_id(params),
                            sym);
                st.push(sym >= 2);
            });
        }
        model = normalize_table(raw, params);
        write_static_model(stream, model, params);
    }
    uint64_t model_bits = stream.bit_count() - lengths_bits;

    arithmetic_encoder enc(stream);
    context_state st;
    for (const auto& g : idx.words) {
        st.reset();
        for_each_symbol(g, quatrit, [&](unsigned sym) {
            if (!forced_two(st, cap, quatrit)) {
                bool init = st.in_initial(params);
                unsigned id = init ? st.initial_id(params) : st.general_id(params);
                enc.encode(freq_table(std::span<const uint32_t>(model.at(init, id))), sym);
                if (adaptive) adaptive_step(model, init, id, sym, params);
            }
            st.push(sym >= 2);
        });
        if (hook) hook(model);
    }
    enc.finish();

    payload_header h;
    h.codec = quatrit ? (adaptive ? codec_kind::tca_quatrit : codec_kind::tc_quatrit)
                      : (adaptive ? codec_kind::tca : codec_kind::tc);
    h.nb_documents = idx.nb_documents;
    h.nb_words = idx.nb_words();
    h.nb_pointers = nb_pointers;
    h.p0 = uint8_t(params.k);
    h.p1 = uint8_t(params.w);
    h.p2 = uint8_t(params.k_init);
    h.p3 = uint8_t(adaptive ? params.halving_exponent : params.norm_bits);
    return assemble(h, std::move(stream), lengths_bits, model_bits);
}

inline inverted_index tritctx_decompress(const payload_header& h, std::span<const uint8_t> bytes,
                                         const model_hook& hook = {}) {
    using namespace tritctx_detail;
    bool adaptive = h.codec == codec_kind::tca || h.codec == codec_kind::tca_quatrit;
    bool quatrit = h.codec == codec_kind::tc_quatrit || h.codec == codec_kind::tca_quatrit;
    unsigned symbols = quatrit ? 4 : 3;
    if (h.nb_words == 0) throw format_error("compressed index holds no words");

    context_params params;
    params.k = h.p0;
    params.w = h.p1;
    params.k_init = h.p2;
    if (adaptive)
        params.halving_exponent = h.p3;
    else
        params.norm_bits = h.p3;
    validate_params(params);
    unsigned cap = forced2_cap(h.nb_documents);

    bit_reader front(bytes, header_bytes * 8, h.lengths_bits + h.model_bits);
    std::vector<uint64_t> lengths;
    if (!quatrit) {
        if (h.nb_words > h.lengths_bits)
            throw format_error("lengths section too small for nbWords");
        lengths.reserve(h.nb_words);
        for (uint64_t i = 0; i < h.nb_words; ++i) {
            uint64_t len = read_delta(front);
            if (len > h.nb_documents) throw format_error("list length beyond nbDocuments");
            lengths.push_back(len);
        }
        if (front.position() != header_bytes * 8 + h.lengths_bits)
            throw format_error("lengths section size mismatch");
    } else if (h.lengths_bits != 0) {
        throw format_error("quatrit payload carries a lengths section");
    }

    occurrence_table model(params, symbols, adaptive ? 1 : 0);
    if (!adaptive) {
        if (h.model_bits != serialized_model_bits(params, symbols))
            throw format_error("model section size mismatch");
        model = read_static_model(front, params, symbols);
    } else if (h.model_bits != 0) {
        throw format_error("adaptive payload carries a model section");
    }

    bit_reader payload(bytes, header_bytes * 8 + h.lengths_bits + h.model_bits, h.payload_bits);
    arithmetic_decoder dec(payload);

    inverted_index idx;
    idx.nb_documents = h.nb_documents;
    idx.words.reserve(size_t(std::min<uint64_t>(h.nb_words, 1u << 20)));

    context_state st;
    for (uint64_t word = 0; word < h.nb_words; ++word) {
        gap_list g;
        st.reset();
        uint64_t value = 1;
        uint64_t doc = 0;
        bool done = false;
        while (!done) {
            unsigned sym;
            if (forced_two(st, cap, quatrit)) {
                sym = 2;
            } else {
                bool init = st.in_initial(params);
                unsigned id = init ? st.initial_id(params) : st.general_id(params);
                sym = dec.decode(freq_table(std::span<const uint32_t>(model.at(init, id))));
                if (adaptive) adaptive_step(model, init, id, sym, params);
            }
            if (sym == 3) {
                if (value != 1) throw format_error("list terminator inside a gap body");
                done = true;
            } else if (sym == 2) {
                doc += value;
                if (doc > h.nb_documents) throw format_error("decoded document ID beyond nbDocuments");
                g.push_back(uint32_t(value));
                value = 1;
                if (!quatrit && g.size() == lengths[word]) done = true;
            } else {
                value = value * 2 + sym;
                if (value > h.nb_documents) throw format_error("decoded gap beyond nbDocuments");
            }
            st.push(sym >= 2);
        }
        if (g.empty()) throw format_error("decoded an empty posting list");
        idx.words.push_back(std::move(g));
        if (hook) hook(model);
    }
    return idx;
}

}  // namespace catr
