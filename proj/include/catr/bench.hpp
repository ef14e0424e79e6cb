#pragma once

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "catr/codecs.hpp"
#include "catr/index.hpp"

namespace catr {

struct bench_row {
    std::string codec;
    section_bits sections;
    double bits_per_pointer = 0.0;
    double wall_ms = 0.0;
    bool verified = false;
};

inline std::string format_bpp(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline bench_row run_codec(const inverted_index& idx, const std::string& name) {
    codec_options opt;
    auto kind = codec_from_name(name, opt);
    if (!kind) throw domain_error("unknown codec: " + name);
    bench_row row;
    row.codec = name;
    auto begin = std::chrono::steady_clock::now();
    compressed_index c = compress_index(idx, *kind, opt);
    row.verified = verify_round_trip(idx, c);
    auto end = std::chrono::steady_clock::now();
    row.sections = c.sections;
    row.bits_per_pointer = c.bits_per_pointer();
    row.wall_ms = std::chrono::duration<double, std::milli>(end - begin).count();
    return row;
}

inline const std::vector<std::string>& default_bench_codecs() {
    static const std::vector<std::string> names = {
        "tc",           "tca",          "tcq",
        "tcaq",         "interp",       "block-interp",
        "block-interp-pad", "block-interp-rmax", "block-interp-rmax-pad",
        "unary",        "binary",       "gamma",
        "delta",        "zeta",         "golomb",
        "rice",         "vbyte",        "vnibble"};
    return names;
}

inline std::vector<bench_row> run_bench(const inverted_index& idx,
                                        const std::vector<std::string>& codecs) {
    std::vector<bench_row> rows;
    rows.reserve(codecs.size());
    for (const auto& name : codecs) rows.push_back(run_codec(idx, name));
    std::stable_sort(rows.begin(), rows.end(), [](const bench_row& a, const bench_row& b) {
        return a.bits_per_pointer < b.bits_per_pointer;
    });
    return rows;
}

inline std::string bench_markdown(const std::vector<bench_row>& rows) {
    std::ostringstream out;
    out << "| codec | bits/pointer | total bits | header | lengths | model | payload | ms | ok |\n";
    out << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        out << "| " << r.codec << " | " << format_bpp(r.bits_per_pointer) << " | "
            << r.sections.total() << " | " << r.sections.header << " | " << r.sections.lengths
            << " | " << r.sections.model << " | " << r.sections.payload << " | "
            << format_bpp(r.wall_ms) << " | " << (r.verified ? "yes" : "FAILED") << " |\n";
    }
    return out.str();
}

inline std::string bench_csv(const std::vector<bench_row>& rows) {
    std::ostringstream out;
    out << "codec,bits_per_pointer,total_bits,header_bits,lengths_bits,model_bits,payload_bits,"
           "wall_ms,verified\n";
    for (const auto& r : rows) {
        out << r.codec << ',' << format_bpp(r.bits_per_pointer) << ',' << r.sections.total()
            << ',' << r.sections.header << ',' << r.sections.lengths << ',' << r.sections.model
            << ',' << r.sections.payload << ',' << format_bpp(r.wall_ms) << ','
            << (r.verified ? "yes" : "no") << '\n';
    }
    return out.str();
}

struct sweep_point {
    unsigned k = 0, w = 0, k_init = 0, norm_bits = 0;
    uint64_t total_bits = 0;
    bool automatic = false;
};

// Grid search over context parameters; the automatic-formula point is always
// included for comparison.
inline std::vector<sweep_point> sweep_params(const inverted_index& idx, bool adaptive,
                                             const std::vector<unsigned>& ks,
                                             const std::vector<unsigned>& ws,
                                             const std::vector<unsigned>& kinits,
                                             const std::vector<unsigned>& norm_bits) {
    if (ks.empty()) throw domain_error("empty sweep grid");
    std::vector<sweep_point> points;
    auto run_point = [&](tritctx_options o, bool automatic) {
        compressed_index c = tritctx_compress(idx, adaptive, false, o);
        sweep_point pt;
        pt.k = c.header.p0;
        pt.w = c.header.p1;
        pt.k_init = c.header.p2;
        pt.norm_bits = c.header.p3;
        pt.total_bits = c.sections.total();
        pt.automatic = automatic;
        points.push_back(pt);
    };
    run_point({}, true);
    for (unsigned k : ks) {
        tritctx_options o;
        o.k = k;
        if (ws.empty() && kinits.empty() && norm_bits.empty()) {
            run_point(o, false);
            continue;
        }
        for (unsigned w : ws.empty() ? std::vector<unsigned>{adaptive ? k : k + 1} : ws) {
            o.w = w;
            for (unsigned ki :
                 kinits.empty() ? std::vector<unsigned>{std::min(adaptive ? 2 * k - 1 : (k + 2) / 3,
                                                                 k + w)}
                                : kinits) {
                o.k_init = std::min(ki, k + w);
                if (norm_bits.empty()) {
                    run_point(o, false);
                } else {
                    for (unsigned nb : norm_bits) {
                        o.norm_bits = nb;
                        run_point(o, false);
                    }
                }
            }
        }
    }
    return points;
}

}  // namespace catr
