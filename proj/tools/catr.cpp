#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "catr/bench.hpp"
#include "catr/codecs.hpp"
#include "catr/index.hpp"
#include "catr/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_data = 2;
constexpr int exit_verify = 3;

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw catr::format_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw catr::format_error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

catr::inverted_index load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw catr::format_error("cannot open " + path);
    return catr::load_raw(in);
}

void save_index(const catr::inverted_index& idx, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw catr::format_error("cannot write " + path);
    catr::save_raw(idx, out);
}

std::vector<std::string> read_corpus(const std::string& path, bool lines) {
    std::vector<std::string> docs;
    if (!lines && fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            std::ifstream in(f, std::ios::binary);
            std::ostringstream body;
            body << in.rdbuf();
            docs.push_back(body.str());
        }
        return docs;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw catr::format_error("cannot open " + path);
    std::string line;
    while (std::getline(in, line)) docs.push_back(line);
    return docs;
}

std::vector<uint32_t> read_permutation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw catr::format_error("cannot open " + path);
    std::vector<uint32_t> perm;
    uint64_t v;
    while (in >> v) perm.push_back(uint32_t(v));
    return perm;
}

struct compress_flags {
    std::string codec = "tca";
    std::string perm_path;
    bool sort_words = false;
    bool batch = false;
    unsigned k = 0, w = 0, k_init = 0, norm_bits = 0;

    catr::codec_options options() const {
        catr::codec_options opt;
        if (k) opt.tritctx.k = k;
        if (w) opt.tritctx.w = w;
        if (k_init) opt.tritctx.k_init = k_init;
        if (norm_bits) opt.tritctx.norm_bits = norm_bits;
        return opt;
    }
};

catr::inverted_index preprocess(catr::inverted_index idx, const compress_flags& flags) {
    if (!flags.perm_path.empty())
        idx = catr::apply_doc_permutation(idx, read_permutation(flags.perm_path));
    if (flags.sort_words) idx = catr::sort_words_by_density(idx);
    return idx;
}

void report_sections(const catr::compressed_index& c) {
    std::cout << "codec=" << catr::codec_name(c.header.codec)
              << " documents=" << c.header.nb_documents << " words=" << c.header.nb_words
              << " pointers=" << c.header.nb_pointers << "\n";
    std::cout << "bits: header=" << c.sections.header << " lengths=" << c.sections.lengths
              << " model=" << c.sections.model << " payload=" << c.sections.payload
              << " total=" << c.sections.total() << "\n";
    std::cout << "bits/pointer=" << catr::format_bpp(c.bits_per_pointer()) << "\n";
}

std::vector<unsigned> parse_grid(const std::string& text) {
    std::vector<unsigned> out;
    if (text.empty()) return out;
    size_t colon = text.find(':');
    if (colon != std::string::npos) {
        unsigned lo = unsigned(std::stoul(text.substr(0, colon)));
        unsigned hi = unsigned(std::stoul(text.substr(colon + 1)));
        for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(unsigned(std::stoul(item)));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"posting-list compression toolkit"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "ingest a corpus into a raw index");
    std::string build_corpus, build_out;
    bool build_lines = false;
    build->add_option("corpus", build_corpus, "corpus directory or line-per-document file")
        ->required();
    build->add_option("out", build_out, "output raw index path")->required();
    build->add_flag("--lines", build_lines, "treat the input file as one document per line");

    // gen-synthetic
    auto* gen = app.add_subcommand("gen-synthetic", "generate a seeded synthetic index");
    std::string gen_out;
    catr::synthetic_config gen_cfg;
    bool gen_uniform = false;
    gen->add_option("out", gen_out, "output raw index path")->required();
    gen->add_option("--docs", gen_cfg.nb_documents, "document universe size");
    gen->add_option("--words", gen_cfg.nb_words, "number of words to draw");
    gen->add_option("--seed", gen_cfg.seed, "random seed");
    gen->add_option("--min-density", gen_cfg.min_density, "lowest word density");
    gen->add_option("--max-density", gen_cfg.max_density, "highest word density");
    gen->add_flag("--uniform", gen_uniform, "disable clustering");

    // compress
    auto* comp = app.add_subcommand("compress", "compress a raw index");
    std::string comp_in, comp_out;
    compress_flags comp_flags;
    bool comp_verify = false;
    comp->add_option("index", comp_in, "raw index path")->required();
    comp->add_option("out", comp_out, "output payload path")->required();
    comp->add_option("--codec", comp_flags.codec, "codec name");
    comp->add_option("--perm", comp_flags.perm_path, "document permutation file");
    comp->add_flag("--sort-words", comp_flags.sort_words, "sort words by density first");
    comp->add_flag("--batch", comp_flags.batch, "density-batched container");
    comp->add_option("--k", comp_flags.k, "context suffix length");
    comp->add_option("--w", comp_flags.w, "context window length");
    comp->add_option("--kinit", comp_flags.k_init, "initial context depth");
    comp->add_option("--norm-bits", comp_flags.norm_bits,
                     "static normalization width / adaptive halving exponent");
    comp->add_flag("--verify", comp_verify, "decompress and compare after writing");

    // decompress
    auto* dec = app.add_subcommand("decompress", "decompress a payload to a raw index");
    std::string dec_in, dec_out;
    dec->add_option("payload", dec_in, "payload path")->required();
    dec->add_option("out", dec_out, "output raw index path")->required();

    // verify
    auto* ver = app.add_subcommand("verify", "check payload against a raw index");
    std::string ver_index, ver_payload;
    ver->add_option("index", ver_index, "raw index path")->required();
    ver->add_option("payload", ver_payload, "payload path")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "compare codecs on one index");
    std::string bench_in, bench_csv_path, bench_codecs;
    compress_flags bench_flags;
    bench->add_option("index", bench_in, "raw index path")->required();
    bench->add_option("--codecs", bench_codecs, "comma-separated codec list");
    bench->add_option("--csv", bench_csv_path, "also write the table as CSV");
    bench->add_option("--perm", bench_flags.perm_path, "document permutation file");
    bench->add_flag("--sort-words", bench_flags.sort_words, "sort words by density first");
    bench->add_flag("--batch", bench_flags.batch, "include the batch container row");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "grid-search context parameters");
    std::string sweep_in, sweep_codec = "tca";
    std::string sweep_k, sweep_w, sweep_kinit, sweep_nb;
    sweep->add_option("index", sweep_in, "raw index path")->required();
    sweep->add_option("--codec", sweep_codec, "tc or tca");
    sweep->add_option("--k", sweep_k, "grid: lo:hi or comma list");
    sweep->add_option("--w", sweep_w, "grid: lo:hi or comma list");
    sweep->add_option("--kinit", sweep_kinit, "grid: lo:hi or comma list");
    sweep->add_option("--norm-bits", sweep_nb, "grid: lo:hi or comma list");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*build) {
            auto docs = read_corpus(build_corpus, build_lines);
            catr::inverted_index idx = catr::ingest_corpus(docs);
            save_index(idx, build_out);
            std::cout << "documents=" << idx.nb_documents << " words=" << idx.nb_words()
                      << " pointers=" << idx.nb_pointers() << "\n";
            return exit_ok;
        }

        if (*gen) {
            gen_cfg.clustered = !gen_uniform;
            catr::inverted_index idx = catr::generate_synthetic(gen_cfg);
            save_index(idx, gen_out);
            std::cout << "documents=" << idx.nb_documents << " words=" << idx.nb_words()
                      << " pointers=" << idx.nb_pointers() << "\n";
            return exit_ok;
        }

        if (*comp) {
            catr::inverted_index idx = preprocess(load_index(comp_in), comp_flags);
            catr::codec_options opt = comp_flags.options();
            catr::codec_kind kind;
            if (comp_flags.batch) {
                kind = catr::codec_kind::batch;
            } else {
                auto k = catr::codec_from_name(comp_flags.codec, opt);
                if (!k) {
                    std::cerr << "unknown codec: " << comp_flags.codec << "\n";
                    return exit_usage;
                }
                kind = *k;
            }
            catr::compressed_index c = catr::compress_index(idx, kind, opt);
            write_file(comp_out, c.bytes);
            report_sections(c);
            if (comp_verify && !catr::verify_round_trip(idx, c)) {
                std::cerr << "verification failed\n";
                return exit_verify;
            }
            return exit_ok;
        }

        if (*dec) {
            catr::inverted_index idx = catr::decompress_index(read_file(dec_in));
            save_index(idx, dec_out);
            std::cout << "documents=" << idx.nb_documents << " words=" << idx.nb_words()
                      << " pointers=" << idx.nb_pointers() << "\n";
            return exit_ok;
        }

        if (*ver) {
            catr::inverted_index idx = load_index(ver_index);
            std::vector<uint8_t> bytes = read_file(ver_payload);
            catr::payload_header h = catr::parse_header(bytes);
            catr::inverted_index back = catr::decompress_index(bytes);
            if (back != catr::expected_decompression(idx, h.codec)) {
                std::cerr << "verification failed\n";
                return exit_verify;
            }
            std::cout << "ok\n";
            return exit_ok;
        }

        if (*bench) {
            catr::inverted_index idx = preprocess(load_index(bench_in), bench_flags);
            std::vector<std::string> names;
            if (bench_codecs.empty()) {
                names = catr::default_bench_codecs();
            } else {
                std::stringstream ss(bench_codecs);
                std::string item;
                while (std::getline(ss, item, ',')) names.push_back(item);
            }
            if (bench_flags.batch) names.push_back("batch");
            auto rows = catr::run_bench(idx, names);
            std::cout << catr::bench_markdown(rows);
            if (!bench_csv_path.empty()) {
                std::ofstream out(bench_csv_path);
                out << catr::bench_csv(rows);
            }
            for (const auto& r : rows)
                if (!r.verified) return exit_verify;
            return exit_ok;
        }

        if (*sweep) {
            if (sweep_codec != "tc" && sweep_codec != "tca") {
                std::cerr << "sweep codec must be tc or tca\n";
                return exit_usage;
            }
            catr::inverted_index idx = load_index(sweep_in);
            auto ks = parse_grid(sweep_k);
            if (ks.empty()) {
                catr::context_params p =
                    sweep_codec == "tca"
                        ? catr::select_adaptive_params(idx.nb_pointers(), idx.nb_documents)
                        : catr::select_static_params(idx.nb_pointers(), idx.nb_documents);
                for (int d = -2; d <= 2; ++d)
                    if (int(p.k) + d >= 1) ks.push_back(unsigned(int(p.k) + d));
            }
            auto points = catr::sweep_params(idx, sweep_codec == "tca", ks, parse_grid(sweep_w),
                                             parse_grid(sweep_kinit), parse_grid(sweep_nb));
            const catr::sweep_point* best = &points[0];
            for (const auto& pt : points)
                if (pt.total_bits < best->total_bits) best = &pt;
            std::cout << "k,w,kinit,normbits,total_bits,bits_per_pointer,automatic\n";
            for (const auto& pt : points) {
                std::cout << pt.k << ',' << pt.w << ',' << pt.k_init << ',' << pt.norm_bits << ','
                          << pt.total_bits << ','
                          << catr::format_bpp(double(pt.total_bits) / double(idx.nb_pointers()))
                          << ',' << (pt.automatic ? "yes" : "no")
                          << (&pt == best ? "  <-- best" : "") << "\n";
            }
            return exit_ok;
        }
    } catch (const catr::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    }
    return exit_usage;
}
