#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "catr/index.hpp"

namespace catr {

/// Seeded generator of synthetic indexes. Clustered words draw documents from
/// a two-state (in-cluster / out-of-cluster) Markov chain over the document
/// range; uniform words are plain Bernoulli draws.
struct synthetic_config {
    uint32_t nb_documents = 10000;
    uint32_t nb_words = 100;
    uint64_t seed = 1;
    bool clustered = true;
    double min_density = 1e-4;
    double max_density = 0.5;
    double mean_cluster_len = 64.0;
    double in_cluster_boost = 25.0;
};

namespace synthetic_detail {

// Trials up to and including the first success, capped.
inline uint64_t geometric(std::mt19937_64& rng, double p, uint64_t cap) {
    if (p >= 1.0) return 1;
    if (p <= 0.0) return cap;
    double u = std::uniform_real_distribution<double>(std::nextafter(0.0, 1.0), 1.0)(rng);
    double len = std::floor(std::log(u) / std::log1p(-p)) + 1.0;
    if (!(len >= 1.0)) return 1;
    if (len >= double(cap)) return cap;
    return uint64_t(len);
}

// Hit positions in [1, len] with per-position probability p, appended rebased.
inline void sample_run(std::mt19937_64& rng, double p, uint64_t len, uint64_t base,
                       std::vector<uint32_t>& out) {
    if (p <= 0.0) return;
    uint64_t pos = 0;
    for (;;) {
        uint64_t step = geometric(rng, p, len + 1);
        pos += step;
        if (pos > len) return;
        out.push_back(uint32_t(base + pos));
    }
}

}  // namespace synthetic_detail

inline inverted_index generate_synthetic(const synthetic_config& cfg) {
    if (cfg.nb_documents == 0 || cfg.nb_words == 0)
        throw domain_error("synthetic index needs documents and words");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    inverted_index idx;
    idx.nb_documents = cfg.nb_documents;
    idx.words.reserve(cfg.nb_words);

    double log_min = std::log(cfg.min_density);
    double log_max = std::log(cfg.max_density);

    for (uint32_t word = 0; word < cfg.nb_words; ++word) {
        double density = std::exp(log_min + (log_max - log_min) * unit(rng));
        std::vector<uint32_t> docs;

        if (!cfg.clustered) {
            synthetic_detail::sample_run(rng, density, cfg.nb_documents, 0, docs);
        } else {
            double p_out = density * 0.05;
            double p_in = std::min(0.95, density * cfg.in_cluster_boost);
            double pi_in = (density - p_out) / (p_in - p_out);
            double t_io = 1.0 / cfg.mean_cluster_len;
            double t_oi = std::min(1.0, t_io * pi_in / (1.0 - pi_in));

            uint64_t doc = 0;
            bool in_cluster = false;
            while (doc < cfg.nb_documents) {
                double leave = in_cluster ? t_io : t_oi;
                uint64_t run = synthetic_detail::geometric(rng, leave, cfg.nb_documents - doc);
                synthetic_detail::sample_run(rng, in_cluster ? p_in : p_out, run, doc, docs);
                doc += run;
                in_cluster = !in_cluster;
            }
        }

        if (!docs.empty()) idx.words.push_back(docs_to_gaps(docs));
    }
    if (idx.words.empty()) throw domain_error("synthetic draw produced only empty lists");
    return idx;
}

}  // namespace catr
