#include "sdma/codebook.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

namespace sdma {

// One Haar-random orthonormal basis: gram-schmidt of an iid complex gaussian
// square matrix (equivalent to QR with positive-diagonal R).
std::vector<cvec> random_orthonormal_basis(Rng& rng, int n_t) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<cvec> cols(n_t, cvec(n_t));
        for (int c = 0; c < n_t; ++c)
            for (int r = 0; r < n_t; ++r) cols[c][r] = rng.cgaussian();
        try {
            mgs_orthonormalize(cols);
            return cols;
        } catch (const config_error&) {
            // measure-zero degenerate draw; redraw
        }
    }
    throw config_error("random_orthonormal_basis: repeated rank-deficient draws");
}

Codebook build_codebook(uint64_t seed, int n_t, int c_fb) {
    if (n_t < 2) throw config_error("build_codebook: n_t must be >= 2");
    if (c_fb < 1 || c_fb > 20) throw config_error("build_codebook: c_fb out of range");
    int n = 1 << c_fb;
    if (n % n_t != 0)
        throw config_error("build_codebook: 2^c_fb = " + std::to_string(n) +
                           " not divisible by n_t = " + std::to_string(n_t));
    Codebook cb;
    cb.n_t = n_t;
    cb.c_fb = c_fb;
    cb.seed = seed;
    cb.entries.reserve(n);
    Rng rng(seed);
    int m = n / n_t;
    for (int s = 0; s < m; ++s) {
        auto basis = random_orthonormal_basis(rng, n_t);
        for (int c = 0; c < n_t; ++c) cb.entries.push_back(basis[c]);
    }
    cb.sin_dist = Matrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double c2 = cdot_abs2(cb.entries[i], cb.entries[j]);
            double s2 = 1.0 - c2;
            if (s2 < 0.0) s2 = 0.0;
            cb.sin_dist.at(i, j) = std::sqrt(s2);
        }
    return cb;
}

int quantize(const cvec& shape, const Codebook& cb) {
    int best = 0;
    double best_c2 = -1.0;
    int n = cb.num_entries();
    for (int i = 0; i < n; ++i) {
        double c2 = cdot_abs2(shape, cb.entries[i]);
        if (c2 > best_c2) {  // strict: ties stay at the smaller index
            best_c2 = c2;
            best = i;
        }
    }
    return best;
}

GateDecision feedback_gate(const cvec& h_shape, double gain, const Codebook& cb, double delta,
                           double g_th) {
    if (delta <= 0.0 || delta >= 1.0) throw config_error("feedback_gate: delta must be in (0,1)");
    GateDecision out;
    out.index = quantize(h_shape, cb);
    double c2 = cdot_abs2(h_shape, cb.entries[out.index]);
    out.distortion = std::max(0.0, 1.0 - c2);
    out.feed_back = (out.distortion < delta) && (gain > g_th);
    return out;
}

std::vector<double> codeword_priors(const Codebook& cb, double delta, int n_samples, Rng& rng) {
    if (n_samples < 10000) throw config_error("codeword_priors: need at least 1e4 samples");
    int n = cb.num_entries();
    std::vector<double> cnt(n, 0.0);
    cvec h(cb.n_t);
    for (int s = 0; s < n_samples; ++s) {
        double g2 = 0.0;
        for (int t = 0; t < cb.n_t; ++t) {
            h[t] = rng.cgaussian();
            g2 += std::norm(h[t]);
        }
        double inv = 1.0 / std::sqrt(g2);
        for (auto& v : h) v *= inv;
        int idx = quantize(h, cb);
        double c2 = cdot_abs2(h, cb.entries[idx]);
        if (1.0 - c2 < delta) cnt[idx] += 1.0;
    }
    double tot = 0.0;
    for (int i = 0; i < n; ++i) {
        cnt[i] += 1.0;  // add-one smoothing: no zero-weight virtual city
        tot += cnt[i];
    }
    for (auto& v : cnt) v /= tot;
    return cnt;
}

namespace {
constexpr char kMagic[9] = "SDMACBK1";
}

void save_codebook(const Codebook& cb, const std::filesystem::path& path) {
    FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f) throw config_error("save_codebook: cannot open " + path.string());
    std::fwrite(kMagic, 1, 8, f);
    int32_t nt = cb.n_t, cfb = cb.c_fb;
    uint64_t seed = cb.seed;
    std::fwrite(&nt, sizeof nt, 1, f);
    std::fwrite(&cfb, sizeof cfb, 1, f);
    std::fwrite(&seed, sizeof seed, 1, f);
    for (const auto& e : cb.entries)
        for (const auto& z : e) {
            double re = z.real(), im = z.imag();
            std::fwrite(&re, sizeof re, 1, f);
            std::fwrite(&im, sizeof im, 1, f);
        }
    std::fclose(f);
}

Codebook load_codebook(const std::filesystem::path& path) {
    FILE* f = std::fopen(path.string().c_str(), "rb");
    if (!f) throw config_error("load_codebook: cannot open " + path.string());
    char magic[8];
    if (std::fread(magic, 1, 8, f) != 8 || std::memcmp(magic, kMagic, 8) != 0) {
        std::fclose(f);
        throw config_error("load_codebook: bad magic in " + path.string());
    }
    int32_t nt = 0, cfb = 0;
    uint64_t seed = 0;
    if (std::fread(&nt, sizeof nt, 1, f) != 1 || std::fread(&cfb, sizeof cfb, 1, f) != 1 ||
        std::fread(&seed, sizeof seed, 1, f) != 1) {
        std::fclose(f);
        throw config_error("load_codebook: truncated header");
    }
    Codebook fresh = build_codebook(seed, nt, cfb);  // entries re-derived, then verified
    for (const auto& e : fresh.entries)
        for (const auto& z : e) {
            double re = 0, im = 0;
            if (std::fread(&re, sizeof re, 1, f) != 1 || std::fread(&im, sizeof im, 1, f) != 1) {
                std::fclose(f);
                throw config_error("load_codebook: truncated entries");
            }
            if (std::fabs(re - z.real()) > 1e-12 || std::fabs(im - z.imag()) > 1e-12) {
                std::fclose(f);
                throw config_error("load_codebook: stored entries disagree with seed derivation");
            }
        }
    std::fclose(f);
    return fresh;
}

}  // namespace sdma
