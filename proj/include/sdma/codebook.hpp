#pragma once

#include <cstdint>
#include <filesystem>

#include "sdma/core_math.hpp"
#include "sdma/types.hpp"

namespace sdma {

// Quantization codebook: N = 2^{c_fb} unit vectors organized as N/n_t
// independent Haar-random orthonormal bases. Entry k belongs to set k / n_t.
// Immutable after construction; pairwise sine distances are precomputed.
struct Codebook {
    int n_t = 0;
    int c_fb = 0;
    uint64_t seed = 0;
    std::vector<cvec> entries;  // N rows, each length n_t
    Matrix sin_dist;            // sin of the principal angle between entries

    int num_entries() const { return static_cast<int>(entries.size()); }
    int num_sets() const { return num_entries() / n_t; }
};

// One Haar-random orthonormal basis of C^{n_t}, columns returned as vectors.
std::vector<cvec> random_orthonormal_basis(Rng& rng, int n_t);

Codebook build_codebook(uint64_t seed, int n_t, int c_fb);

// Distortion d(v, w) = 1 - |v^H w|^2 = sin^2 of the principal angle.
// Index of the nearest entry; ties break to the smallest index.
int quantize(const cvec& shape, const Codebook& cb);

struct GateDecision {
    bool feed_back = false;
    int index = -1;       // quantization index (valid regardless of decision)
    double distortion = 1.0;
};

// Feed back iff distortion(shape, nearest) < delta AND gain > g_th.
GateDecision feedback_gate(const cvec& h_shape, double gain, const Codebook& cb, double delta,
                           double g_th);

// Empirical distribution of quantize(shape) over isotropic shapes passing the
// shape gate (the gain gate is independent of shape). Add-one smoothed so no
// entry is exactly zero.
std::vector<double> codeword_priors(const Codebook& cb, double delta, int n_samples, Rng& rng);

void save_codebook(const Codebook& cb, const std::filesystem::path& path);
Codebook load_codebook(const std::filesystem::path& path);

}  // namespace sdma
