#pragma once

#include <vector>

#include "sdma/codebook.hpp"
#include "sdma/core_math.hpp"
#include "sdma/feedback_channel.hpp"
#include "sdma/types.hpp"

namespace sdma {

// Symmetric nonnegative distance matrix with zero diagonal ("virtual cities").
struct TspInstance {
    int n_cities = 0;
    Matrix dist;
};

// Validates symmetry (within 1e-12), zero diagonal, and nonnegativity.
TspInstance make_tsp_instance(Matrix dist);

// Average feedback-induced distortion of a mapping:
//   sum_i sum_j Pr(v_i) * P_ch[xi(i)][xi(j)] * d(v_i, v_j)
// with d the squared-sine distortion between codewords.
double expected_distortion(const IndexMapping& xi, const std::vector<double>& priors,
                           const TransitionMatrix& p_ch, const Codebook& cb);

// TSP instance whose cycle cost equals the expected distortion of the
// corresponding mapping under the single-symbol nearest-neighbor channel:
//   dist[i][j] = ser * (Pr(v_i) * d(v_i,v_j) + Pr(v_j) * d(v_j,v_i)) / 2.
TspInstance build_tsp(const Codebook& cb, const std::vector<double>& priors, double ser);

// Unweighted instance of raw pairwise sine distances, used for neighbor
// structure diagnostics (tour cost per city approaches the minimum pairwise
// distance as the codebook grows).
TspInstance distance_instance(const Codebook& cb);

// Cost of the closed cycle visiting `order`; order must be a permutation.
double cycle_cost(const std::vector<int>& order, const TspInstance& inst);

struct TourSolution {
    std::vector<int> order;  // visit order; the cycle closes on the last edge
    double cost = 0.0;
};

// Start-city selectors for cnna.
inline constexpr int kStartPole = -1;    // city with the largest summed distance
inline constexpr int kStartRandom = -2;  // uniform random (requires rng)

// Circled nearest-neighbor construction: from the current city move to the
// nearest unvisited one; ties (within 1e-15) go to the candidate with the
// smallest summed distance to the already-visited cities, then to the
// smallest index.
TourSolution cnna(const TspInstance& inst, int start = kStartPole, Rng* rng = nullptr);

// First-improvement 2-opt descent from an initial tour; cost never increases.
TourSolution two_opt(const TspInstance& inst, const TourSolution& initial);

// Global optimum by enumerating the (N-1)!/2 distinct cycles in lexicographic
// order (first city fixed, reversed duplicates skipped). Refuses N > 10.
TourSolution exhaustive_tsp(const TspInstance& inst);

// Places the k-th city of the tour on ring position k, so tour-adjacent
// codewords land on adjacent constellation points.
IndexMapping tour_to_mapping(const TourSolution& tour, int n_points);

}  // namespace sdma
