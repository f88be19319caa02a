#pragma once

#include <vector>

#include "sdma/codebook.hpp"
#include "sdma/core_math.hpp"
#include "sdma/feedback_channel.hpp"
#include "sdma/types.hpp"

namespace sdma {

// Saturation value standing in for infinite mutual information (perfectly
// aligned shape); far above any adapted rate.
inline constexpr double kMiSentinel = 64.0;

// Outage-bounded rate adaptation for one received index.
struct RateRow {
    std::vector<int> ns_set;  // ascending; always contains the received index
    int i_star = 0;           // worst-case member (largest sine distance)
    double eps_res = 0.0;     // outage budget left after the out-of-set tail
    double rate = 0.0;        // b/s/Hz, clamped at 0
};

struct RateTable {
    std::vector<RateRow> rows;  // indexed by received codeword
};

// Builds the per-received-index rate table from the column read of P_CSIT:
// column I lists the probabilities of each sent index j given received I.
// ns_set grows greedily by descending column probability (self first, ties to
// the smallest index) until it reaches 1 - eps; i_star maximizes the sine
// distance to the received index (ties to the smallest index);
//   rate = -2*log2( sqrt(delta) * (1 - eps_res/P[i_star])^{1/(2(n_t-1))}
//                   + sin_dist[I][i_star] ),
// clamped at 0 when the log2 argument reaches 1.
//
// paper_i_star switches to a documented discrepancy mode that instead picks
// the highest-indexed member of ns_set (reproducing a published worked
// example whose stated i_star disagrees with the formal definition).
//
// A column that cannot reach 1 - eps even with every index is a configuration
// error unless allow_degenerate is set, in which case the row keeps the full
// set and a rate of 0 (used for heavily-scattered coded feedback chains).
RateTable build_rate_table(const TransitionMatrix& p_csit, const Matrix& sin_dist, double delta,
                           double eps, int n_t, bool paper_i_star = false,
                           bool allow_degenerate = false);

// Convenience overload taking the sine distances from a codebook.
RateTable build_rate_table(const TransitionMatrix& p_csit, const Codebook& cb, double delta,
                           double eps, int n_t, bool paper_i_star = false,
                           bool allow_degenerate = false);

// Right side of the outage upper bound for an arbitrary rate on a built row:
//   tail + P[i_star] * (1 - t^{2(n_t-1)}),  t = clamp((2^{-r/2} - sin)/sqrt(delta), 0, 1).
// The rate produced by build_rate_table makes this exactly eps on unclamped
// rows; it is non-decreasing in the rate.
double outage_bound(double rate, int received, const RateRow& row,
                    const TransitionMatrix& p_csit, const Matrix& sin_dist, double delta, int n_t);

struct ScheduleOutcome {
    int chosen_set = -1;  // orthonormal set id m; codewords m*n_t .. (m+1)*n_t - 1
    struct Assignment {
        int user = -1;
        int codeword = -1;  // doubles as the precoder: w = codebook entry
    };
    std::vector<Assignment> assignments;  // ascending by codeword
    int unfilled_slots = 0;
};

// Picks the orthonormal set covering the most distinct received indices
// (uniform random among ties) and, per covered index, a uniform random user
// among those reporting it. Uncovered slots stay unfilled.
ScheduleOutcome schedule(const std::vector<std::pair<int, int>>& user_received_pairs, int n_points,
                         int n_t, Rng& rng);

// Instantaneous mutual information with explicit noise and interference:
//   log2(1 + (p/n_t)|h^H w|^2 / (1 + sum_j (p/n_t)|h^H w_j|^2)).
double mutual_info_exact(const cvec& h, const cvec& w, const std::vector<cvec>& interferers,
                         double p_lin, int n_t);

// High-SNR form log2(1 + cos^2 / sum cos^2), valid only when {w} union
// interferers is a full orthonormal basis (throws otherwise); equals
// -2*log2(sin angle(shape, w)) by the basis decomposition identity. Saturates
// at kMiSentinel.
double mutual_info_highsnr(const cvec& shape, const cvec& w, const std::vector<cvec>& interferers);

// Per-received-index rate ceiling that keeps the outage probability at eps
// when noise, not interference, limits the link: with q the forward SNR per
// stream scaled by the eps-quantile of the gate-truncated gain and
// s = min(1, sin_dist[I][i_star] + sqrt(delta)) the worst-case residual
// misalignment of a scheduled user,
//   cap_I = log2(1 + q(1 - s^2) / (1 + q s^2)).
std::vector<double> noise_caps(const RateTable& table, const Matrix& sin_dist, double p_lin,
                               int n_t, double g_th, double eps, double delta);

// True when the feedback resolution out-scales the forward SNR, so residual
// quantization error stops limiting the rate (the noise-limited regime):
// c_fb > (n_t - 1) * log2(p_lin) + log2(n_n).
bool noise_limited_regime(int c_fb, int n_t, double p_lin, int n_n);

}  // namespace sdma
