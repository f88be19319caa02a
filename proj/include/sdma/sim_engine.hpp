#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdma/base_station.hpp"
#include "sdma/codebook.hpp"
#include "sdma/core_math.hpp"
#include "sdma/feedback_channel.hpp"
#include "sdma/index_assignment.hpp"
#include "sdma/types.hpp"

namespace sdma {

enum class Scheme { robust, naive_uncoded, naive_coded };
enum class ChannelModel { nearest_neighbor, psk_awgn };
enum class SolverChoice { cnna, two_opt, exhaustive, identity, random };

const char* to_string(Scheme s);
const char* to_string(ChannelModel m);
const char* to_string(SolverChoice s);
Scheme parse_scheme(const std::string& name);
ChannelModel parse_channel_model(const std::string& name);
SolverChoice parse_solver(const std::string& name);

// Full configuration of one Monte Carlo cell. Defaults follow the reference
// operating point: n_t = 4, K = 100 users, 20 dB forward SNR with unit noise
// variance, delta = 0.1, g_th = 2, eps = 0.05.
struct SimConfig {
    int n_t = 4;
    int k_users = 100;
    int c_fb = 4;  // total feedback bits; codebook size is 2^c_fb
    double forward_snr_db = 20.0;

    ChannelModel channel = ChannelModel::nearest_neighbor;
    double ser = 0.2;                // nearest-neighbor symbol error rate
    double feedback_snr_db = 10.0;   // PSK chain Es/N0
    int feedback_symbols = 1;        // PSK chain: symbols carrying c_fb bits

    double delta = 0.1;  // quantization distortion gate
    double g_th = 2.0;   // gain gate
    double eps = 0.05;   // PER target

    Scheme scheme = Scheme::robust;
    SolverChoice solver = SolverChoice::two_opt;  // robust mapping solver

    int trials = 10000;
    uint64_t master_seed = 2026;
    uint64_t codebook_seed = 1234;
    int prior_samples = 200000;
    uint64_t prior_seed = 7;

    bool paper_i_star = false;
    bool noise_cap = true;  // cap rates by the noise-limited ceiling
    int threads = 0;        // 0 = hardware concurrency

    double p_lin() const;         // forward SNR as a linear power
    void validate() const;        // throws config_error on any bad field
};

// Everything run_trial needs, built once per (config, scheme) cell.
struct SchemeArtifacts {
    bool feasible = true;            // false: coded budget cannot carry a codebook
    std::string infeasible_reason;
    int payload_bits = 0;            // c_fb, or the coded payload size
    Codebook cb;
    TransitionMatrix p_ch;           // channel on constellation indices
    IndexMapping xi;
    TransitionMatrix p_csit;
    RateTable table;                 // rates already capped when noise_cap is set
    std::vector<double> priors;      // empirical codeword priors (robust chain)
    bool all_zero_rates = false;     // informational: no row can deliver
    std::vector<double> cb_flat;     // entries as [re,im] pairs for the hot loop
};

SchemeArtifacts prepare_scheme(const SimConfig& cfg);

struct TrialRecord {
    double goodput = 0.0;    // sum of delivered rates this slot
    double lost_rate = 0.0;  // sum of rates that fell to outage
    int outages = 0;
    int scheduled = 0;  // assignments with positive rate (PER denominator)
    int fed_back = 0;   // users passing the feedback gate
    int covered = 0;    // distinct beams of the chosen set with any reporter
};

// Deterministic per-trial seed stream derived from the master seed; trial
// order, not thread schedule, defines the stream.
uint64_t derived_seed(uint64_t master_seed, uint64_t stream);

// One scheduling slot: draw K channels, gate, quantize, transmit indices
// through the noisy feedback channel, schedule, adapt rates, and judge outage
// by the exact mutual information with the actually-assigned precoders.
TrialRecord run_trial(const SimConfig& cfg, const SchemeArtifacts& art, uint64_t seed);

struct GoodputSummary {
    double mean_goodput = 0.0;  // b/s/Hz per slot, summed over scheduled users
    double std_error = 0.0;
    double per = 0.0;           // outages / scheduled deliveries
    double mean_scheduled = 0.0;
    double mean_covered = 0.0;  // distinct beams with a reporter, per slot
    long long total_outages = 0;
    long long total_scheduled = 0;
    int trials = 0;
    bool feasible = true;
};

// Runs all trials (parallel over a thread pool, reduced in trial order).
std::vector<TrialRecord> simulate(const SimConfig& cfg, const SchemeArtifacts& art);

GoodputSummary summarize(const std::vector<TrialRecord>& records, bool feasible = true);

// prepare_scheme + simulate + summarize in one call.
GoodputSummary simulate_summary(const SimConfig& cfg);

}  // namespace sdma
