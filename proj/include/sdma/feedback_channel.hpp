#pragma once

#include <cstdint>
#include <vector>

#include "sdma/core_math.hpp"
#include "sdma/types.hpp"

namespace sdma {

// Row-stochastic symbol transition matrix: entry (i, j) is the probability of
// receiving index j when index i was sent. Every constructor in this header
// guarantees row sums of 1 within 1e-9.
using TransitionMatrix = Matrix;

// Exact M-ary PSK symbol transition probabilities over AWGN. snr_db is Es/N0
// in dB with unit total complex noise variance. Decision regions are the
// maximum-likelihood angular sectors; the received-phase density is integrated
// per sector by adaptive quadrature to relative tolerance 1e-8, and the
// diagonal absorbs the remainder so each row sums to exactly 1.
TransitionMatrix psk_transition_matrix(int n_points, double snr_db);

// Parametric nearest-neighbor model: keep the index with probability 1 - ser,
// move to each ring neighbor with probability ser / 2. For n_points == 2 the
// two neighbors coincide, so the single neighbor receives the full ser.
TransitionMatrix nn_transition_matrix(int n_points, double ser);

// Transition matrix for a budget of n_symbols independent symbols, indexed by
// the concatenated (most-significant-first) symbol sequence.
TransitionMatrix kron_power(const TransitionMatrix& per_symbol, int n_symbols);

// BPSK bit error probability Q(sqrt(2 * snr)) at Es/N0 given in dB.
double bpsk_bit_error_prob(double snr_db);

// Bijection between codeword indices and constellation indices.
struct IndexMapping {
    std::vector<int> to_symbol;    // xi: codeword index -> constellation index
    std::vector<int> to_codeword;  // xi^{-1}

    int size() const { return static_cast<int>(to_symbol.size()); }
};

IndexMapping identity_mapping(int n);
// Builds the inverse and validates that xi is a permutation.
IndexMapping mapping_from_xi(std::vector<int> xi);

// Index-domain transition seen by the base station:
//   P_CSIT[i][j] = P_ch[xi(i)][xi(j)].
TransitionMatrix csit_transition(const TransitionMatrix& p_ch, const IndexMapping& xi);

// Samples the received codeword index for a sent one (CDF walk over the row).
int transmit_index(const TransitionMatrix& p_csit, int sent, Rng& rng);

struct NeighborSet {
    std::vector<int> indices;  // ascending, always contains the queried point
    double prob_sum = 0.0;
};

// Smallest set containing `point` whose cumulative probability from row
// `point` reaches 1 - eps, grown by descending probability (ties to the
// smallest index).
NeighborSet neighbor_set(const TransitionMatrix& p_ch, int point, double eps);

// Shortened binary Hamming code with n_bits coded bits and
// n_payload = n_bits - m payload bits, where m is the smallest integer with
// 2^m >= n_bits + 1 (the standard (2^m - 1, 2^m - 1 - m) family shortened to
// length n_bits). Bit i of a word corresponds to classic codeword position
// i + 1; parity bits sit at the power-of-two positions.
struct HammingCode {
    int n_bits = 0;
    int n_parity = 0;
    int n_payload = 0;
    std::vector<int> data_pos;              // 1-based positions of payload bits
    std::vector<uint32_t> codewords;        // index = payload value
};

// Throws config_error when the budget cannot fit a positive payload.
HammingCode make_shortened_hamming(int n_bits);

uint32_t hamming_encode(const HammingCode& code, uint32_t payload);

// Syndrome decoding with single-error correction. A syndrome pointing at a
// shortened (nonexistent) position falls back to the nearest codeword by
// Hamming distance, ties to the smallest payload value.
uint32_t hamming_decode(const HammingCode& code, uint32_t word);

// Exact payload -> payload transition when each coded bit flips independently
// with probability p_bit (enumerates all 2^n_bits error patterns).
TransitionMatrix coded_payload_transition(const HammingCode& code, double p_bit);

// One coded feedback use: encode the payload, send each coded bit as a BPSK
// symbol through the binary channel with flip probability p_bit, decode.
uint32_t hamming_feedback_with_ber(const HammingCode& code, uint32_t payload, double p_bit,
                                   Rng& rng);

// Convenience wrapper at a given feedback SNR: fits a shortened Hamming code
// into budget_bits coded bits (throws config_error when impossible) and runs
// one transmission at the BPSK bit error probability for snr_db.
uint32_t hamming_feedback(uint32_t payload, int budget_bits, double snr_db, Rng& rng);

}  // namespace sdma
