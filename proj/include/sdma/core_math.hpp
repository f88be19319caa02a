#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "sdma/types.hpp"

namespace sdma {

// SplitMix64 step; used to derive independent per-trial seeds from a master
// seed so results do not depend on thread scheduling.
uint64_t splitmix64(uint64_t& state);

// Deterministic RNG wrapper. All randomness in the library flows through this
// class; gaussians are produced from uniforms directly (never through
// std::normal_distribution, whose output is implementation-defined) so that
// identical seeds give identical streams on every platform.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    // uniform in [0,1)
    double uniform();
    // uniform in (0,1], safe under log
    double uniform_pos();
    // unbiased integer in [0, n)
    uint64_t uniform_below(uint64_t n);
    // standard complex gaussian, E|z|^2 = 1
    cplx cgaussian();

  private:
    std::mt19937_64 eng_;
};

// In-place modified Gram-Schmidt on n complex vectors of length n.
// Throws config_error on numerical rank deficiency (caller re-draws).
void mgs_orthonormalize(std::vector<cvec>& cols);

double cdot_abs2(const cvec& a, const cvec& b);  // |a^H b|^2
double cnorm2(const cvec& a);                    // ||a||^2

double qfunc(double x);  // Gaussian tail Q(x)

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

// Quantile at level q of Gamma(shape, scale 1) conditioned on exceeding trunc.
double gamma_trunc_quantile(double shape, double trunc, double q);

// Adaptive Simpson integration to the given relative tolerance.
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol);

}  // namespace sdma
