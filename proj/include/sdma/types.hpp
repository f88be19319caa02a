#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdma {

// Library version reported by the CLI and stamped into run manifests.
inline constexpr const char* kSdmaVersion = "1.0.0";

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Thrown for invalid configurations (bad parameter ranges, inconsistent
// dimensions, infeasible code budgets). Carries a single-line message so the
// CLI can print it machine-readably.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Dense row-major square matrix of probabilities or distances.
class Matrix {
  public:
    Matrix() : n_(0) {}
    explicit Matrix(int n, double fill = 0.0) : n_(n), data_(static_cast<size_t>(n) * n, fill) {}

    int size() const { return n_; }
    double& at(int i, int j) { return data_[static_cast<size_t>(i) * n_ + j]; }
    double at(int i, int j) const { return data_[static_cast<size_t>(i) * n_ + j]; }
    const double* row(int i) const { return data_.data() + static_cast<size_t>(i) * n_; }

  private:
    int n_;
    std::vector<double> data_;
};

}  // namespace sdma
