#include "sdma/core_math.hpp"

#include <cmath>

namespace sdma {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    // 53-bit mantissa in [0,1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_pos() {
    return 1.0 - uniform();
}

uint64_t Rng::uniform_below(uint64_t n) {
    if (n <= 1) return 0;
    // rejection sampling keeps the draw unbiased
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = eng_();
    } while (v >= limit);
    return v % n;
}

cplx Rng::cgaussian() {
    // amplitude-phase form: |z|^2 ~ Exp(1), phase uniform
    double r = std::sqrt(-std::log(uniform_pos()));
    double th = 2.0 * M_PI * uniform();
    return {r * std::cos(th), r * std::sin(th)};
}

void mgs_orthonormalize(std::vector<cvec>& cols) {
    size_t n = cols.size();
    for (size_t k = 0; k < n; ++k) {
        for (size_t j = 0; j < k; ++j) {
            cplx proj = 0.0;
            for (size_t t = 0; t < cols[k].size(); ++t)
                proj += std::conj(cols[j][t]) * cols[k][t];
            for (size_t t = 0; t < cols[k].size(); ++t)
                cols[k][t] -= proj * cols[j][t];
        }
        double nrm = std::sqrt(cnorm2(cols[k]));
        if (nrm < 1e-12)
            throw config_error("mgs_orthonormalize: rank-deficient draw");
        for (auto& v : cols[k]) v /= nrm;
    }
}

double cdot_abs2(const cvec& a, const cvec& b) {
    cplx s = 0.0;
    for (size_t t = 0; t < a.size(); ++t) s += std::conj(a[t]) * b[t];
    return std::norm(s);
}

double cnorm2(const cvec& a) {
    double s = 0.0;
    for (const auto& v : a) s += std::norm(v);
    return s;
}

double qfunc(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

namespace {

// series expansion of P(a,x), valid for x < a+1
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// continued fraction for Q(a,x) = 1 - P(a,x), valid for x >= a+1
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_trunc_quantile(double shape, double trunc, double q) {
    double f_low = gamma_p(shape, trunc);
    double target = f_low + q * (1.0 - f_low);
    // bisection; gamma tail is well inside [trunc, trunc + 60*sqrt(shape) + 60]
    double lo = trunc;
    double hi = trunc + 60.0 * std::sqrt(shape) + 60.0;
    while (gamma_p(shape, hi) < target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (gamma_p(shape, mid) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    double fa = f(a), fb = f(b);
    double m = 0.5 * (a + b), fm = f(m);
    double whole = simpson(a, fa, b, fb, fm);
    double scale = std::max(std::fabs(whole), 1e-30);
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, scale * rel_tol, 48);
}

}  // namespace sdma
