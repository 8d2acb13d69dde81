#include "gsqg/util/fourier.hpp"

#include <cmath>

namespace gsqg::util {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

FourierGrid::FourierGrid(int n) : n_(n) {
    if (n < 4 || n % 2 != 0) throw ConfigError("FourierGrid: n must be even and >= 4");
    x_.resize(static_cast<size_t>(n));
    for (int l = 0; l < n; ++l) x_[l] = 2.0 * kPi * l / n;
    const int kmax = n / 2;
    cos_.resize(static_cast<size_t>(kmax + 1) * n);
    sin_.resize(static_cast<size_t>(kmax + 1) * n);
    for (int k = 0; k <= kmax; ++k)
        for (int l = 0; l < n; ++l) {
            cos_[static_cast<size_t>(k) * n + l] = std::cos(k * x_[l]);
            sin_[static_cast<size_t>(k) * n + l] = std::sin(k * x_[l]);
        }
}

FourierGrid::Coeffs FourierGrid::analyze(std::span<const double> f) const {
    if (static_cast<int>(f.size()) != n_) throw ConfigError("FourierGrid::analyze: size mismatch");
    const int kmax = n_ / 2;
    Coeffs c;
    c.cosine.assign(static_cast<size_t>(kmax) + 1, 0.0);
    c.sine.assign(static_cast<size_t>(kmax) + 1, 0.0);
    for (int k = 0; k <= kmax; ++k) {
        double sc = 0.0, ss = 0.0;
        const double* ct = &cos_[static_cast<size_t>(k) * n_];
        const double* st = &sin_[static_cast<size_t>(k) * n_];
        for (int l = 0; l < n_; ++l) {
            sc += f[l] * ct[l];
            ss += f[l] * st[l];
        }
        const double norm = (k == 0 || 2 * k == n_) ? 1.0 / n_ : 2.0 / n_;
        c.cosine[k] = sc * norm;
        c.sine[k] = ss * norm;
    }
    c.sine[0] = 0.0;
    if (kmax * 2 == n_) c.sine[kmax] = 0.0;  // Nyquist sine not representable
    return c;
}

std::vector<double> FourierGrid::synthesize(const Coeffs& c) const {
    const int kmax = n_ / 2;
    std::vector<double> f(static_cast<size_t>(n_), 0.0);
    for (int k = 0; k <= kmax; ++k) {
        const double* ct = &cos_[static_cast<size_t>(k) * n_];
        const double* st = &sin_[static_cast<size_t>(k) * n_];
        const double a = c.cosine[k], b = c.sine[k];
        if (a == 0.0 && b == 0.0) continue;
        for (int l = 0; l < n_; ++l) f[l] += a * ct[l] + b * st[l];
    }
    return f;
}

std::vector<double> FourierGrid::derivative(std::span<const double> f) const {
    Coeffs c = analyze(f);
    const int kmax = n_ / 2;
    Coeffs d;
    d.cosine.assign(static_cast<size_t>(kmax) + 1, 0.0);
    d.sine.assign(static_cast<size_t>(kmax) + 1, 0.0);
    for (int k = 1; k <= kmax; ++k) {
        if (2 * k == n_) continue;  // drop Nyquist derivative
        d.cosine[k] = k * c.sine[k];
        d.sine[k] = -k * c.cosine[k];
    }
    return synthesize(d);
}

double FourierGrid::interpolate(const Coeffs& c, double x) const {
    const int kmax = n_ / 2;
    double f = c.cosine[0];
    for (int k = 1; k <= kmax; ++k)
        f += c.cosine[k] * std::cos(k * x) + c.sine[k] * std::sin(k * x);
    return f;
}

std::vector<double> Matrix::solve(std::span<const double> b) const {
    if (r_ != c_ || static_cast<int>(b.size()) != r_) throw ConfigError("Matrix::solve: shape mismatch");
    const int n = r_;
    std::vector<double> lu(a_);
    std::vector<int> piv(static_cast<size_t>(n));
    std::vector<double> x(b.begin(), b.end());
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(lu[static_cast<size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(lu[static_cast<size_t>(i) * n + k]);
            if (v > best) { best = v; p = i; }
        }
        if (best == 0.0) throw NumericalError("Matrix::solve: singular matrix");
        piv[k] = p;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(lu[static_cast<size_t>(k) * n + j], lu[static_cast<size_t>(p) * n + j]);
            std::swap(x[k], x[p]);
        }
        const double inv = 1.0 / lu[static_cast<size_t>(k) * n + k];
        for (int i = k + 1; i < n; ++i) {
            const double m = lu[static_cast<size_t>(i) * n + k] * inv;
            lu[static_cast<size_t>(i) * n + k] = m;
            if (m == 0.0) continue;
            for (int j = k + 1; j < n; ++j) lu[static_cast<size_t>(i) * n + j] -= m * lu[static_cast<size_t>(k) * n + j];
            x[i] -= m * x[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int j = i + 1; j < n; ++j) s -= lu[static_cast<size_t>(i) * n + j] * x[j];
        x[i] = s / lu[static_cast<size_t>(i) * n + i];
    }
    return x;
}

double Matrix::condition_1norm() const {
    if (r_ != c_) throw ConfigError("Matrix::condition_1norm: square matrix required");
    const int n = r_;
    double norm_a = 0.0;
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::abs((*this)(i, j));
        norm_a = std::max(norm_a, s);
    }
    double norm_inv = 0.0;
    std::vector<double> e(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        std::vector<double> col = solve(e);
        e[j] = 0.0;
        double s = 0.0;
        for (double v : col) s += std::abs(v);
        norm_inv = std::max(norm_inv, s);
    }
    return norm_a * norm_inv;
}

}  // namespace gsqg::util
