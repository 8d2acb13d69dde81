#pragma once

#include <span>
#include <vector>

#include "gsqg/types.hpp"

namespace gsqg::util {

/// Uniform periodic grid x_l = 2 pi l / n with cached trig tables.
/// Transforms are direct tabulated sums; all grid sizes used here are small
/// enough that O(n^2) is immaterial, and the fixed summation order keeps
/// results bit-reproducible.
class FourierGrid {
public:
    explicit FourierGrid(int n);

    int size() const { return n_; }
    const std::vector<double>& nodes() const { return x_; }
    double node(int l) const { return x_[static_cast<size_t>(l)]; }

    /// table lookups: cos(k x_l), sin(k x_l) for 0 <= k <= n/2
    double cosk(int k, int l) const { return cos_[static_cast<size_t>(k) * n_ + l]; }
    double sink(int k, int l) const { return sin_[static_cast<size_t>(k) * n_ + l]; }

    struct Coeffs {
        std::vector<double> cosine;  ///< index k = 0..n/2; cosine[0] is the mean
        std::vector<double> sine;    ///< index k = 0..n/2; sine[0] = 0
    };

    /// f(x) = cosine[0] + sum_{k>=1} (cosine[k] cos kx + sine[k] sin kx)
    Coeffs analyze(std::span<const double> f) const;

    std::vector<double> synthesize(const Coeffs& c) const;

    /// spectral derivative of periodic samples
    std::vector<double> derivative(std::span<const double> f) const;

    /// evaluate the trig interpolant of the samples at an arbitrary point
    double interpolate(const Coeffs& c, double x) const;

private:
    int n_;
    std::vector<double> x_;
    std::vector<double> cos_, sin_;  // (n/2+1) x n tables
};

/// Dense matrix with LU solve, enough for the small systems here.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

    int rows() const { return r_; }
    int cols() const { return c_; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    /// solve A x = b in-place style (A copied); partial pivoting
    std::vector<double> solve(std::span<const double> b) const;

    /// 1-norm condition estimate via explicit inverse columns (small systems)
    double condition_1norm() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<double> a_;
};

}  // namespace gsqg::util
