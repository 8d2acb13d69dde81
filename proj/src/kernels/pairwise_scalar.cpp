#include <cmath>

#include "impl.hpp"

// Reference path: plain loops and std::pow. The vector variants are checked
// against this in the kernel equivalence tests.

namespace gsqg::kernels::detail {

void pow_array_scalar(const double* x, int n, double e, double* out) {
    for (int l = 0; l < n; ++l) out[l] = std::pow(x[l], e);
}

void biot_savart_row_scalar(double px, double py, const double* sx, const double* sy,
                            const double* tx, const double* ty, int begin, int end,
                            double neg_ahalf, double scale, double* vx, double* vy) {
    double ax = 0.0, ay = 0.0;
    for (int l = begin; l < end; ++l) {
        const double dx = px - sx[l];
        const double dy = py - sy[l];
        const double k = std::pow(dx * dx + dy * dy, neg_ahalf);
        ax += k * tx[l];
        ay += k * ty[l];
    }
    *vx += scale * ax;
    *vy += scale * ay;
}

void self_term_row_scalar(double px, double py, double txi, double tyi, const double* sx,
                          const double* sy, const double* tx, const double* ty,
                          const double* s2, const double* w, int begin, int end,
                          double neg_ahalf, double scale, double* vx, double* vy) {
    double ax = 0.0, ay = 0.0;
    for (int l = begin; l < end; ++l) {
        const double dx = px - sx[l];
        const double dy = py - sy[l];
        const double g = std::pow((dx * dx + dy * dy) / s2[l], neg_ahalf) * w[l];
        ax += g * (tx[l] - txi);
        ay += g * (ty[l] - tyi);
    }
    *vx += scale * ax;
    *vy += scale * ay;
}

}  // namespace gsqg::kernels::detail
