#pragma once

namespace gsqg::kernels {

enum class Isa { scalar = 0, sse2 = 1, avx2 = 2 };

/// Instruction set selected at startup: highest supported by the CPU, unless
/// overridden by the environment variable GSQG_SIMD=scalar|sse2|avx2.
Isa active_isa();
const char* isa_name(Isa isa);

/// out[l] = x[l]^e. The scalar path defers to std::pow; the vector paths use a
/// polynomial exp2/log2 evaluation valid for strictly positive normal x
/// (relative error < ~2e-14 over the ranges used here).
void pow_array(const double* x, int n, double e, double* out);
void pow_array(Isa isa, const double* x, int n, double e, double* out);

/// Biot-Savart style accumulation for one target point:
///   vx += scale * sum_{l=begin}^{end-1} ((px-sx[l])^2 + (py-sy[l])^2)^{neg_ahalf} * tx[l]
/// and likewise vy with ty.
void biot_savart_row(double px, double py, const double* sx, const double* sy,
                     const double* tx, const double* ty, int begin, int end,
                     double neg_ahalf, double scale, double* vx, double* vy);
void biot_savart_row(Isa isa, double px, double py, const double* sx, const double* sy,
                     const double* tx, const double* ty, int begin, int end,
                     double neg_ahalf, double scale, double* vx, double* vy);

/// Subtracted self-interaction accumulation for one target node i:
///   g_l   = (((px-sx[l])^2 + (py-sy[l])^2) / s2[l])^{neg_ahalf} * w[l]
///   vx   += scale * sum_l g_l * (tx[l] - txi),   vy likewise.
/// s2 and w are the per-offset chord factor 4 sin^2((x_i-x_l)/2) and quadrature
/// weight, passed as views aligned so index l addresses offset (l - i) mod M.
/// The diagonal l = i must be excluded via [begin,end) ranges.
void self_term_row(double px, double py, double txi, double tyi, const double* sx,
                   const double* sy, const double* tx, const double* ty, const double* s2,
                   const double* w, int begin, int end, double neg_ahalf, double scale,
                   double* vx, double* vy);
void self_term_row(Isa isa, double px, double py, double txi, double tyi, const double* sx,
                   const double* sy, const double* tx, const double* ty, const double* s2,
                   const double* w, int begin, int end, double neg_ahalf, double scale,
                   double* vx, double* vy);

}  // namespace gsqg::kernels
