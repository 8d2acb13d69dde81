#pragma once

// per-ISA entry points, defined in pairwise_{scalar,sse2,avx2}.cpp

namespace gsqg::kernels::detail {

#define GSQG_KERNEL_DECLS(suffix)                                                              \
    void pow_array_##suffix(const double* x, int n, double e, double* out);                    \
    void biot_savart_row_##suffix(double px, double py, const double* sx, const double* sy,    \
                                  const double* tx, const double* ty, int begin, int end,      \
                                  double neg_ahalf, double scale, double* vx, double* vy);     \
    void self_term_row_##suffix(double px, double py, double txi, double tyi,                  \
                                const double* sx, const double* sy, const double* tx,          \
                                const double* ty, const double* s2, const double* w,           \
                                int begin, int end, double neg_ahalf, double scale, double* vx, \
                                double* vy);

GSQG_KERNEL_DECLS(scalar)
GSQG_KERNEL_DECLS(sse2)
GSQG_KERNEL_DECLS(avx2)

#undef GSQG_KERNEL_DECLS

}  // namespace gsqg::kernels::detail
