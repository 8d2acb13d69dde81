#include <cstdlib>
#include <cstring>

#include "gsqg/kernels/pairwise.hpp"
#include "impl.hpp"

namespace gsqg::kernels {

namespace {

Isa detect() {
    if (const char* env = std::getenv("GSQG_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "sse2") == 0) return Isa::sse2;
        if (std::strcmp(env, "avx2") == 0) return Isa::avx2;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) return Isa::avx2;
    return Isa::sse2;
#else
    return Isa::scalar;
#endif
}

}  // namespace

Isa active_isa() {
    static const Isa isa = detect();
    return isa;
}

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::avx2: return "avx2";
        case Isa::sse2: return "sse2";
        default: return "scalar";
    }
}

void pow_array(Isa isa, const double* x, int n, double e, double* out) {
    switch (isa) {
        case Isa::avx2: detail::pow_array_avx2(x, n, e, out); break;
        case Isa::sse2: detail::pow_array_sse2(x, n, e, out); break;
        default: detail::pow_array_scalar(x, n, e, out); break;
    }
}

void pow_array(const double* x, int n, double e, double* out) {
    pow_array(active_isa(), x, n, e, out);
}

void biot_savart_row(Isa isa, double px, double py, const double* sx, const double* sy,
                     const double* tx, const double* ty, int begin, int end, double neg_ahalf,
                     double scale, double* vx, double* vy) {
    switch (isa) {
        case Isa::avx2:
            detail::biot_savart_row_avx2(px, py, sx, sy, tx, ty, begin, end, neg_ahalf, scale, vx, vy);
            break;
        case Isa::sse2:
            detail::biot_savart_row_sse2(px, py, sx, sy, tx, ty, begin, end, neg_ahalf, scale, vx, vy);
            break;
        default:
            detail::biot_savart_row_scalar(px, py, sx, sy, tx, ty, begin, end, neg_ahalf, scale, vx, vy);
            break;
    }
}

void biot_savart_row(double px, double py, const double* sx, const double* sy, const double* tx,
                     const double* ty, int begin, int end, double neg_ahalf, double scale,
                     double* vx, double* vy) {
    biot_savart_row(active_isa(), px, py, sx, sy, tx, ty, begin, end, neg_ahalf, scale, vx, vy);
}

void self_term_row(Isa isa, double px, double py, double txi, double tyi, const double* sx,
                   const double* sy, const double* tx, const double* ty, const double* s2,
                   const double* w, int begin, int end, double neg_ahalf, double scale, double* vx,
                   double* vy) {
    switch (isa) {
        case Isa::avx2:
            detail::self_term_row_avx2(px, py, txi, tyi, sx, sy, tx, ty, s2, w, begin, end,
                                       neg_ahalf, scale, vx, vy);
            break;
        case Isa::sse2:
            detail::self_term_row_sse2(px, py, txi, tyi, sx, sy, tx, ty, s2, w, begin, end,
                                       neg_ahalf, scale, vx, vy);
            break;
        default:
            detail::self_term_row_scalar(px, py, txi, tyi, sx, sy, tx, ty, s2, w, begin, end,
                                         neg_ahalf, scale, vx, vy);
            break;
    }
}

void self_term_row(double px, double py, double txi, double tyi, const double* sx, const double* sy,
                   const double* tx, const double* ty, const double* s2, const double* w, int begin,
                   int end, double neg_ahalf, double scale, double* vx, double* vy) {
    self_term_row(active_isa(), px, py, txi, tyi, sx, sy, tx, ty, s2, w, begin, end, neg_ahalf,
                  scale, vx, vy);
}

}  // namespace gsqg::kernels
