#include <immintrin.h>

#include "impl.hpp"
#include "pow_core.hpp"

// AVX2 lane (4 doubles). Compiled with -mavx2; selected at runtime only when
// the CPU reports AVX2.

namespace gsqg::kernels::detail {

namespace {

struct V4 {
    __m256d v;

    static V4 load(const double* p) { return {_mm256_loadu_pd(p)}; }
    static V4 broadcast(double s) { return {_mm256_set1_pd(s)}; }

    friend V4 operator+(V4 a, V4 b) { return {_mm256_add_pd(a.v, b.v)}; }
    friend V4 operator-(V4 a, V4 b) { return {_mm256_sub_pd(a.v, b.v)}; }
    friend V4 operator*(V4 a, V4 b) { return {_mm256_mul_pd(a.v, b.v)}; }
    friend V4 operator/(V4 a, V4 b) { return {_mm256_div_pd(a.v, b.v)}; }

    static __m256d cmp_ge(V4 a, V4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_GE_OQ); }
    static V4 blend(V4 a, V4 b, __m256d mask) { return {_mm256_blendv_pd(a.v, b.v, mask)}; }

    static V4 round_nearest(V4 a) {
        const __m256d magic = _mm256_set1_pd(6755399441055744.0);  // 2^52 + 2^51
        return {_mm256_sub_pd(_mm256_add_pd(a.v, magic), magic)};
    }

    static V4 exponent_as_double(V4 x) {
        __m256i eb = _mm256_srli_epi64(_mm256_castpd_si256(x.v), 52);
        __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
        __m256d d = _mm256_castsi256_pd(_mm256_or_si256(eb, magic));
        return {_mm256_sub_pd(d, _mm256_set1_pd(4503599627370496.0 + 1023.0))};
    }

    static V4 mantissa_in_1_2(V4 x) {
        __m256i mant = _mm256_and_si256(_mm256_castpd_si256(x.v),
                                        _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL));
        return {_mm256_castsi256_pd(_mm256_or_si256(mant, _mm256_set1_epi64x(0x3FF0000000000000LL)))};
    }

    static V4 pow2_of_integer(V4 n) {
        const __m256d magicd = _mm256_set1_pd(6755399441055744.0);
        __m256i ni = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n.v, magicd)),
                                      _mm256_castpd_si256(magicd));
        __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
        return {_mm256_castsi256_pd(bits)};
    }

    double hsum() const {
        __m128d lo = _mm256_castpd256_pd128(v);
        __m128d hi = _mm256_extractf128_pd(v, 1);
        __m128d s = _mm_add_pd(lo, hi);
        return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
    }
};

}  // namespace

void pow_array_avx2(const double* x, int n, double e, double* out) {
    int l = 0;
    for (; l + 4 <= n; l += 4) {
        V4 r = pow_positive(V4::load(x + l), e);
        _mm256_storeu_pd(out + l, r.v);
    }
    pow_array_scalar(x + l, n - l, e, out + l);
}

void biot_savart_row_avx2(double px, double py, const double* sx, const double* sy,
                          const double* tx, const double* ty, int begin, int end,
                          double neg_ahalf, double scale, double* vx, double* vy) {
    V4 vpx = V4::broadcast(px), vpy = V4::broadcast(py);
    V4 ax = V4::broadcast(0.0), ay = V4::broadcast(0.0);
    int l = begin;
    for (; l + 4 <= end; l += 4) {
        V4 dx = vpx - V4::load(sx + l);
        V4 dy = vpy - V4::load(sy + l);
        V4 k = pow_positive(dx * dx + dy * dy, neg_ahalf);
        ax = ax + k * V4::load(tx + l);
        ay = ay + k * V4::load(ty + l);
    }
    *vx += scale * ax.hsum();
    *vy += scale * ay.hsum();
    if (l < end) biot_savart_row_scalar(px, py, sx, sy, tx, ty, l, end, neg_ahalf, scale, vx, vy);
}

void self_term_row_avx2(double px, double py, double txi, double tyi, const double* sx,
                        const double* sy, const double* tx, const double* ty, const double* s2,
                        const double* w, int begin, int end, double neg_ahalf, double scale,
                        double* vx, double* vy) {
    V4 vpx = V4::broadcast(px), vpy = V4::broadcast(py);
    V4 vtxi = V4::broadcast(txi), vtyi = V4::broadcast(tyi);
    V4 ax = V4::broadcast(0.0), ay = V4::broadcast(0.0);
    int l = begin;
    for (; l + 4 <= end; l += 4) {
        V4 dx = vpx - V4::load(sx + l);
        V4 dy = vpy - V4::load(sy + l);
        V4 g = pow_positive((dx * dx + dy * dy) / V4::load(s2 + l), neg_ahalf) * V4::load(w + l);
        ax = ax + g * (V4::load(tx + l) - vtxi);
        ay = ay + g * (V4::load(ty + l) - vtyi);
    }
    *vx += scale * ax.hsum();
    *vy += scale * ay.hsum();
    if (l < end)
        self_term_row_scalar(px, py, txi, tyi, sx, sy, tx, ty, s2, w, l, end, neg_ahalf, scale, vx, vy);
}

}  // namespace gsqg::kernels::detail
