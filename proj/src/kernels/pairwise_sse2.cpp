#include <emmintrin.h>

#include "impl.hpp"
#include "pow_core.hpp"

// SSE2 lane (2 doubles); baseline for x86-64, used when AVX2 is unavailable.

namespace gsqg::kernels::detail {

namespace {

struct V2 {
    __m128d v;

    static V2 load(const double* p) { return {_mm_loadu_pd(p)}; }
    static V2 broadcast(double s) { return {_mm_set1_pd(s)}; }

    friend V2 operator+(V2 a, V2 b) { return {_mm_add_pd(a.v, b.v)}; }
    friend V2 operator-(V2 a, V2 b) { return {_mm_sub_pd(a.v, b.v)}; }
    friend V2 operator*(V2 a, V2 b) { return {_mm_mul_pd(a.v, b.v)}; }
    friend V2 operator/(V2 a, V2 b) { return {_mm_div_pd(a.v, b.v)}; }

    static __m128d cmp_ge(V2 a, V2 b) { return _mm_cmpge_pd(a.v, b.v); }
    static V2 blend(V2 a, V2 b, __m128d mask) {
        return {_mm_or_pd(_mm_and_pd(mask, b.v), _mm_andnot_pd(mask, a.v))};
    }

    static V2 round_nearest(V2 a) {
        const __m128d magic = _mm_set1_pd(6755399441055744.0);
        return {_mm_sub_pd(_mm_add_pd(a.v, magic), magic)};
    }

    static V2 exponent_as_double(V2 x) {
        __m128i eb = _mm_srli_epi64(_mm_castpd_si128(x.v), 52);
        __m128i magic = _mm_set1_epi64x(0x4330000000000000LL);
        __m128d d = _mm_castsi128_pd(_mm_or_si128(eb, magic));
        return {_mm_sub_pd(d, _mm_set1_pd(4503599627370496.0 + 1023.0))};
    }

    static V2 mantissa_in_1_2(V2 x) {
        __m128i mant =
            _mm_and_si128(_mm_castpd_si128(x.v), _mm_set1_epi64x(0x000FFFFFFFFFFFFFLL));
        return {_mm_castsi128_pd(_mm_or_si128(mant, _mm_set1_epi64x(0x3FF0000000000000LL)))};
    }

    static V2 pow2_of_integer(V2 n) {
        const __m128d magicd = _mm_set1_pd(6755399441055744.0);
        __m128i ni = _mm_sub_epi64(_mm_castpd_si128(_mm_add_pd(n.v, magicd)),
                                   _mm_castpd_si128(magicd));
        __m128i bits = _mm_slli_epi64(_mm_add_epi64(ni, _mm_set1_epi64x(1023)), 52);
        return {_mm_castsi128_pd(bits)};
    }

    double hsum() const { return _mm_cvtsd_f64(_mm_add_sd(v, _mm_unpackhi_pd(v, v))); }
};

}  // namespace

void pow_array_sse2(const double* x, int n, double e, double* out) {
    int l = 0;
    for (; l + 2 <= n; l += 2) {
        V2 r = pow_positive(V2::load(x + l), e);
        _mm_storeu_pd(out + l, r.v);
    }
    pow_array_scalar(x + l, n - l, e, out + l);
}

void biot_savart_row_sse2(double px, double py, const double* sx, const double* sy,
                          const double* tx, const double* ty, int begin, int end,
                          double neg_ahalf, double scale, double* vx, double* vy) {
    V2 vpx = V2::broadcast(px), vpy = V2::broadcast(py);
    V2 ax = V2::broadcast(0.0), ay = V2::broadcast(0.0);
    int l = begin;
    for (; l + 2 <= end; l += 2) {
        V2 dx = vpx - V2::load(sx + l);
        V2 dy = vpy - V2::load(sy + l);
        V2 k = pow_positive(dx * dx + dy * dy, neg_ahalf);
        ax = ax + k * V2::load(tx + l);
        ay = ay + k * V2::load(ty + l);
    }
    *vx += scale * ax.hsum();
    *vy += scale * ay.hsum();
    if (l < end) biot_savart_row_scalar(px, py, sx, sy, tx, ty, l, end, neg_ahalf, scale, vx, vy);
}

void self_term_row_sse2(double px, double py, double txi, double tyi, const double* sx,
                        const double* sy, const double* tx, const double* ty, const double* s2,
                        const double* w, int begin, int end, double neg_ahalf, double scale,
                        double* vx, double* vy) {
    V2 vpx = V2::broadcast(px), vpy = V2::broadcast(py);
    V2 vtxi = V2::broadcast(txi), vtyi = V2::broadcast(tyi);
    V2 ax = V2::broadcast(0.0), ay = V2::broadcast(0.0);
    int l = begin;
    for (; l + 2 <= end; l += 2) {
        V2 dx = vpx - V2::load(sx + l);
        V2 dy = vpy - V2::load(sy + l);
        V2 g = pow_positive((dx * dx + dy * dy) / V2::load(s2 + l), neg_ahalf) * V2::load(w + l);
        ax = ax + g * (V2::load(tx + l) - vtxi);
        ay = ay + g * (V2::load(ty + l) - vtyi);
    }
    *vx += scale * ax.hsum();
    *vy += scale * ay.hsum();
    if (l < end)
        self_term_row_scalar(px, py, txi, tyi, sx, sy, tx, ty, s2, w, l, end, neg_ahalf, scale, vx, vy);
}

}  // namespace gsqg::kernels::detail
