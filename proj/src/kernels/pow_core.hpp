#pragma once

// Polynomial pow core shared by the SSE2 and AVX2 kernel translation units.
// Computes x^p for strictly positive normal x as exp2(p * log2(x)).
//
// log2: mantissa reduced to [sqrt(1/2), sqrt(2)); log2(m) via the atanh series
// in z = (m-1)/(m+1), |z| <= 0.1716, through z^19.
// exp2: 2^f = exp(f ln 2) with |f| <= 1/2, Taylor through degree 13, then the
// integer part folded into the exponent bits.
//
// V is a small SIMD wrapper providing arithmetic, compares/blends and the
// bit-level helpers used below. Instantiated with width 2 (SSE2) and 4 (AVX2).

namespace gsqg::kernels::detail {

// c_k = (2/ln2) / (2k+1)
inline constexpr double kLogC[10] = {
    2.8853900817779268,     0.96179669392597556,  0.57707801635558537,
    0.41219858311113241,    0.32059889797532520,  0.26230818925253881,
    0.22195308321368668,    0.19235933878519512,  0.16972882833987805,
    0.15186263588304878};

// 1/k! for the exp Taylor series, k = 2..13
inline constexpr double kExpC[12] = {
    0.5,
    0.16666666666666666,
    0.041666666666666664,
    0.0083333333333333332,
    0.0013888888888888889,
    0.00019841269841269841,
    2.4801587301587302e-05,
    2.7557319223985893e-06,
    2.7557319223985888e-07,
    2.5052108385441720e-08,
    2.0876756987868100e-09,
    1.6059043836821613e-10};

inline constexpr double kLn2 = 0.69314718055994530942;
inline constexpr double kSqrt2 = 1.4142135623730951;

template <class V>
inline V pow_positive(V x, double p) {
    // x = 2^e * m with m in [1,2)
    V e = V::exponent_as_double(x);
    V m = V::mantissa_in_1_2(x);
    // shift m >= sqrt2 down one octave
    auto big = V::cmp_ge(m, V::broadcast(kSqrt2));
    m = V::blend(m, m * V::broadcast(0.5), big);
    e = V::blend(e, e + V::broadcast(1.0), big);

    V z = (m - V::broadcast(1.0)) / (m + V::broadcast(1.0));
    V z2 = z * z;
    V poly = V::broadcast(kLogC[9]);
    for (int k = 8; k >= 0; --k) poly = poly * z2 + V::broadcast(kLogC[k]);
    V log2x = e + z * poly;

    V y = V::broadcast(p) * log2x;
    V n = V::round_nearest(y);
    V w = (y - n) * V::broadcast(kLn2);
    V r = V::broadcast(kExpC[11]);
    for (int k = 10; k >= 0; --k) r = r * w + V::broadcast(kExpC[k]);
    r = r * (w * w) + w + V::broadcast(1.0);
    return r * V::pow2_of_integer(n);
}

}  // namespace gsqg::kernels::detail
