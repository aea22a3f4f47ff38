#include "qinv/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define QINV_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#else
#define QINV_HAVE_AVX2_KERNELS 0
#endif

namespace qinv::kernels {

#if QINV_HAVE_AVX2_KERNELS

namespace {

struct Lanes {
  __m256d sum;
  __m256d carry;
};

__attribute__((target("avx2,fma"))) inline void two_sum(Lanes& l, __m256d x) {
  const __m256d s = _mm256_add_pd(l.sum, x);
  const __m256d bp = _mm256_sub_pd(s, l.sum);
  const __m256d err =
      _mm256_add_pd(_mm256_sub_pd(l.sum, _mm256_sub_pd(s, bp)), _mm256_sub_pd(x, bp));
  l.carry = _mm256_add_pd(l.carry, err);
  l.sum = s;
}

__attribute__((target("avx2,fma"))) inline void fold(const Lanes& l, CompensatedSum& acc) {
  alignas(32) double sum[4];
  alignas(32) double carry[4];
  _mm256_store_pd(sum, l.sum);
  _mm256_store_pd(carry, l.carry);
  for (int k = 0; k < 4; ++k) {
    acc.add(sum[k]);
    acc.carry += carry[k];
  }
}

}  // namespace

__attribute__((target("avx2,fma"))) void accumulate_phases_avx2(
    const PhaseTable& table, std::int32_t base, std::span<const std::int32_t> offsets,
    double weight, ComplexAccumulator& acc) {
  const std::int32_t n = table.modulus();
  const double* c = table.cos_data();
  const double* s = table.sin_data();
  const std::size_t count = offsets.size();
  const std::size_t vec_end = count - count % 4;

  const __m128i vbase = _mm_set1_epi32(base);
  const __m128i vlimit = _mm_set1_epi32(n - 1);
  const __m128i vmod = _mm_set1_epi32(n);
  const __m256d vweight = _mm256_set1_pd(weight);
  Lanes re{_mm256_setzero_pd(), _mm256_setzero_pd()};
  Lanes im{_mm256_setzero_pd(), _mm256_setzero_pd()};

  for (std::size_t t = 0; t < vec_end; t += 4) {
    __m128i idx = _mm_add_epi32(
        vbase, _mm_loadu_si128(reinterpret_cast<const __m128i*>(offsets.data() + t)));
    const __m128i wrap = _mm_cmpgt_epi32(idx, vlimit);
    idx = _mm_sub_epi32(idx, _mm_and_si128(wrap, vmod));
    two_sum(re, _mm256_mul_pd(vweight, _mm256_i32gather_pd(c, idx, 8)));
    two_sum(im, _mm256_mul_pd(vweight, _mm256_i32gather_pd(s, idx, 8)));
  }
  fold(re, acc.re);
  fold(im, acc.im);
  accumulate_phases_scalar(table, base, offsets.subspan(vec_end), weight, acc);
}

__attribute__((target("avx2,fma"))) void accumulate_inverse_powers_avx2(
    std::span<const double> x, int exponent, CompensatedSum& acc) {
  const std::size_t count = x.size();
  const std::size_t vec_end = count - count % 4;
  const unsigned magnitude = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  const __m256d one = _mm256_set1_pd(1.0);
  Lanes lanes{_mm256_setzero_pd(), _mm256_setzero_pd()};

  for (std::size_t t = 0; t < vec_end; t += 4) {
    __m256d base = _mm256_loadu_pd(x.data() + t);
    __m256d result = one;
    for (unsigned e = magnitude; e != 0; e >>= 1u) {
      if (e & 1u) result = _mm256_mul_pd(result, base);
      base = _mm256_mul_pd(base, base);
    }
    if (exponent >= 0) result = _mm256_div_pd(one, result);
    two_sum(lanes, result);
  }
  fold(lanes, acc);
  accumulate_inverse_powers_scalar(x.subspan(vec_end), exponent, acc);
}

bool cpu_has_avx2() noexcept {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#else

void accumulate_phases_avx2(const PhaseTable& table, std::int32_t base,
                            std::span<const std::int32_t> offsets, double weight,
                            ComplexAccumulator& acc) {
  accumulate_phases_scalar(table, base, offsets, weight, acc);
}

void accumulate_inverse_powers_avx2(std::span<const double> x, int exponent,
                                    CompensatedSum& acc) {
  accumulate_inverse_powers_scalar(x, exponent, acc);
}

bool cpu_has_avx2() noexcept { return false; }

#endif

}  // namespace qinv::kernels
