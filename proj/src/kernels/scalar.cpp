#include <cmath>
#include <numbers>

#include "qinv/error.hpp"
#include "qinv/kernels/kernels.hpp"

namespace qinv::kernels {

PhaseTable::PhaseTable(std::int64_t modulus) {
  if (modulus < 1 || modulus > kMaxModulus) {
    throw Error(ErrorCode::kUnsupported,
                "phase modulus " + std::to_string(modulus) + " exceeds the table limit");
  }
  modulus_ = static_cast<std::int32_t>(modulus);
  cos_.resize(modulus_);
  sin_.resize(modulus_);
  // Fill one octant-symmetric pass so that table[N - t] is the exact conjugate
  // of table[t].
  for (std::int32_t t = 0; t <= modulus_ / 2; ++t) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / modulus_;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    cos_[t] = c;
    sin_[t] = s;
    if (t != 0) {
      cos_[modulus_ - t] = c;
      sin_[modulus_ - t] = -s;
    }
  }
  if (modulus_ % 4 == 0) {
    // exact quarter turns
    cos_[modulus_ / 4] = 0.0;
    sin_[modulus_ / 4] = 1.0;
    cos_[3 * (modulus_ / 4)] = 0.0;
    sin_[3 * (modulus_ / 4)] = -1.0;
  }
  if (modulus_ % 2 == 0) {
    cos_[modulus_ / 2] = -1.0;
    sin_[modulus_ / 2] = 0.0;
  }
}

void accumulate_phases_scalar(const PhaseTable& table, std::int32_t base,
                              std::span<const std::int32_t> offsets, double weight,
                              ComplexAccumulator& acc) {
  const std::int32_t n = table.modulus();
  const double* c = table.cos_data();
  const double* s = table.sin_data();
  for (const std::int32_t off : offsets) {
    std::int32_t idx = base + off;
    if (idx >= n) idx -= n;
    acc.re.add(weight * c[idx]);
    acc.im.add(weight * s[idx]);
  }
}

namespace {

double inverse_power(double x, int exponent) {
  // x^{-exponent} by repeated squaring on |exponent|
  unsigned e = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  double base = x, result = 1.0;
  while (e != 0) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return exponent >= 0 ? 1.0 / result : result;
}

}  // namespace

void accumulate_inverse_powers_scalar(std::span<const double> x, int exponent,
                                      CompensatedSum& acc) {
  for (const double v : x) acc.add(inverse_power(v, exponent));
}

}  // namespace qinv::kernels
