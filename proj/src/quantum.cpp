#include "qinv/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qinv/error.hpp"

namespace qinv {
namespace {

// 2 sin(2πn/r), folded so that {r-n} = -{n} holds bit-for-bit.
double folded_qint(long n, int r) {
  long m = n % r;
  if (m < 0) m += r;
  double sign = 1.0;
  if (2 * m > r) {
    m = r - m;
    sign = -1.0;
  }
  return sign * 2.0 * std::sin(2.0 * std::numbers::pi * static_cast<double>(m) / r);
}

void require_color(int c, const RootContext& ctx) {
  if (!ctx.is_color(c)) {
    throw Error(ErrorCode::kDomain,
                "color " + std::to_string(c) + " is not in I_" + std::to_string(ctx.r()));
  }
}

}  // namespace

RootContext::RootContext(int r) : r_(r) {
  if (r < 3 || r % 2 == 0) {
    throw Error(ErrorCode::kDomain, "level r must be odd and >= 3, got " + std::to_string(r));
  }
  for (int c = 0; c <= r - 3; c += 2) colors_.push_back(c);
  qint_.resize(r + 1);
  qfactorial_.resize(r + 1);
  qfactorial_[0] = 1.0;
  for (int n = 0; n <= r; ++n) qint_[n] = folded_qint(n, r);
  for (int n = 1; n <= r; ++n) qfactorial_[n] = qfactorial_[n - 1] * qint_[n];
  eta_ = qint_[1] / std::sqrt(static_cast<double>(r));
}

double RootContext::qint(int n) const noexcept {
  if (n >= 0 && n <= r_) return qint_[n];
  return folded_qint(n, r_);
}

double RootContext::qfactorial(int n) const {
  if (n < 0 || n > r_) {
    throw Error(ErrorCode::kDomain, "quantum factorial {" + std::to_string(n) +
                                        "}! outside 0.." + std::to_string(r_));
  }
  return qfactorial_[n];
}

double quantum_integer(int n, const RootContext& ctx) { return ctx.qint(n); }

double quantum_integer_normalized(int n, const RootContext& ctx) {
  return ctx.qint(n) / ctx.zeta();
}

double quantum_factorial(int n, const RootContext& ctx) { return ctx.qfactorial(n); }

bool is_admissible_triple(int i, int j, int k, const RootContext& ctx) {
  require_color(i, ctx);
  require_color(j, ctx);
  require_color(k, ctx);
  return i <= j + k && j <= i + k && k <= i + j && i + j + k <= 2 * (ctx.r() - 2);
}

Complex delta_triple(int i, int j, int k, const RootContext& ctx) {
  if (!is_admissible_triple(i, j, k, ctx)) {
    throw Error(ErrorCode::kDomain, "Δ of a non-admissible triple");
  }
  const double radicand = ctx.qfactorial((i + j - k) / 2) * ctx.qfactorial((i + k - j) / 2) *
                          ctx.qfactorial((j + k - i) / 2) / ctx.qfactorial((i + j + k) / 2 + 1);
  return std::sqrt(Complex(ctx.zeta())) * std::sqrt(Complex(radicand));
}

bool is_admissible_tuple(const SixTuple& t, const RootContext& ctx) {
  const auto [i, j, k, l, m, n] = t;
  return is_admissible_triple(i, j, k, ctx) && is_admissible_triple(j, l, n, ctx) &&
         is_admissible_triple(i, m, n, ctx) && is_admissible_triple(k, l, m, ctx);
}

Complex six_j(const SixTuple& t, const RootContext& ctx) {
  if (!is_admissible_tuple(t, ctx)) throw Error(ErrorCode::kDomain, "6j of a non-admissible tuple");
  const auto [i, j, k, l, m, n] = t;
  const std::array<int, 4> tri{(i + j + k) / 2, (i + m + n) / 2, (j + l + n) / 2, (k + l + m) / 2};
  const std::array<int, 3> quad{(i + j + l + m) / 2, (i + k + l + n) / 2, (j + k + m + n) / 2};
  const int lo = *std::max_element(tri.begin(), tri.end());
  const int hi = std::min(*std::min_element(quad.begin(), quad.end()), ctx.r() - 2);

  double sum = 0.0;
  for (int z = lo; z <= hi; ++z) {
    double den = 1.0;
    for (int tb : tri) den *= ctx.qfactorial(z - tb);
    for (int qc : quad) den *= ctx.qfactorial(qc - z);
    const double term = ctx.qfactorial(z + 1) / den;
    sum += (z % 2 == 0) ? term : -term;
  }

  const int lambda = i + j + k + l + m + n;
  // (√-1)^λ for even λ
  const double phase = (lambda / 2) % 2 == 0 ? 1.0 : -1.0;
  Complex prefactor = phase / ctx.zeta();
  prefactor *= delta_triple(i, j, k, ctx) * delta_triple(j, l, n, ctx) *
               delta_triple(i, m, n, ctx) * delta_triple(k, l, m, ctx);
  return prefactor * sum;
}

}  // namespace qinv
