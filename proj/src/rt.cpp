#include "qinv/rt.hpp"

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "qinv/error.hpp"
#include "qinv/kernels/kernels.hpp"
#include "qinv/modular.hpp"

namespace qinv {
namespace {

void require_level(int r) {
  if (r < 3 || r % 2 == 0) {
    throw Error(ErrorCode::kDomain, "level r must be odd and >= 3, got " + std::to_string(r));
  }
}

std::int64_t floor_mod(__int128 x, std::int64_t m) {
  __int128 v = x % m;
  if (v < 0) v += m;
  return static_cast<std::int64_t>(v);
}

// e^{iπ x} for an exact rational x.
Complex unit_phase(const Rational& x) {
  const Rational reduced = mod(x, 2);
  const double angle = std::numbers::pi * reduced.to_double();
  return {std::cos(angle), std::sin(angle)};
}

Complex i_power(std::int64_t n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// (-1)^{a_ε g} i^n r^{a_ε g/2 - 1} / (2^{n + a_ε g/2 - 1} √Π a_j)
Complex hansen_prefactor(const SeifertSymbol& s, int r) {
  const double half_weight = 0.5 * static_cast<double>(s.a_eps() * s.genus);
  const double sign = (s.a_eps() * s.genus) % 2 == 0 ? 1.0 : -1.0;
  const double mag = std::pow(static_cast<double>(r), half_weight - 1.0) /
                     (std::pow(2.0, static_cast<double>(s.n()) + half_weight - 1.0) *
                      std::sqrt(static_cast<double>(fiber_product(s.fibers))));
  return sign * mag * i_power(static_cast<std::int64_t>(s.n()));
}

std::uint64_t checked_term_count(int r, std::size_t n, std::int64_t product) {
  std::uint64_t count = static_cast<std::uint64_t>(r - 1);
  if (n >= 40 || __builtin_mul_overflow(count, std::uint64_t{1} << n, &count) ||
      __builtin_mul_overflow(count, static_cast<std::uint64_t>(product), &count)) {
    throw Error(ErrorCode::kUnsupported, "direct sum term count overflows");
  }
  return count;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::kDirect: return "direct";
    case Method::kSimplified: return "simplified";
    case Method::kBridge: return "bridge";
    case Method::kStateSum: return "statesum";
  }
  return "?";
}

bool InvariantValue::vanishes(double threshold) const noexcept {
  return std::abs(value) < threshold * term_magnitude_sum;
}

double sin_pi_ratio(std::int64_t t, std::int64_t r) noexcept {
  std::int64_t m = t % (2 * r);
  if (m < 0) m += 2 * r;
  double sign = 1.0;
  if (m >= r) {
    m -= r;
    sign = -1.0;
  }
  if (2 * m > r) m = r - m;
  return sign * std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(r));
}

InvariantValue z_direct(const SeifertSymbol& symbol, int r, const SumOptions& options) {
  require_finite_fibers(symbol);
  require_level(r);
  if (symbol.has_boundary) {
    throw Error(ErrorCode::kDomain, "z_direct needs a closed symbol; double it first");
  }
  const auto& fibers = symbol.fibers;
  const std::size_t n = fibers.size();
  const std::int64_t product = fiber_product(fibers);
  const std::uint64_t count = checked_term_count(r, n, product);
  if (count > std::uint64_t{1} << 40) {
    throw Error(ErrorCode::kUnsupported, "direct sum has more than 2^40 terms");
  }

  // Every phase is a multiple of 2π/N with N = 4rA.
  const std::int64_t lcm_a = fiber_lcm(fibers);
  const std::int64_t modulus = 4 * static_cast<std::int64_t>(r) * lcm_a;
  const kernels::PhaseTable table(modulus);

  const Rational e = euler_number(symbol);
  const std::int64_t e_scale = e.num() * (lcm_a / e.den());  // e·A, an integer
  std::vector<std::int64_t> bstar(n);
  for (std::size_t j = 0; j < n; ++j) bstar[j] = mod_inverse(fibers[j].b, fibers[j].a);

  const int exponent = static_cast<int>(n) + symbol.a_eps() * static_cast<int>(symbol.genus) - 2;
  const bool odd_sign_step = (symbol.a_eps() * symbol.genus) % 2 != 0;
  const std::size_t sign_vectors = std::size_t{1} << n;

  std::vector<kernels::ComplexAccumulator> per_gamma(r);
  std::vector<double> weight_abs(r, 0.0);

  auto work_gamma = [&](int gamma, std::vector<std::int32_t>& offsets,
                        std::vector<std::int32_t>& scratch) {
    const double sign = (odd_sign_step && gamma % 2 != 0) ? -1.0 : 1.0;
    const double s = sin_pi_ratio(gamma, r);
    double w = 1.0;
    for (int k = 0; k < std::abs(exponent); ++k) w *= s;
    w = exponent >= 0 ? sign / w : sign * w;
    weight_abs[gamma] = std::abs(w);

    // e^{iπ e γ²/(2r)} = e^{2πi (eA γ²)/N}
    const std::int64_t gauss = floor_mod(static_cast<__int128>(e_scale) * gamma * gamma, modulus);
    auto& acc = per_gamma[gamma];
    for (std::size_t mask = 0; mask < sign_vectors; ++mask) {
      double mu_product = 1.0;
      __int128 base = gauss;
      offsets.assign(1, 0);
      for (std::size_t j = 0; j < n; ++j) {
        const int mu = (mask >> (n - 1 - j)) & 1 ? -1 : 1;
        mu_product *= mu;
        const std::int64_t a = fibers[j].a;
        // e^{-iπγμ_j/(a_j r)} = e^{2πi (-2γμ_j A/a_j)/N}
        base -= static_cast<__int128>(2) * gamma * mu * (lcm_a / a);
        // e^{-2πi (m(γ + μ b*) + r m² b*)/a_j}, expanded over m_j (slowest first)
        const std::int64_t stride = modulus / a;
        scratch.clear();
        scratch.reserve(offsets.size() * static_cast<std::size_t>(a));
        for (const std::int32_t o : offsets) {
          for (std::int64_t m = 0; m < a; ++m) {
            const __int128 phase = static_cast<__int128>(m) * (gamma + mu * bstar[j]) +
                                   static_cast<__int128>(r) * m * m * bstar[j];
            const std::int64_t term = floor_mod(-phase, a) * stride;
            std::int64_t combined = o + term;
            if (combined >= modulus) combined -= modulus;
            scratch.push_back(static_cast<std::int32_t>(combined));
          }
        }
        offsets.swap(scratch);
      }
      kernels::accumulate_phases(table, static_cast<std::int32_t>(floor_mod(base, modulus)),
                                 offsets, mu_product * w, acc);
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(r - 1)));
  if (threads == 1) {
    std::vector<std::int32_t> offsets, scratch;
    for (int gamma = 1; gamma < r; ++gamma) work_gamma(gamma, offsets, scratch);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        std::vector<std::int32_t> offsets, scratch;
        for (int gamma = 1 + static_cast<int>(t); gamma < r; gamma += static_cast<int>(threads)) {
          work_gamma(gamma, offsets, scratch);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  kernels::ComplexAccumulator total;
  kernels::CompensatedSum magnitude;
  const double terms_per_gamma = static_cast<double>(sign_vectors) * static_cast<double>(product);
  for (int gamma = 1; gamma < r; ++gamma) {
    total.add(per_gamma[gamma]);
    magnitude.add(weight_abs[gamma] * terms_per_gamma);
  }

  InvariantValue out;
  out.value = {total.re.value(), total.im.value()};
  out.term_magnitude_sum = magnitude.value();
  out.term_count = count;
  out.method = Method::kDirect;
  out.r = r;
  out.degenerate = n == 0;
  return out;
}

InvariantValue rt_closed(const SeifertSymbol& symbol, int r, const SumOptions& options) {
  InvariantValue z = z_direct(symbol, r, options);
  const Rational e = euler_number(symbol);
  const int sgn = e.sign();
  Rational dedekind_total;
  for (const Fiber& f : symbol.fibers) dedekind_total += dedekind_sum(f.b, f.a);

  // e^{(iπ/2r)[3(a_ε-1)sgn(e) - e - 12Σs]} · e^{i(3π/4)(1-a_ε)sgn(e)}
  const int a_eps = symbol.a_eps();
  const Rational bracket = Rational(3 * (a_eps - 1) * sgn) - e - Rational(12) * dedekind_total;
  const Rational turns = mod(bracket, 4 * static_cast<std::int64_t>(r)) / Rational(2 * r) +
                         Rational(3 * (1 - a_eps) * sgn, 4);
  const Complex factor = unit_phase(turns) * hansen_prefactor(symbol, r);

  z.value *= factor;
  z.term_magnitude_sum *= std::abs(factor);
  return z;
}

InvariantValue z_double_simplified(const SeifertSymbol& bounded, int r) {
  require_finite_fibers(bounded);
  require_level(r);
  if (!bounded.has_boundary) {
    throw Error(ErrorCode::kDomain, "simplified form takes the bounded symbol M, not D(M)");
  }
  InvariantValue out;
  out.method = Method::kSimplified;
  out.r = r;
  const auto& fibers = bounded.fibers;
  const std::size_t n = fibers.size();
  if (n == 0) {
    out.degenerate = true;
    return out;
  }
  for (const Fiber& f : fibers) {
    if (f.a < 3) {
      throw Error(ErrorCode::kPrecondition,
                  "simplified form needs every a_j >= 3 (normalize first); got a = " +
                      std::to_string(f.a));
    }
  }
  const std::int64_t lcm_a = fiber_lcm(fibers);
  if (r % lcm_a != 0) {
    throw Error(ErrorCode::kPrecondition, "simplified form needs A = " + std::to_string(lcm_a) +
                                              " to divide r = " + std::to_string(r));
  }
  const auto cert = enumerate_b(fibers);
  if (!cert) return out;  // empty B: every summand cancels

  const std::int64_t k = r / lcm_a;
  std::vector<double> sines;
  sines.reserve(cert->cardinality() * static_cast<std::size_t>(k));
  for (const auto& entry : cert->set_b) {
    if (2 * entry.gamma > lcm_a) continue;  // partner (A-γ, -μ) covers it
    for (std::int64_t p = 0; p < k; ++p) {
      sines.push_back(sin_pi_ratio(p * lcm_a + entry.gamma, r));
      sines.push_back(sin_pi_ratio(p * lcm_a + lcm_a - entry.gamma, r));
    }
  }
  const int exponent = 2 * static_cast<int>(n) + 2 * bounded.a_eps() * static_cast<int>(bounded.genus) - 2;
  kernels::CompensatedSum sum;
  kernels::accumulate_inverse_powers(sines, exponent, sum);

  const double prod = static_cast<double>(fiber_product(fibers));
  const double scale = prod * prod;
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  out.value = sign * scale * sum.value();
  out.term_magnitude_sum = scale * sum.value();  // all terms share one sign
  out.term_count = sines.size();
  return out;
}

InvariantValue rt_double(const SeifertSymbol& bounded, int r, Method method,
                         const SumOptions& options) {
  const SeifertSymbol doubled = double_symbol(bounded);
  if (method == Method::kDirect) return rt_closed(doubled, r, options);
  if (method != Method::kSimplified) {
    throw Error(ErrorCode::kPrecondition, "rt_double supports the direct and simplified methods");
  }
  // e(D(M)) = 0 and Σ s(±b_j, a_j) = 0, so both phases are 1.
  InvariantValue z = z_double_simplified(bounded, r);
  const Complex factor = hansen_prefactor(doubled, r);
  z.value *= factor;
  z.term_magnitude_sum *= std::abs(factor);
  return z;
}

double verlinde_dimension(std::int64_t genus, int r) {
  require_level(r);
  if (genus < 1) throw Error(ErrorCode::kDomain, "Verlinde dimension needs genus >= 1");
  if (genus == 1) return static_cast<double>(r - 1);
  std::vector<double> sines;
  for (int j = 1; j < r; ++j) sines.push_back(sin_pi_ratio(j, r));
  kernels::CompensatedSum sum;
  kernels::accumulate_inverse_powers(sines, static_cast<int>(2 * genus - 2), sum);
  return std::pow(0.5 * r, static_cast<double>(genus - 1)) * sum.value();
}

}  // namespace qinv
