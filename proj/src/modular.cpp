#include "qinv/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "json.hpp"

#include "qinv/error.hpp"

namespace qinv {
namespace {

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

// Returns g = gcd(a, b) and x with a·x ≡ g (mod b).
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  x = old_s;
  return old_r;
}

void check_fibers(const std::vector<Fiber>& fibers) {
  for (const Fiber& f : fibers) {
    if (f.a < 1) throw Error(ErrorCode::kInvalidFiber, "congruence data needs a_j >= 1");
    if (std::gcd(f.a, f.b) != 1) throw Error(ErrorCode::kInvalidFiber, "fiber pair is not coprime");
  }
}

}  // namespace

std::int64_t mod_inverse(std::int64_t b, std::int64_t a) {
  if (a < 1) throw Error(ErrorCode::kDomain, "modulus must be >= 1");
  if (a == 1) return 0;
  const std::int64_t br = floor_mod(b, a);
  std::int64_t x = 0;
  if (ext_gcd(br, a, x) != 1) {
    throw Error(ErrorCode::kNotInvertible,
                std::to_string(b) + " is not invertible modulo " + std::to_string(a));
  }
  return floor_mod(x, a);
}

double dedekind_sum_cot(std::int64_t b, std::int64_t a) {
  double s = 0.0;
  for (std::int64_t l = 1; l < a; ++l) {
    const double x = std::numbers::pi * static_cast<double>(l) / static_cast<double>(a);
    const double y = std::numbers::pi * static_cast<double>(floor_mod(l * b, a)) / static_cast<double>(a);
    s += (std::cos(x) / std::sin(x)) * (std::cos(y) / std::sin(y));
  }
  return s / (4.0 * static_cast<double>(a));
}

Rational dedekind_sum(std::int64_t b, std::int64_t a) {
  if (a < 1) throw Error(ErrorCode::kDomain, "Dedekind sum needs a >= 1");
  if (std::gcd(a, b) != 1) {
    throw Error(ErrorCode::kNotInvertible, "Dedekind sum needs gcd(b, a) = 1");
  }
  // ((k/a))((kb/a)) = (2k - a)(2ρ - a) / (4a²) with ρ = kb mod a, never 0.
  __int128 acc = 0;
  const std::int64_t br = floor_mod(b, a);
  for (std::int64_t k = 1; k < a; ++k) {
    const std::int64_t rho = static_cast<std::int64_t>(static_cast<__int128>(k) * br % a);
    acc += static_cast<__int128>(2 * k - a) * (2 * rho - a);
  }
  const Rational s = Rational::from_wide(acc, static_cast<__int128>(4) * a * a);
  if (a <= kDedekindCrossCheckLimit) {
    const double cot = dedekind_sum_cot(b, a);
    if (std::abs(cot - s.to_double()) > 1e-12) {
      throw Error(ErrorCode::kNumericInconsistency,
                  "Dedekind sum cross-check failed for s(" + std::to_string(b) + "," +
                      std::to_string(a) + ")");
    }
  }
  return s;
}

std::optional<Residue> solve_system(const std::vector<Fiber>& fibers, const SignVector& mu) {
  check_fibers(fibers);
  if (mu.size() != fibers.size()) {
    throw Error(ErrorCode::kPrecondition, "sign vector length differs from fiber count");
  }
  Residue acc{0, 1};
  for (std::size_t j = 0; j < fibers.size(); ++j) {
    const std::int64_t a = fibers[j].a;
    const std::int64_t target = floor_mod(-mu[j] * mod_inverse(fibers[j].b, a), a);
    // merge x ≡ acc.value (mod acc.modulus) with x ≡ target (mod a)
    std::int64_t inv = 0;
    const std::int64_t g = ext_gcd(acc.modulus, a, inv);
    if ((target - acc.value) % g != 0) return std::nullopt;
    const std::int64_t step = a / g;
    const __int128 t = static_cast<__int128>((target - acc.value) / g) * floor_mod(inv, step) % step;
    const std::int64_t l = acc.modulus / g * a;
    const __int128 x = acc.value + static_cast<__int128>(acc.modulus) * t;
    acc = {static_cast<std::int64_t>(((x % l) + l) % l), l};
  }
  return acc;
}

bool pairwise_compatible(const std::vector<Fiber>& fibers, const SignVector& mu) {
  check_fibers(fibers);
  std::vector<std::int64_t> w(fibers.size());
  for (std::size_t j = 0; j < fibers.size(); ++j) w[j] = mu[j] * mod_inverse(fibers[j].b, fibers[j].a);
  for (std::size_t s = 0; s < fibers.size(); ++s) {
    for (std::size_t t = s + 1; t < fibers.size(); ++t) {
      const std::int64_t g = std::gcd(fibers[s].a, fibers[t].a);
      if (floor_mod(w[s] - w[t], g) != 0) return false;
    }
  }
  return true;
}

std::optional<CongruenceCertificate> enumerate_b(const std::vector<Fiber>& fibers) {
  check_fibers(fibers);
  const std::size_t n = fibers.size();
  if (n > 30) throw Error(ErrorCode::kUnsupported, "more than 30 fibers");
  CongruenceCertificate cert;
  cert.modulus = fiber_lcm(fibers);
  if (cert.modulus == 1) {
    cert.degenerate = true;
    cert.mu.assign(n, 1);
    return cert;
  }
  SignVector mu(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t j = 0; j < n; ++j) mu[j] = (mask >> (n - 1 - j)) & 1 ? -1 : 1;
    if (auto res = solve_system(fibers, mu); res && res->value != 0) {
      cert.set_b.push_back({res->value, mu});
    }
  }
  if (cert.set_b.empty()) return std::nullopt;
  std::sort(cert.set_b.begin(), cert.set_b.end(), [](const auto& x, const auto& y) {
    return x.gamma != y.gamma ? x.gamma < y.gamma : x.mu < y.mu;
  });
  cert.gamma = cert.set_b.front().gamma;
  cert.mu = cert.set_b.front().mu;
  return cert;
}

std::string_view to_string(HypothesisCase c) noexcept {
  switch (c) {
    case HypothesisCase::kPairwiseCoprime: return "a";
    case HypothesisCase::kEqualOrders: return "b";
    case HypothesisCase::kPairwiseGcd: return "c";
    case HypothesisCase::kNoSolution: return "d";
  }
  return "?";
}

HypothesisReport classify_hypothesis(const SeifertSymbol& symbol) {
  require_finite_fibers(symbol);
  const auto& fibers = symbol.fibers;
  HypothesisReport report;
  report.certificate = enumerate_b(fibers);

  bool coprime = true;
  for (std::size_t s = 0; s < fibers.size(); ++s) {
    for (std::size_t t = s + 1; t < fibers.size(); ++t) {
      if (std::gcd(fibers[s].a, fibers[t].a) != 1) coprime = false;
    }
  }
  const bool equal = !fibers.empty() && std::all_of(fibers.begin(), fibers.end(), [&](const Fiber& f) {
    return f.a == fibers.front().a;
  });

  if (!report.certificate) {
    report.which = HypothesisCase::kNoSolution;
  } else if (coprime) {
    report.which = HypothesisCase::kPairwiseCoprime;
  } else if (equal) {
    report.which = HypothesisCase::kEqualOrders;
  } else {
    report.which = HypothesisCase::kPairwiseGcd;
  }

  if (fibers.empty()) report.warnings.push_back("degenerate: no exceptional fibers (n = 0)");
  if (report.certificate && report.certificate->degenerate && !fibers.empty()) {
    report.warnings.push_back("degenerate: A = 1, every gamma solves the system");
  }
  const std::int64_t modulus = fiber_lcm(fibers);
  if (modulus % 2 == 0) {
    report.warnings.push_back("A = " + std::to_string(modulus) +
                              " is even: r = kA cannot be odd (odd-r conflict)");
  }
  return report;
}

std::string to_json(const CongruenceCertificate& cert) {
  nlohmann::ordered_json j;
  j["gamma"] = cert.gamma;
  j["mu"] = cert.mu;
  j["modulus"] = cert.modulus;
  j["cardinality"] = cert.cardinality();
  j["degenerate"] = cert.degenerate;
  auto set = nlohmann::ordered_json::array();
  for (const auto& e : cert.set_b) set.push_back({e.gamma, e.mu});
  j["set_B"] = set;
  return j.dump();
}

}  // namespace qinv
