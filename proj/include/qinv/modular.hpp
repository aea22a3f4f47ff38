#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qinv/rational.hpp"
#include "qinv/seifert.hpp"

namespace qinv {

/// b* in {0,...,a-1} with b·b* ≡ 1 (mod a); 0 when a == 1.
std::int64_t mod_inverse(std::int64_t b, std::int64_t a);

/// Dedekind sum s(b, a), exact, from the sawtooth form
///   s(b,a) = Σ_{k=1}^{a-1} ((k/a)) ((kb/a)).
/// For a <= kDedekindCrossCheckLimit the result is compared against the
/// cotangent form and a mismatch above 1e-12 throws kNumericInconsistency.
Rational dedekind_sum(std::int64_t b, std::int64_t a);

/// (4a)^{-1} Σ_{l=1}^{a-1} cot(πl/a) cot(πlb/a), in floating point.
double dedekind_sum_cot(std::int64_t b, std::int64_t a);

inline constexpr std::int64_t kDedekindCrossCheckLimit = 200;

using SignVector = std::vector<int>;  // entries ±1

struct Residue {
  std::int64_t value = 0;    // in [0, modulus)
  std::int64_t modulus = 1;  // lcm of the a_j
  friend bool operator==(const Residue&, const Residue&) = default;
};

/// Solves γ + μ_j b_j* ≡ 0 (mod a_j) for all j by generalized CRT.
std::optional<Residue> solve_system(const std::vector<Fiber>& fibers, const SignVector& mu);

/// Pairwise criterion: μ_s b_s* ≡ μ_t b_t* (mod gcd(a_s, a_t)) for all s < t.
bool pairwise_compatible(const std::vector<Fiber>& fibers, const SignVector& mu);

struct CertificateEntry {
  std::int64_t gamma = 0;
  SignVector mu;
  friend bool operator==(const CertificateEntry&, const CertificateEntry&) = default;
};

/// Solution record for the congruence hypothesis. mu stores only the
/// length-n half; the double's sign vector is (μ, -μ).
struct CongruenceCertificate {
  std::int64_t gamma = 0;  // representative: the first entry of set_b
  SignVector mu;
  std::int64_t modulus = 1;  // A = lcm(a_j)
  std::vector<CertificateEntry> set_b;  // sorted by (γ, μ)
  /// A == 1: every γ solves the system but {1,...,A-1} is empty.
  bool degenerate = false;

  std::size_t cardinality() const noexcept { return set_b.size(); }
};

/// All (γ, μ) with γ in {1,...,A-1} solving the system; nullopt if none.
/// A == 1 yields a degenerate certificate with empty B.
std::optional<CongruenceCertificate> enumerate_b(const std::vector<Fiber>& fibers);

enum class HypothesisCase {
  kPairwiseCoprime,  // (a)
  kEqualOrders,      // (b)
  kPairwiseGcd,      // (c)
  kNoSolution,       // (d)
};

std::string_view to_string(HypothesisCase c) noexcept;

struct HypothesisReport {
  HypothesisCase which = HypothesisCase::kNoSolution;
  std::optional<CongruenceCertificate> certificate;
  std::vector<std::string> warnings;
};

HypothesisReport classify_hypothesis(const SeifertSymbol& symbol);

std::string to_json(const CongruenceCertificate& cert);

}  // namespace qinv
