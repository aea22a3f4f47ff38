#pragma once

#include <cstdint>
#include <string_view>

#include "qinv/quantum.hpp"
#include "qinv/seifert.hpp"

namespace qinv {

enum class Method { kDirect, kSimplified, kBridge, kStateSum };

std::string_view to_string(Method m) noexcept;

/// A computed invariant together with the data needed to judge cancellation.
struct InvariantValue {
  Complex value;
  /// Σ |summand| over every term that went into value (after prefactors).
  double term_magnitude_sum = 0.0;
  std::uint64_t term_count = 0;
  Method method = Method::kDirect;
  int r = 0;
  /// Set when the formula degenerates (no exceptional fibers).
  bool degenerate = false;

  /// |value| < threshold · term_magnitude_sum.
  bool vanishes(double threshold = 1e-8) const noexcept;
};

struct SumOptions {
  /// Worker threads for the γ-partitioned sum. Results do not depend on it:
  /// every γ keeps its own accumulator and those are reduced in γ order.
  unsigned threads = 1;
};

/// The triple sum Z_{(ε,r)} over (γ, μ, m) ∈ {1..r-1} × {±1}^n × Π Z/a_j.
/// Term count is (r-1)·2^n·Π a_j.
InvariantValue z_direct(const SeifertSymbol& symbol, int r, const SumOptions& options = {});

/// RT_r(M, e^{iπ/r}) of a closed symbol from Hansen's formula with Z from
/// z_direct. term_magnitude_sum is scaled by |prefactor|.
InvariantValue rt_closed(const SeifertSymbol& symbol, int r, const SumOptions& options = {});

/// Z_{(ε,r)}(D(M)) in closed form from the congruence solution set B:
///   (-1)^n (Π a_j)² Σ_{(γ,μ)∈B} Σ_{p=0}^{k-1} sin^{-(2n+2a_ε g-2)}(π(pA+γ)/r),
/// evaluated as the two lifts pA+γ and pA+A-γ of one representative per
/// {(γ,μ),(A-γ,-μ)} pair. Needs a bounded symbol, A | r, r odd and every
/// a_j >= 3. Empty B gives an exact 0; n = 0 gives 0 flagged degenerate.
InvariantValue z_double_simplified(const SeifertSymbol& bounded, int r);

/// RT_r(D(M)) for a bounded symbol, with Z from either route.
InvariantValue rt_double(const SeifertSymbol& bounded, int r, Method method,
                         const SumOptions& options = {});

/// (r/2)^{g-1} Σ_{j=1}^{r-1} sin^{2-2g}(jπ/r); exactly r - 1 for g = 1.
double verlinde_dimension(std::int64_t genus, int r);

/// sin(πt/r), folded so that values at t and r - t coincide.
double sin_pi_ratio(std::int64_t t, std::int64_t r) noexcept;

}  // namespace qinv
