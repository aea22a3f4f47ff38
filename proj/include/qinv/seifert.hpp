#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qinv/rational.hpp"

namespace qinv {

enum class Base { kOrientable, kNonOrientable };

/// a_ε from the Seifert formula: 2 for an orientable base, 1 otherwise.
constexpr int base_weight(Base base) noexcept { return base == Base::kOrientable ? 2 : 1; }

struct Fiber {
  std::int64_t a = 1;
  std::int64_t b = 0;

  friend bool operator==(const Fiber&, const Fiber&) = default;
  friend auto operator<=>(const Fiber&, const Fiber&) = default;
};

/// Seifert invariant (ε, g; (a_1,b_1),...,(a_n,b_n)) plus a boundary marker.
/// Fibers are kept verbatim; only normalize() rewrites them.
struct SeifertSymbol {
  Base base = Base::kOrientable;
  std::int64_t genus = 1;
  std::vector<Fiber> fibers;
  bool has_boundary = false;

  int a_eps() const noexcept { return base_weight(base); }
  std::size_t n() const noexcept { return fibers.size(); }

  friend bool operator==(const SeifertSymbol&, const SeifertSymbol&) = default;
};

/// Throws ErrorCode::kDomain for genus <= 0 and kInvalidFiber for non-coprime
/// or negative-a pairs. (0, ±1) pairs pass.
void validate(const SeifertSymbol& symbol);

/// validate() plus a_j >= 1 for every fiber, as the invariant formulas need.
void require_finite_fibers(const SeifertSymbol& symbol);

/// e(M) = -Σ b_j/a_j.
Rational euler_number(const SeifertSymbol& symbol);

/// 2 - 2g - Σ (1 - 1/a_j), applied for both base types.
Rational orbifold_euler_characteristic(const SeifertSymbol& symbol);

/// D(M) = (ε, 2g; fibers, fibers with b negated). Input must have boundary.
SeifertSymbol double_symbol(const SeifertSymbol& symbol);

SeifertSymbol reverse_orientation(const SeifertSymbol& symbol);

/// Canonical form under the three Seifert moves:
///   - (0,-1) becomes (0,1);
///   - every b_j with a_j >= 1 is reduced into [0, a_j);
///   - (1,0) pairs are dropped and the remaining fibers sorted;
///   - for closed symbols the net shift -Σk_j is put back on the last fiber
///     with a_j >= 1 (or a trailing (1, K) when none is left), so e(M) is kept.
SeifertSymbol normalize(const SeifertSymbol& symbol);

/// lcm of all a_j (1 for an empty list).
std::int64_t fiber_lcm(const std::vector<Fiber>& fibers);

/// Π a_j.
std::int64_t fiber_product(const std::vector<Fiber>& fibers);

/// Structured text form: {"epsilon":"o","genus":1,"fibers":[[3,1]],"boundary":true}.
std::string to_json(const SeifertSymbol& symbol);
SeifertSymbol symbol_from_json(std::string_view text);

/// Human form, e.g. "(o,1;(3,1),(5,1);bdry)".
std::string to_string(const SeifertSymbol& symbol);

}  // namespace qinv
