#pragma once

#include <array>
#include <complex>
#include <vector>

namespace qinv {

using Complex = std::complex<double>;

/// Level-r data at q = e^{2πi/r} for odd r >= 3. Immutable after construction.
///
/// Quantum integers use the real convention {n} = 2 sin(2πn/r), so that
/// {n} = ζ_r [n] with ζ_r = 2 sin(2π/r) and [n] = sin(2πn/r) / sin(2π/r).
class RootContext {
 public:
  explicit RootContext(int r);

  int r() const noexcept { return r_; }
  /// ζ_r = 2 sin(2π/r).
  double zeta() const noexcept { return qint_[1]; }
  /// η_r = η'_r = 2 sin(2π/r) / √r.
  double eta() const noexcept { return eta_; }
  /// I_r = {0, 2, ..., r-3}.
  const std::vector<int>& colors() const noexcept { return colors_; }
  bool is_color(int c) const noexcept { return c >= 0 && c <= r_ - 3 && c % 2 == 0; }

  /// {n} for any integer n.
  double qint(int n) const noexcept;
  /// {n}! for 0 <= n <= r; throws kDomain otherwise.
  double qfactorial(int n) const;

 private:
  int r_;
  double eta_;
  std::vector<int> colors_;
  std::vector<double> qint_;       // {0}..{r}
  std::vector<double> qfactorial_; // {0}!..{r}!
};

double quantum_integer(int n, const RootContext& ctx);
/// [n] = {n} / {1}.
double quantum_integer_normalized(int n, const RootContext& ctx);
double quantum_factorial(int n, const RootContext& ctx);

/// Triangle inequalities plus i + j + k <= 2(r - 2). Throws kDomain for
/// colors outside I_r.
bool is_admissible_triple(int i, int j, int k, const RootContext& ctx);

/// Δ(i,j,k) = ζ^{1/2} ({(i+j-k)/2}! {(i+k-j)/2}! {(j+k-i)/2}! / {(i+j+k)/2+1}!)^{1/2},
/// principal square-root branch.
Complex delta_triple(int i, int j, int k, const RootContext& ctx);

/// Colors of a tetrahedron in the order |i j k; l m n|: (i,j,k) is a face,
/// and l, m, n sit opposite i, j, k respectively.
using SixTuple = std::array<int, 6>;

/// Faces F1 = (i,j,k), F2 = (j,l,n), F3 = (i,m,n), F4 = (k,l,m) admissible.
bool is_admissible_tuple(const SixTuple& t, const RootContext& ctx);

/// Quantum 6j symbol
///   ζ^{-1} (√-1)^λ Π Δ(F_k) Σ_z (-1)^z {z+1}! / (Π_b {z - T_b}! Π_c {Q_c - z}!)
/// with λ = Σ colors. Terms with z + 1 >= r vanish ({r} = 0) and are skipped.
/// Throws kDomain for non-admissible tuples.
Complex six_j(const SixTuple& t, const RootContext& ctx);

}  // namespace qinv
