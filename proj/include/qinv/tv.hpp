#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qinv/quantum.hpp"
#include "qinv/rt.hpp"
#include "qinv/seifert.hpp"
#include "qinv/triangulation.hpp"

namespace qinv {

struct TvValue {
  double value = 0.0;
  double imaginary_residue = 0.0;
  double term_magnitude_sum = 0.0;
  std::uint64_t term_count = 0;
  Method method = Method::kBridge;
  int r = 0;
};

/// TV_r(M) = |RT_r(M)|² for a closed symbol.
TvValue tv_closed(const SeifertSymbol& symbol, int r, const SumOptions& options = {});

/// TV_r(M) = η^{-χ(M)} RT_r(D(M)) with χ(M) = 0, for a bounded symbol. Returns
/// the real part and throws kNumericInconsistency if |Im| >= 1e-9 (1 + |Re|).
TvValue tv_bounded(const SeifertSymbol& symbol, int r, const SumOptions& options = {},
                   Method route = Method::kDirect);

/// Edge-class colors, indexed by edge class.
using Coloring = std::vector<int>;

/// Visits every admissible coloring of a closed triangulation once, in
/// lexicographic order of edge classes (edge 0 varies slowest). Backtracks
/// over edges and prunes as soon as a tetrahedron face has all three colors.
void for_each_admissible_coloring(const Triangulation& tri, const RootContext& ctx,
                                  const std::function<void(std::span<const int>)>& visit);

std::vector<Coloring> enumerate_admissible_colorings(const Triangulation& tri,
                                                     const RootContext& ctx);

enum class FaceWeighting {
  /// Face Δ's live only inside the 6j symbols (each face appears in two).
  kAbsorbed,
  /// Additionally divide by Δ(e1,e2,e3) per face. Kept as a diagnostic; it
  /// does not give a topological invariant with these 6j symbols.
  kDividedByDelta,
};

struct StateSumOptions {
  FaceWeighting faces = FaceWeighting::kAbsorbed;
  /// Work is split by the color of edge 0; partial sums are reduced in color order.
  unsigned threads = 1;
};

/// η^{2|V|} Σ_c Π_e (-1)^{c(e)} [c(e)+1] Π_T |T|_c (/ Π_f Δ_f).
/// Closed triangulations only. With kAbsorbed, |Im| >= 1e-9 · term_magnitude_sum
/// throws kNumericInconsistency.
TvValue tv_statesum(const Triangulation& tri, const RootContext& ctx,
                    const StateSumOptions& options = {});

}  // namespace qinv
