#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qinv/modular.hpp"
#include "qinv/rt.hpp"
#include "qinv/seifert.hpp"

namespace qinv {

enum class BoundTarget { kManifold, kDouble };

/// Lower bound for |TV_{kA}| implied by the closed form of Z(D(M)):
///   bound(M)  = (kA)^{a_ε g - 1} · 2|B| k · Π a_j / 2^{2n + a_ε g - 1}
///   bound(DM) = bound(M)²
/// Throws kPrecondition for an empty certificate, n = 0, or k not odd positive.
double lower_bound(const SeifertSymbol& bounded, int k, const CongruenceCertificate& cert,
                   BoundTarget target);

struct LtvSample {
  int r = 0;
  double tv_abs = 0.0;
  /// (2π/r) log|TV_r|
  double ltv_term = 0.0;
  std::optional<double> bound;
  /// tv_abs >= bound, when a bound applies.
  std::optional<bool> bound_satisfied;
};

struct LemmaCheck {
  int k = 0;
  int r = 0;
  LtvSample manifold;
  LtvSample doubled;
  bool both_exceed_one = false;
};

struct LemmaReport {
  CongruenceCertificate certificate;
  std::vector<LemmaCheck> checks;
  /// Smallest tested k at which |TV(M)| > 1 and |TV(D(M))| > 1.
  std::optional<int> smallest_k;
};

/// For each odd k: TV_{kA}(M) via the bridge on D(M), TV_{kA}(D(M)) = |RT|²,
/// both compared with lower_bound. Needs a bounded symbol, n >= 1, a
/// non-empty certificate and odd A.
LemmaReport verify_lemma(const SeifertSymbol& bounded, std::span<const int> k_list,
                         const SumOptions& options = {});

struct ScanResult {
  std::vector<LtvSample> samples;
  /// Least-squares slope and intercept of log|TV_r| against log r.
  double growth_exponent = 0.0;
  double growth_intercept = 0.0;
  /// C = 2π · growth_exponent. The second half of the samples is checked
  /// against C log r / r, i.e. |TV_r| <= r^{growth_exponent}.
  double trend_constant = 0.0;
  bool all_positive = false;
  bool strictly_decreasing = false;
  bool tail_bounded = false;
  std::optional<CongruenceCertificate> certificate;
  std::vector<std::string> warnings;

  bool consistent_with_zero_growth() const noexcept {
    return all_positive && strictly_decreasing && tail_bounded;
  }
};

/// Samples (2π/r) log|TV_r| over an ascending list of odd r. Bounded symbols
/// go through tv_bounded, closed ones through tv_closed; lower bounds are
/// attached where A | r with r/A odd. r-points run in parallel when
/// options.threads > 1 and are reported in ascending order.
ScanResult ltv_scan(const SeifertSymbol& symbol, std::span<const int> r_list,
                    const SumOptions& options = {});

}  // namespace qinv
