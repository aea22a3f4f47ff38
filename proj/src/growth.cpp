#include "qinv/growth.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "qinv/error.hpp"
#include "qinv/tv.hpp"

namespace qinv {
namespace {

LtvSample make_sample(int r, double tv) {
  LtvSample s;
  s.r = r;
  s.tv_abs = std::abs(tv);
  s.ltv_term = s.tv_abs > 0.0 ? 2.0 * std::numbers::pi / r * std::log(s.tv_abs)
                              : -std::numeric_limits<double>::infinity();
  return s;
}

void attach_bound(LtvSample& s, double bound) {
  s.bound = bound;
  s.bound_satisfied = s.tv_abs >= bound;
}

double tv_of(const SeifertSymbol& symbol, int r, const SumOptions& options) {
  return symbol.has_boundary ? tv_bounded(symbol, r, options).value
                             : tv_closed(symbol, r, options).value;
}

}  // namespace

double lower_bound(const SeifertSymbol& bounded, int k, const CongruenceCertificate& cert,
                   BoundTarget target) {
  require_finite_fibers(bounded);
  if (bounded.fibers.empty()) {
    throw Error(ErrorCode::kPrecondition,
                "degenerate symbol: n = 0 has no congruence system, the bound does not apply");
  }
  if (cert.cardinality() == 0) {
    throw Error(ErrorCode::kPrecondition, "empty certificate: the congruence hypothesis fails");
  }
  if (k < 1 || k % 2 == 0) throw Error(ErrorCode::kPrecondition, "k must be an odd positive integer");

  const double n = static_cast<double>(bounded.n());
  const double weight = static_cast<double>(bounded.a_eps() * bounded.genus);
  const double level = static_cast<double>(k) * static_cast<double>(cert.modulus);
  const double bound = std::pow(level, weight - 1.0) * 2.0 * static_cast<double>(cert.cardinality()) *
                       k * static_cast<double>(fiber_product(bounded.fibers)) /
                       std::pow(2.0, 2.0 * n + weight - 1.0);
  return target == BoundTarget::kDouble ? bound * bound : bound;
}

LemmaReport verify_lemma(const SeifertSymbol& bounded, std::span<const int> k_list,
                         const SumOptions& options) {
  require_finite_fibers(bounded);
  if (!bounded.has_boundary) throw Error(ErrorCode::kDomain, "verify_lemma needs a bounded symbol");
  if (bounded.fibers.empty()) {
    throw Error(ErrorCode::kPrecondition,
                "degenerate symbol: n = 0, the congruence hypothesis is vacuous");
  }
  auto cert = enumerate_b(bounded.fibers);
  if (!cert || cert->cardinality() == 0) {
    throw Error(ErrorCode::kPrecondition,
                "hypothesis fails: no (gamma, mu) solves gamma + mu_j b_j* = 0 (mod a_j)");
  }
  if (cert->modulus % 2 == 0) {
    throw Error(ErrorCode::kPrecondition,
                "A = " + std::to_string(cert->modulus) + " is even, so r = kA is never odd");
  }
  const SeifertSymbol doubled = double_symbol(bounded);
  LemmaReport report;
  report.certificate = *cert;
  for (const int k : k_list) {
    LemmaCheck check;
    check.k = k;
    check.r = static_cast<int>(k * cert->modulus);
    check.manifold = make_sample(check.r, tv_bounded(bounded, check.r, options).value);
    check.doubled = make_sample(check.r, tv_closed(doubled, check.r, options).value);
    attach_bound(check.manifold, lower_bound(bounded, k, *cert, BoundTarget::kManifold));
    attach_bound(check.doubled, lower_bound(bounded, k, *cert, BoundTarget::kDouble));
    check.both_exceed_one = check.manifold.tv_abs > 1.0 && check.doubled.tv_abs > 1.0;
    if (check.both_exceed_one && (!report.smallest_k || k < *report.smallest_k)) {
      report.smallest_k = k;
    }
    report.checks.push_back(check);
  }
  return report;
}

ScanResult ltv_scan(const SeifertSymbol& symbol, std::span<const int> r_list,
                    const SumOptions& options) {
  require_finite_fibers(symbol);
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    if (r_list[i] < 3 || r_list[i] % 2 == 0) {
      throw Error(ErrorCode::kPrecondition, "scan levels must be odd and >= 3");
    }
    if (i > 0 && r_list[i] <= r_list[i - 1]) {
      throw Error(ErrorCode::kPrecondition, "scan levels must be strictly ascending");
    }
  }
  ScanResult result;
  if (symbol.has_boundary && !symbol.fibers.empty()) {
    result.certificate = enumerate_b(symbol.fibers);
    if (!result.certificate) result.warnings.push_back("congruence hypothesis fails (empty B)");
  }

  // One worker per r-point; each inner sum stays single-threaded.
  std::vector<double> values(r_list.size());
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < r_list.size(); ++i) values[i] = tv_of(symbol, r_list[i], options);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < r_list.size(); i += threads) {
            values[i] = tv_of(symbol, r_list[i], SumOptions{1});
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (std::size_t i = 0; i < r_list.size(); ++i) {
    LtvSample s = make_sample(r_list[i], values[i]);
    const auto& cert = result.certificate;
    if (cert && cert->cardinality() > 0 && s.r % cert->modulus == 0 &&
        (s.r / cert->modulus) % 2 == 1) {
      attach_bound(s, lower_bound(symbol, static_cast<int>(s.r / cert->modulus), *cert,
                                  BoundTarget::kManifold));
    }
    result.samples.push_back(s);
  }

  const auto& samples = result.samples;
  const std::size_t count = samples.size();
  result.all_positive = count > 0;
  result.strictly_decreasing = count > 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!(samples[i].ltv_term > 0.0)) result.all_positive = false;
    if (i > 0 && !(samples[i].ltv_term < samples[i - 1].ltv_term)) result.strictly_decreasing = false;
  }

  if (count >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : samples) {
      const double x = std::log(static_cast<double>(s.r));
      const double y = std::log(s.tv_abs);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = static_cast<double>(count);
    result.growth_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    result.growth_intercept = (sy - result.growth_exponent * sx) / m;

    // ltv_term <= C log r / r  <=>  |TV_r| <= r^{C/2π}; C comes from the fitted exponent.
    const std::size_t head = (count + 1) / 2;
    const double c = 2.0 * std::numbers::pi * result.growth_exponent;
    result.trend_constant = c;
    result.tail_bounded = true;
    for (std::size_t i = head; i < count; ++i) {
      const double r = static_cast<double>(samples[i].r);
      if (samples[i].ltv_term > c * std::log(r) / r) result.tail_bounded = false;
    }
  }
  return result;
}

}  // namespace qinv
