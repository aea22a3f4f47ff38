#pragma once
// Slow, straightforward reference computations used only by the tests. They
// deliberately avoid the library's tables, kernels and exact phase reduction.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include "qinv/seifert.hpp"
#include "qinv/triangulation.hpp"

namespace oracle {

using cd = std::complex<double>;
using std::int64_t;
inline constexpr double kPi = std::numbers::pi;

inline int64_t inverse(int64_t b, int64_t a) {
  if (a == 1) return 0;
  for (int64_t x = 0; x < a; ++x) {
    if ((((b % a + a) % a) * x) % a == 1) return x;
  }
  return -1;
}

inline int64_t lcm_of(const std::vector<qinv::Fiber>& fibers) {
  int64_t l = 1;
  for (const auto& f : fibers) l = std::lcm(l, f.a);
  return l;
}

/// Smallest γ in [0, A) with γ + μ_j b_j* ≡ 0 (mod a_j), by trial.
inline std::optional<int64_t> solve(const std::vector<qinv::Fiber>& fibers, const std::vector<int>& mu) {
  const int64_t a_lcm = lcm_of(fibers);
  for (int64_t g = 0; g < a_lcm; ++g) {
    bool ok = true;
    for (std::size_t j = 0; j < fibers.size() && ok; ++j) {
      const int64_t a = fibers[j].a;
      ok = ((g + mu[j] * inverse(fibers[j].b, a)) % a + a) % a == 0;
    }
    if (ok) return g;
  }
  return std::nullopt;
}

struct Entry {
  int64_t gamma;
  std::vector<int> mu;
};

/// All (γ, μ), γ in 1..A-1, sorted by γ then lexicographically by μ.
inline std::vector<Entry> set_b(const std::vector<qinv::Fiber>& fibers) {
  const std::size_t n = fibers.size();
  std::vector<Entry> out;
  const int64_t a_lcm = lcm_of(fibers);
  for (int64_t g = 1; g < a_lcm; ++g) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<int> mu(n);
      for (std::size_t j = 0; j < n; ++j) mu[j] = (mask >> (n - 1 - j)) & 1 ? -1 : 1;
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) {
        const int64_t a = fibers[j].a;
        ok = ((g + mu[j] * inverse(fibers[j].b, a)) % a + a) % a == 0;
      }
      if (ok) out.push_back({g, mu});
    }
  }
  std::sort(out.begin(), out.end(), [](const Entry& x, const Entry& y) {
    return x.gamma != y.gamma ? x.gamma < y.gamma : x.mu < y.mu;
  });
  return out;
}

/// Dedekind sum via cotangents in long double.
inline long double dedekind_cot(int64_t b, int64_t a) {
  long double s = 0;
  for (int64_t l = 1; l < a; ++l) {
    const long double x = std::numbers::pi_v<long double> * l / a;
    const long double y = std::numbers::pi_v<long double> * ((l * b) % a) / a;
    s += 1.0L / (std::tan(x) * std::tan(y));
  }
  return s / (4 * a);
}

/// (r/2)^{g-1} Σ sin^{2-2g}(jπ/r).
inline double verlinde(int g, int r) {
  long double s = 0;
  for (int j = 1; j < r; ++j) s += std::pow(std::sin(std::numbers::pi_v<long double> * j / r), 2 - 2 * g);
  return static_cast<double>(std::pow(0.5L * r, g - 1) * s);
}

/// The triple sum Z for a closed symbol, with the m-sums done per fiber and
/// every phase evaluated as std::polar of a double angle.
inline cd z_naive(const qinv::SeifertSymbol& s, int r) {
  const int n = static_cast<int>(s.fibers.size());
  const int weight = s.a_eps() * static_cast<int>(s.genus);
  double e = 0;
  for (const auto& f : s.fibers) e -= static_cast<double>(f.b) / f.a;
  cd total = 0;
  for (int g = 1; g < r; ++g) {
    const double w = ((weight * g) % 2 ? -1.0 : 1.0) * std::pow(std::sin(kPi * g / r), 2 - n - weight);
    const cd gauss = std::polar(1.0, kPi * e * g * g / (2.0 * r));
    for (int mask = 0; mask < (1 << n); ++mask) {
      cd term = w * gauss;
      for (int j = 0; j < n; ++j) {
        const int mu = (mask >> (n - 1 - j)) & 1 ? -1 : 1;
        const int64_t a = s.fibers[j].a;
        const int64_t bs = inverse(s.fibers[j].b, a);
        cd inner = 0;
        for (int64_t m = 0; m < a; ++m) {
          const double num = static_cast<double>(m * (g + mu * bs) + static_cast<int64_t>(r) * m * m * bs);
          inner += std::polar(1.0, -2.0 * kPi * std::fmod(num, static_cast<double>(a)) / a);
        }
        term *= static_cast<double>(mu) * std::polar(1.0, -kPi * g * mu / (a * r)) * inner;
      }
      total += term;
    }
  }
  return total;
}

/// [n] = (q^n - q^-n)/(q - q^-1) at q = e^{2πi/r}, as a complex number.
inline cd bracket(int k, int r) {
  const cd q = std::polar(1.0, 2 * kPi / r);
  return (std::pow(q, k) - std::pow(q, -k)) / (q - 1.0 / q);
}

inline cd bracket_factorial(int k, int r) {
  cd p = 1;
  for (int i = 1; i <= k; ++i) p *= bracket(i, r);
  return p;
}

inline cd delta_bracket(int a, int b, int c, int r) {
  const cd rad = bracket_factorial((a + b - c) / 2, r) * bracket_factorial((b + c - a) / 2, r) *
                 bracket_factorial((c + a - b) / 2, r) / bracket_factorial((a + b + c) / 2 + 1, r);
  return std::sqrt(cd(rad.real(), 0.0));
}

/// 6j symbol written with [n] in place of the real quantum integers.
inline cd six_j_bracket(int i, int j, int k, int l, int m, int nn, int r) {
  const int t[4] = {(i + j + k) / 2, (j + l + nn) / 2, (i + m + nn) / 2, (k + l + m) / 2};
  const int q[3] = {(i + j + l + m) / 2, (i + k + l + nn) / 2, (j + k + m + nn) / 2};
  const int lo = std::max({t[0], t[1], t[2], t[3]});
  const int hi = std::min({q[0], q[1], q[2]});
  cd sum = 0;
  for (int z = lo; z <= hi; ++z) {
    if (z + 1 >= r) continue;  // [r] = 0 in the numerator
    cd den = 1;
    for (int x : t) den *= bracket_factorial(z - x, r);
    for (int x : q) den *= bracket_factorial(x - z, r);
    sum += (z % 2 ? -1.0 : 1.0) * bracket_factorial(z + 1, r) / den;
  }
  const int lambda = i + j + k + l + m + nn;
  const double phase = (lambda / 2) % 2 ? -1.0 : 1.0;
  return phase * delta_bracket(i, j, k, r) * delta_bracket(j, l, nn, r) * delta_bracket(i, m, nn, r) *
         delta_bracket(k, l, m, r) * sum;
}

inline bool admissible(int a, int b, int c, int r) {
  return a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * (r - 2);
}

/// Counts colorings over {0,2,...,r-3}^E whose every tetrahedron face is
/// admissible, by exhaustive enumeration.
inline std::int64_t count_colorings(const qinv::Triangulation& tri, int r) {
  const int edges = tri.num_edges();
  const int h = (r - 1) / 2;
  std::vector<int> c(edges, 0);
  std::int64_t count = 0;
  std::int64_t total = 1;
  for (int e = 0; e < edges; ++e) total *= h;
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t x = code;
    for (int e = 0; e < edges; ++e) {
      c[e] = 2 * static_cast<int>(x % h);
      x /= h;
    }
    bool ok = true;
    for (int t = 0; t < tri.num_tetrahedra() && ok; ++t) {
      const auto& te = tri.tet_edges(t);
      for (int skip = 0; skip < 4 && ok; ++skip) {
        int v[3], k = 0;
        for (int u = 0; u < 4; ++u) if (u != skip) v[k++] = u;
        const auto edge = [&](int p, int q) {
          for (int le = 0; le < 6; ++le) {
            const auto& pr = qinv::kLocalEdges[le];
            if ((pr[0] == p && pr[1] == q) || (pr[0] == q && pr[1] == p)) return c[te[le]];
          }
          return -1;
        };
        ok = admissible(edge(v[0], v[1]), edge(v[0], v[2]), edge(v[1], v[2]), r);
      }
    }
    if (ok) ++count;
  }
  return count;
}

/// |a - b| <= tol · max(|a|, |b|).
inline bool rel_close(cd a, cd b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

/// Relative for large values, absolute below 1.
inline bool near(cd a, cd b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace oracle
