#include "qinv/tv.hpp"

#include <cmath>
#include <thread>

#include "qinv/error.hpp"
#include "qinv/kernels/kernels.hpp"

namespace qinv {
namespace {

void require_closed_complex(const Triangulation& tri) {
  if (!tri.is_closed()) {
    throw Error(ErrorCode::kUnsupported,
                "state sums need a closed triangulation (" +
                    std::to_string(tri.num_boundary_faces()) + " boundary faces)");
  }
  if (tri.euler_characteristic() != 0) {
    throw Error(ErrorCode::kDomain, "closed complex has V - E + F - T = " +
                                        std::to_string(tri.euler_characteristic()) +
                                        "; not a 3-manifold");
  }
}

// Triangles to check once a given edge is colored: those whose largest edge
// class index is that edge.
std::vector<std::vector<std::array<int, 3>>> triangles_by_last_edge(const Triangulation& tri) {
  std::vector<std::vector<std::array<int, 3>>> out(tri.num_edges());
  for (const auto& tri_edges : tri.face_edges()) {
    const int last = std::max({tri_edges[0], tri_edges[1], tri_edges[2]});
    out[last].push_back(tri_edges);
  }
  return out;
}

bool admissible(int i, int j, int k, int r) {
  return i <= j + k && j <= i + k && k <= i + j && i + j + k <= 2 * (r - 2);
}

class ColoringWalker {
 public:
  ColoringWalker(const Triangulation& tri, const RootContext& ctx)
      : ctx_(ctx), checks_(triangles_by_last_edge(tri)), colors_(tri.num_edges(), 0) {}

  /// Enumerates with edge 0 fixed to `first` when first >= 0.
  void run(const std::function<void(std::span<const int>)>& visit, int first = -1) {
    visit_ = &visit;
    if (colors_.empty()) {
      visit(colors_);
      return;
    }
    if (first >= 0) {
      colors_[0] = first;
      if (consistent(0)) descend(1);
    } else {
      descend(0);
    }
  }

 private:
  bool consistent(std::size_t edge) const {
    for (const auto& t : checks_[edge]) {
      if (!admissible(colors_[t[0]], colors_[t[1]], colors_[t[2]], ctx_.r())) return false;
    }
    return true;
  }

  void descend(std::size_t edge) {
    if (edge == colors_.size()) {
      (*visit_)(colors_);
      return;
    }
    for (int c : ctx_.colors()) {
      colors_[edge] = c;
      if (consistent(edge)) descend(edge + 1);
    }
  }

  const RootContext& ctx_;
  std::vector<std::vector<std::array<int, 3>>> checks_;
  std::vector<int> colors_;
  const std::function<void(std::span<const int>)>* visit_ = nullptr;
};

// Dense tables of 6j and Δ values over color halves.
class WeightTables {
 public:
  explicit WeightTables(const RootContext& ctx) : h_((ctx.r() - 1) / 2) {
    std::size_t six = 1;
    for (int k = 0; k < 6; ++k) six *= static_cast<std::size_t>(h_);
    if (six > (std::size_t{1} << 22)) {
      throw Error(ErrorCode::kUnsupported, "level too large for the state-sum tables");
    }
    six_j_.assign(six, Complex(0.0));
    delta_.assign(static_cast<std::size_t>(h_) * h_ * h_, Complex(0.0));
    for (int i : ctx.colors()) {
      for (int j : ctx.colors()) {
        for (int k : ctx.colors()) {
          if (is_admissible_triple(i, j, k, ctx)) delta_[index3(i, j, k)] = delta_triple(i, j, k, ctx);
        }
      }
    }
    SixTuple t{};
    fill(ctx, t, 0);
  }

  Complex six_j(const SixTuple& t) const { return six_j_[index6(t)]; }
  Complex delta(int i, int j, int k) const { return delta_[index3(i, j, k)]; }

 private:
  std::size_t index3(int i, int j, int k) const {
    return (static_cast<std::size_t>(i / 2) * h_ + j / 2) * h_ + k / 2;
  }
  std::size_t index6(const SixTuple& t) const {
    std::size_t idx = 0;
    for (int c : t) idx = idx * h_ + c / 2;
    return idx;
  }
  void fill(const RootContext& ctx, SixTuple& t, int pos) {
    if (pos == 6) {
      if (is_admissible_tuple(t, ctx)) six_j_[index6(t)] = qinv::six_j(t, ctx);
      return;
    }
    for (int c : ctx.colors()) {
      t[pos] = c;
      fill(ctx, t, pos + 1);
    }
  }

  int h_;
  std::vector<Complex> six_j_;
  std::vector<Complex> delta_;
};

}  // namespace

TvValue tv_closed(const SeifertSymbol& symbol, int r, const SumOptions& options) {
  const InvariantValue rt = rt_closed(symbol, r, options);
  TvValue out;
  out.value = std::norm(rt.value);
  out.term_magnitude_sum = rt.term_magnitude_sum * rt.term_magnitude_sum;
  out.term_count = rt.term_count;
  out.method = Method::kBridge;
  out.r = r;
  return out;
}

TvValue tv_bounded(const SeifertSymbol& symbol, int r, const SumOptions& options, Method route) {
  if (!symbol.has_boundary) {
    throw Error(ErrorCode::kDomain, "tv_bounded needs a symbol with boundary");
  }
  const InvariantValue rt = rt_double(symbol, r, route, options);
  const double re = rt.value.real();
  const double im = rt.value.imag();
  if (std::abs(im) >= 1e-9 * (1.0 + std::abs(re))) {
    throw Error(ErrorCode::kNumericInconsistency,
                "RT_r(D(M)) has imaginary residue " + std::to_string(im) + " against real part " +
                    std::to_string(re));
  }
  TvValue out;
  out.value = re;
  out.imaginary_residue = im;
  out.term_magnitude_sum = rt.term_magnitude_sum;
  out.term_count = rt.term_count;
  out.method = Method::kBridge;
  out.r = r;
  return out;
}

void for_each_admissible_coloring(const Triangulation& tri, const RootContext& ctx,
                                  const std::function<void(std::span<const int>)>& visit) {
  require_closed_complex(tri);
  ColoringWalker(tri, ctx).run(visit);
}

std::vector<Coloring> enumerate_admissible_colorings(const Triangulation& tri,
                                                     const RootContext& ctx) {
  std::vector<Coloring> out;
  for_each_admissible_coloring(tri, ctx, [&](std::span<const int> c) {
    out.emplace_back(c.begin(), c.end());
  });
  return out;
}

TvValue tv_statesum(const Triangulation& tri, const RootContext& ctx,
                    const StateSumOptions& options) {
  require_closed_complex(tri);
  const WeightTables tables(ctx);
  const int tets = tri.num_tetrahedra();

  struct Partial {
    kernels::ComplexAccumulator sum;
    kernels::CompensatedSum magnitude;
    std::uint64_t count = 0;
  };

  auto accumulate = [&](Partial& part) {
    return [&](std::span<const int> c) {
      Complex w(1.0);
      for (int color : c) {
        // (-1)^c [c+1] with c even
        w *= ctx.qint(color + 1) / ctx.zeta();
      }
      for (int t = 0; t < tets; ++t) {
        const auto& e = tri.tet_edges(t);
        // |i j k; l m n| = |e01 e02 e12; e23 e13 e03|
        w *= tables.six_j({c[e[0]], c[e[1]], c[e[3]], c[e[5]], c[e[4]], c[e[2]]});
      }
      if (options.faces == FaceWeighting::kDividedByDelta) {
        for (const auto& f : tri.face_edges()) w /= tables.delta(c[f[0]], c[f[1]], c[f[2]]);
      }
      part.sum.re.add(w.real());
      part.sum.im.add(w.imag());
      part.magnitude.add(std::abs(w));
      ++part.count;
    };
  };

  Partial total;
  if (tri.num_edges() == 0 || options.threads <= 1) {
    ColoringWalker(tri, ctx).run(accumulate(total));
  } else {
    const auto& colors = ctx.colors();
    std::vector<Partial> parts(colors.size());
    const unsigned threads = std::min<unsigned>(options.threads, static_cast<unsigned>(colors.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t p = t; p < colors.size(); p += threads) {
          ColoringWalker(tri, ctx).run(accumulate(parts[p]), colors[p]);
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const Partial& p : parts) {
      total.sum.add(p.sum);
      total.magnitude.add(p.magnitude);
      total.count += p.count;
    }
  }

  const double scale = std::pow(ctx.eta(), 2 * tri.num_vertices());
  TvValue out;
  out.value = scale * total.sum.re.value();
  out.imaginary_residue = scale * total.sum.im.value();
  out.term_magnitude_sum = scale * total.magnitude.value();
  out.term_count = total.count;
  out.method = Method::kStateSum;
  out.r = ctx.r();
  if (options.faces == FaceWeighting::kAbsorbed &&
      std::abs(out.imaginary_residue) >= 1e-9 * std::max(out.term_magnitude_sum, 1e-300)) {
    throw Error(ErrorCode::kNumericInconsistency,
                "state sum has imaginary residue " + std::to_string(out.imaginary_residue));
  }
  return out;
}

}  // namespace qinv
