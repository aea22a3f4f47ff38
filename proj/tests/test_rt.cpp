#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qinv/error.hpp"
#include "qinv/rt.hpp"

using qinv::Base;
using qinv::ErrorCode;
using qinv::Method;
using qinv::SeifertSymbol;

namespace {

SeifertSymbol closed(Base b, std::int64_t g, std::vector<qinv::Fiber> f) { return {b, g, std::move(f), false}; }
SeifertSymbol bounded(Base b, std::int64_t g, std::vector<qinv::Fiber> f) { return {b, g, std::move(f), true}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const qinv::Error& e) {
    return e.code();
  }
  FAIL("expected qinv::Error");
  return ErrorCode::kParse;
}

// Applies the Seifert moves: b_j += k_j a_j with Σ k_j = 0, plus a (1,0) pair.
SeifertSymbol shuffle_moves(SeifertSymbol s, std::mt19937& rng) {
  std::int64_t total = 0;
  for (std::size_t j = 0; j + 1 < s.fibers.size(); ++j) {
    const std::int64_t kj = static_cast<std::int64_t>(rng() % 5) - 2;
    s.fibers[j].b += kj * s.fibers[j].a;
    total += kj;
  }
  if (!s.fibers.empty()) s.fibers.back().b -= total * s.fibers.back().a;
  s.fibers.insert(s.fibers.begin() + static_cast<std::ptrdiff_t>(rng() % (s.fibers.size() + 1)), {1, 0});
  return s;
}

const std::vector<SeifertSymbol>& regression_set() {
  static const std::vector<SeifertSymbol> set{
      closed(Base::kOrientable, 1, {{2, 1}, {3, 1}}),
      closed(Base::kOrientable, 2, {{3, 1}, {3, -1}}),
      closed(Base::kOrientable, 1, {{3, 2}, {5, -1}, {7, 4}}),
      closed(Base::kNonOrientable, 1, {{3, 1}}),
      closed(Base::kNonOrientable, 2, {{2, 1}, {5, 2}}),
      closed(Base::kNonOrientable, 3, {{4, 3}, {3, -1}}),
  };
  return set;
}

}  // namespace

TEST_CASE("z_direct matches the naive triple sum") {
  std::vector<SeifertSymbol> symbols = regression_set();
  symbols.push_back(closed(Base::kOrientable, 2, {}));
  symbols.push_back(qinv::double_symbol(bounded(Base::kOrientable, 1, {{3, 1}, {5, 1}})));
  for (const auto& s : symbols) {
    for (int r : {3, 5, 7, 9, 15}) {
      const auto got = qinv::z_direct(s, r);
      const auto want = oracle::z_naive(s, r);
      CHECK_MESSAGE(std::abs(got.value - want) <= 1e-11 * got.term_magnitude_sum,
                    qinv::to_string(s), " r=", r, " got=", got.value.real(), "+", got.value.imag(),
                    "i want=", want.real(), "+", want.imag(), "i");
      std::uint64_t count = static_cast<std::uint64_t>(r - 1) << s.n();
      for (const auto& f : s.fibers) count *= static_cast<std::uint64_t>(f.a);
      CHECK(got.term_count == count);
      CHECK(got.method == Method::kDirect);
    }
  }
}

TEST_CASE("z_direct small hand cases") {
  for (int r = 3; r <= 21; r += 2) {
    CHECK(qinv::z_direct(closed(Base::kOrientable, 1, {}), r).value.real() == doctest::Approx(r - 1));
    double s = 0;
    for (int g = 1; g < r; ++g) s += 1.0 / std::pow(std::sin(oracle::kPi * g / r), 2);
    CHECK(qinv::z_direct(closed(Base::kOrientable, 2, {}), r).value.real() ==
          doctest::Approx(s).epsilon(1e-13));
  }
  CHECK(code_of([] { qinv::z_direct(bounded(Base::kOrientable, 1, {}), 5); }) == ErrorCode::kDomain);
  CHECK(code_of([] { qinv::z_direct(closed(Base::kOrientable, 1, {}), 6); }) == ErrorCode::kDomain);
  CHECK(code_of([] { qinv::z_direct(closed(Base::kOrientable, 1, {{0, 1}}), 5); }) ==
        ErrorCode::kInvalidFiber);
  CHECK(qinv::z_direct(closed(Base::kOrientable, 1, {}), 5).degenerate);
}

TEST_CASE("verlinde dimensions") {
  CHECK(qinv::verlinde_dimension(1, 7) == 6.0);
  // (3/2)(sin^-2(π/3) + sin^-2(2π/3)) = (3/2)(4/3 + 4/3)
  CHECK(qinv::verlinde_dimension(2, 3) == doctest::Approx(4.0).epsilon(1e-14));
  for (int g = 1; g <= 4; ++g) {
    for (int r = 3; r <= 41; r += 2) {
      const double want = oracle::verlinde(g, r);
      CHECK(qinv::verlinde_dimension(g, r) == doctest::Approx(want).epsilon(1e-12));
      const auto rt = qinv::rt_closed(closed(Base::kOrientable, g, {}), r);
      CHECK(std::abs(rt.value - oracle::cd(want)) <= 1e-10 * want);
    }
  }
  CHECK(code_of([] { qinv::verlinde_dimension(0, 5); }) == ErrorCode::kDomain);
}

TEST_CASE("orientation reversal conjugates") {
  for (const auto& s : regression_set()) {
    for (int r : {5, 9, 11, 13}) {
      const auto a = qinv::rt_closed(s, r);
      const auto b = qinv::rt_closed(qinv::reverse_orientation(s), r);
      CHECK_MESSAGE(oracle::rel_close(b.value, std::conj(a.value), 1e-9), qinv::to_string(s), " r=", r);
    }
  }
}

TEST_CASE("invariance under the Seifert moves") {
  std::mt19937 rng(3);
  for (const auto& s : regression_set()) {
    for (int r : {5, 7, 9}) {
      const auto base = qinv::rt_closed(s, r);
      CHECK(oracle::rel_close(qinv::rt_closed(qinv::normalize(s), r).value, base.value, 1e-9));
      for (int trial = 0; trial < 3; ++trial) {
        const auto moved = shuffle_moves(s, rng);
        CHECK_MESSAGE(oracle::rel_close(qinv::rt_closed(moved, r).value, base.value, 1e-9),
                      qinv::to_string(moved), " r=", r);
      }
    }
  }
}

TEST_CASE("fiber order does not matter") {
  const auto s = closed(Base::kOrientable, 1, {{3, 2}, {5, -1}, {7, 4}});
  auto p = s;
  std::swap(p.fibers[0], p.fibers[2]);
  CHECK(oracle::rel_close(qinv::rt_closed(p, 11).value, qinv::rt_closed(s, 11).value, 1e-10));
}

TEST_CASE("an identically vanishing invariant stays zero under reversal and reordering") {
  // relative comparisons are meaningless here, so compare against the term scale
  const auto s = closed(Base::kOrientable, 1, {{3, 2}, {5, -1}, {7, 3}});
  auto p = s;
  std::swap(p.fibers[0], p.fibers[2]);
  for (int r : {5, 9, 13}) {
    for (const auto& x : {s, p, qinv::reverse_orientation(s), qinv::normalize(s)}) {
      CHECK(qinv::rt_closed(x, r).vanishes(1e-12));
    }
  }
}

TEST_CASE("simplified double against the direct sum") {
  const std::vector<SeifertSymbol> cases{
      bounded(Base::kOrientable, 1, {{3, 1}, {5, 1}}),
      bounded(Base::kOrientable, 1, {{3, 2}, {5, 3}}),
      bounded(Base::kNonOrientable, 1, {{3, 1}, {5, 2}}),
      bounded(Base::kOrientable, 2, {{3, 1}}),
      bounded(Base::kOrientable, 1, {{9, 2}}),
      bounded(Base::kNonOrientable, 2, {{3, 1}, {3, 1}}),
  };
  for (const auto& m : cases) {
    const std::int64_t a = qinv::fiber_lcm(m.fibers);
    for (std::int64_t k : {1, 3}) {
      const int r = static_cast<int>(k * a);
      const auto simple = qinv::z_double_simplified(m, r);
      const auto direct = qinv::z_direct(qinv::double_symbol(m), r);
      CHECK_MESSAGE(oracle::rel_close(simple.value, direct.value, 1e-8), qinv::to_string(m), " r=", r);
      CHECK(simple.method == Method::kSimplified);
      const auto rt_s = qinv::rt_double(m, r, Method::kSimplified);
      const auto rt_d = qinv::rt_double(m, r, Method::kDirect);
      CHECK(oracle::rel_close(rt_s.value, rt_d.value, 1e-8));
    }
  }
}

TEST_CASE("simplified form hand value at r = 15") {
  const auto m = bounded(Base::kOrientable, 1, {{3, 1}, {5, 1}});
  double s = 0;
  for (int g : {1, 4, 11, 14}) s += std::pow(std::sin(oracle::kPi * g / 15), -6);
  const auto z = qinv::z_double_simplified(m, 15);
  CHECK(z.value.real() == doctest::Approx(225 * s).epsilon(1e-13));
  CHECK(z.value.imag() == 0.0);
  CHECK(z.value.real() == doctest::Approx(5573747.2044597).epsilon(1e-12));
}

TEST_CASE("empty B cancels") {
  const auto m = bounded(Base::kOrientable, 1, {{5, 1}, {5, 3}});
  for (int r : {5, 15, 25}) {
    const auto z = qinv::z_direct(qinv::double_symbol(m), r);
    CHECK(z.vanishes(1e-8));
    CHECK(z.term_magnitude_sum > 1.0);
    const auto s = qinv::z_double_simplified(m, r);
    CHECK(s.value == oracle::cd(0.0));
  }
}

TEST_CASE("simplified form preconditions") {
  CHECK(code_of([] { qinv::z_double_simplified(bounded(Base::kOrientable, 1, {{3, 1}, {5, 1}}), 21); }) ==
        ErrorCode::kPrecondition);
  CHECK(code_of([] { qinv::z_double_simplified(bounded(Base::kOrientable, 1, {{2, 1}, {3, 1}}), 9); }) ==
        ErrorCode::kPrecondition);
  CHECK(code_of([] { qinv::z_double_simplified(closed(Base::kOrientable, 1, {{3, 1}}), 3); }) ==
        ErrorCode::kDomain);
  const auto d = qinv::z_double_simplified(bounded(Base::kOrientable, 1, {}), 7);
  CHECK(d.degenerate);
  CHECK(d.value == oracle::cd(0.0));
}

TEST_CASE("thread count does not change the result") {
  const auto s = qinv::double_symbol(bounded(Base::kOrientable, 1, {{3, 1}, {5, 1}}));
  const auto one = qinv::rt_closed(s, 45, {1});
  for (unsigned t : {2u, 3u, 8u}) {
    const auto many = qinv::rt_closed(s, 45, {t});
    CHECK(many.value == one.value);
    CHECK(many.term_magnitude_sum == one.term_magnitude_sum);
  }
}

TEST_CASE("sin_pi_ratio folding") {
  for (int r : {7, 15}) {
    for (int t = -3 * r; t <= 3 * r; ++t) {
      CHECK(qinv::sin_pi_ratio(t, r) == doctest::Approx(std::sin(oracle::kPi * t / r)).epsilon(1e-14));
      CHECK(qinv::sin_pi_ratio(r - t, r) == qinv::sin_pi_ratio(t, r));
    }
  }
}
