#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant; the dispatching entry
// points pick one at runtime. Variants agree to rounding (see
// tests/test_kernels.cpp) but are not bit-identical to each other. A given
// variant is deterministic.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qinv::kernels {

/// Running sum with an error term, updated by Knuth's branch-free TwoSum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) noexcept {
    const double s = sum + x;
    const double bp = s - sum;
    carry += (sum - (s - bp)) + (x - bp);
    sum = s;
  }
  void add(const CompensatedSum& other) noexcept {
    add(other.sum);
    carry += other.carry;
  }
  double value() const noexcept { return sum + carry; }
};

struct ComplexAccumulator {
  CompensatedSum re;
  CompensatedSum im;

  void add(const ComplexAccumulator& other) noexcept {
    re.add(other.re);
    im.add(other.im);
  }
};

/// cos and sin of 2πt/N for t in [0, N), stored as separate arrays so the
/// AVX2 kernel can gather from each.
class PhaseTable {
 public:
  explicit PhaseTable(std::int64_t modulus);

  std::int32_t modulus() const noexcept { return modulus_; }
  const double* cos_data() const noexcept { return cos_.data(); }
  const double* sin_data() const noexcept { return sin_.data(); }

  /// Largest modulus a table is built for (entries, 16 bytes each).
  static constexpr std::int64_t kMaxModulus = std::int64_t{1} << 22;

 private:
  std::int32_t modulus_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa) noexcept;

/// Best variant the CPU supports.
Isa detect_isa() noexcept;
/// Variant used by the dispatching entry points (defaults to detect_isa()).
Isa active_isa() noexcept;
/// Overrides the active variant; requesting an unsupported one falls back to
/// scalar. Returns the variant actually selected.
Isa set_active_isa(Isa isa) noexcept;

/// acc += weight · Σ_t e^{2πi (base + offsets[t]) / N}, offsets and base in
/// [0, N). Terms are added in index order (scalar) or in 4 strided lanes
/// folded in lane order (AVX2).
void accumulate_phases(const PhaseTable& table, std::int32_t base,
                       std::span<const std::int32_t> offsets, double weight,
                       ComplexAccumulator& acc);
void accumulate_phases_scalar(const PhaseTable& table, std::int32_t base,
                              std::span<const std::int32_t> offsets, double weight,
                              ComplexAccumulator& acc);
void accumulate_phases_avx2(const PhaseTable& table, std::int32_t base,
                            std::span<const std::int32_t> offsets, double weight,
                            ComplexAccumulator& acc);

/// acc += Σ_t x[t]^{-exponent}; exponent may be negative or zero.
void accumulate_inverse_powers(std::span<const double> x, int exponent, CompensatedSum& acc);
void accumulate_inverse_powers_scalar(std::span<const double> x, int exponent,
                                      CompensatedSum& acc);
void accumulate_inverse_powers_avx2(std::span<const double> x, int exponent,
                                    CompensatedSum& acc);

}  // namespace qinv::kernels
