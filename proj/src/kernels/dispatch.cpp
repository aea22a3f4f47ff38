#include <atomic>

#include "qinv/kernels/kernels.hpp"

namespace qinv::kernels {

bool cpu_has_avx2() noexcept;  // avx2.cpp

namespace {

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

Isa detect_isa() noexcept { return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) noexcept {
  if (isa == Isa::kAvx2 && !cpu_has_avx2()) isa = Isa::kScalar;
  active().store(isa, std::memory_order_relaxed);
  return isa;
}

void accumulate_phases(const PhaseTable& table, std::int32_t base,
                       std::span<const std::int32_t> offsets, double weight,
                       ComplexAccumulator& acc) {
  if (active_isa() == Isa::kAvx2) {
    accumulate_phases_avx2(table, base, offsets, weight, acc);
  } else {
    accumulate_phases_scalar(table, base, offsets, weight, acc);
  }
}

void accumulate_inverse_powers(std::span<const double> x, int exponent, CompensatedSum& acc) {
  if (active_isa() == Isa::kAvx2) {
    accumulate_inverse_powers_avx2(x, exponent, acc);
  } else {
    accumulate_inverse_powers_scalar(x, exponent, acc);
  }
}

}  // namespace qinv::kernels
