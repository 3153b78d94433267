// Iterated-exponential resource bounds: kexp(0, t) = t, kexp(k, t) = 2^kexp(k-1, t).
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace wotm {

struct ResourceBound {
  int level = 0;       // k
  std::int64_t arg = 0;  // t
};

// Hard budget on result size; beyond it kexp_eval reports overflow instead of
// allocating unboundedly.
constexpr std::int64_t kKexpMaxBits = 1 << 22;

struct KexpResult {
  std::optional<mpz_class> value;  // nullopt: budget exceeded
  bool overflow() const { return !value.has_value(); }
};

// Evaluates kexp(k, t); k >= 0, t >= 0. Overflow is reported explicitly,
// never wrapped.
KexpResult kexp_eval(int k, std::int64_t t);

// Decimal rendering, or "2^(...)" towers once the value exceeds the budget.
std::string kexp_describe(int k, std::int64_t t);

}  // namespace wotm
