#include "wotm/kexp.hpp"

#include <stdexcept>

namespace wotm {

KexpResult kexp_eval(int k, std::int64_t t) {
  if (k < 0 || t < 0) throw std::invalid_argument("kexp_eval requires k >= 0 and t >= 0");
  mpz_class v(static_cast<long>(t));
  for (int i = 0; i < k; ++i) {
    if (!v.fits_slong_p() || v.get_si() > kKexpMaxBits) return {std::nullopt};
    mpz_class next = 1;
    mpz_mul_2exp(next.get_mpz_t(), next.get_mpz_t(), static_cast<mp_bitcnt_t>(v.get_si()));
    v = std::move(next);
  }
  return {std::move(v)};
}

std::string kexp_describe(int k, std::int64_t t) {
  KexpResult r = kexp_eval(k, t);
  if (!r.overflow()) return r.value->get_str();
  std::string s = std::to_string(t);
  for (int i = 0; i < k; ++i) s = "2^(" + s + ")";
  return s;
}

}  // namespace wotm
