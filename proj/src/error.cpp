#include "betauto/error.hpp"
#include "betauto/bignum.hpp"

namespace betauto {

char const* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::not_squarefree: return "NotSquarefree";
    case Errc::unsupported_denominator: return "UnsupportedDenominator";
    case Errc::unit_circle_conjugate: return "UnitCircleConjugate";
    case Errc::empty_digits: return "EmptyDigits";
    case Errc::duplicate_digits: return "DuplicateDigits";
    case Errc::mode_mismatch: return "ModeMismatch";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::alphabet_mismatch: return "AlphabetMismatch";
    case Errc::malformed_json: return "MalformedJson";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::blocked: return "Blocked";
    case Errc::precision_exhausted: return "PrecisionExhausted";
    case Errc::internal: return "InternalError";
  }
  return "Unknown";
}

namespace {
std::size_t hash_mpz(mpz_srcptr z) noexcept {
  std::size_t seed = static_cast<std::size_t>(mpz_sgn(z) + 1);
  auto const n = mpz_size(z);
  for (std::size_t i = 0; i < n; ++i) {
    hash_combine(seed, static_cast<std::size_t>(mpz_getlimbn(z, i)));
  }
  return seed;
}
}  // namespace

std::size_t hash_value(BigInt const& x) noexcept {
  return hash_mpz(x.backend().data());
}

std::size_t hash_value(Rational const& x) noexcept {
  std::size_t seed = hash_mpz(mpq_numref(x.backend().data()));
  hash_combine(seed, hash_mpz(mpq_denref(x.backend().data())));
  return seed;
}

}  // namespace betauto
