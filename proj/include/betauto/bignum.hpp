#pragma once

#include <cstddef>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace betauto {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

std::size_t hash_value(BigInt const& x) noexcept;
std::size_t hash_value(Rational const& x) noexcept;

inline void hash_combine(std::size_t& seed, std::size_t h) noexcept {
  seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace betauto
