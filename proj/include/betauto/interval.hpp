#pragma once

#include <complex>
#include <string>

#include <mpfr.h>

#include "betauto/bignum.hpp"

namespace betauto {

/// Owning handle around a single MPFR number. Precision is fixed at
/// construction; copies keep the source precision.
class Float {
 public:
  explicit Float(mpfr_prec_t prec = 128);
  Float(double v, mpfr_prec_t prec);
  Float(Float const& other);
  Float(Float&& other) noexcept;
  Float& operator=(Float const& other);
  Float& operator=(Float&& other) noexcept;
  ~Float();

  [[nodiscard]] mpfr_ptr get() noexcept { return value_; }
  [[nodiscard]] mpfr_srcptr get() const noexcept { return value_; }
  [[nodiscard]] mpfr_prec_t precision() const noexcept {
    return mpfr_get_prec(value_);
  }
  [[nodiscard]] double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const {
    return mpfr_get_d(value_, rnd);
  }
  [[nodiscard]] long double to_long_double() const {
    return mpfr_get_ld(value_, MPFR_RNDN);
  }

 private:
  mpfr_t value_;
};

/// Closed real interval [lo, hi]. Every operation rounds outward, so the
/// exact result of the corresponding real operation is always enclosed.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(double v, mpfr_prec_t prec);
  Interval(Float lo, Float hi);

  static Interval from_int(BigInt const& v, mpfr_prec_t prec);
  static Interval from_rational(Rational const& v, mpfr_prec_t prec);
  static Interval from_point(Float const& v);
  /// [mid - rad, mid + rad] with outward rounding.
  static Interval around(Float const& mid, Float const& rad);

  [[nodiscard]] Float const& lo() const noexcept { return lo_; }
  [[nodiscard]] Float const& hi() const noexcept { return hi_; }
  [[nodiscard]] mpfr_prec_t precision() const noexcept {
    return lo_.precision();
  }

  [[nodiscard]] double lower() const { return lo_.to_double(MPFR_RNDD); }
  [[nodiscard]] double upper() const { return hi_.to_double(MPFR_RNDU); }
  [[nodiscard]] double mid() const;
  [[nodiscard]] double width() const;

  [[nodiscard]] bool contains(double v) const;
  [[nodiscard]] bool contains(Interval const& other) const;
  [[nodiscard]] bool contains_zero() const;
  [[nodiscard]] bool intersects(Interval const& other) const;

  /// hi < other.lo
  [[nodiscard]] bool certainly_less(Interval const& other) const;
  /// lo >= other.hi
  [[nodiscard]] bool certainly_geq(Interval const& other) const;
  [[nodiscard]] bool certainly_positive() const;
  [[nodiscard]] bool certainly_negative() const;

  friend Interval operator+(Interval const& a, Interval const& b);
  friend Interval operator-(Interval const& a, Interval const& b);
  friend Interval operator*(Interval const& a, Interval const& b);
  friend Interval operator/(Interval const& a, Interval const& b);
  friend Interval operator-(Interval const& a);

  [[nodiscard]] Interval square() const;
  [[nodiscard]] Interval sqrt() const;
  [[nodiscard]] Interval abs() const;

  [[nodiscard]] std::string to_string(int digits = 17) const;

 private:
  Float lo_;
  Float hi_;
};

Interval hull(Interval const& a, Interval const& b);
Interval max(Interval const& a, Interval const& b);

/// Rectangular complex enclosure re × im.
struct ComplexInterval {
  Interval re;
  Interval im;

  [[nodiscard]] Interval abs() const;
  [[nodiscard]] Interval abs_squared() const;
};

ComplexInterval operator+(ComplexInterval const& a, ComplexInterval const& b);
ComplexInterval operator-(ComplexInterval const& a, ComplexInterval const& b);
ComplexInterval operator*(ComplexInterval const& a, ComplexInterval const& b);
ComplexInterval operator*(Interval const& a, ComplexInterval const& b);

/// Complex point value with round-to-nearest arithmetic, used for iterative
/// root refinement before certification.
struct ComplexFloat {
  Float re;
  Float im;

  explicit ComplexFloat(mpfr_prec_t prec) : re(prec), im(prec) {}
  ComplexFloat(std::complex<long double> z, mpfr_prec_t prec);

  [[nodiscard]] std::complex<long double> to_complex() const {
    return {re.to_long_double(), im.to_long_double()};
  }
};

ComplexFloat operator+(ComplexFloat const& a, ComplexFloat const& b);
ComplexFloat operator-(ComplexFloat const& a, ComplexFloat const& b);
ComplexFloat operator*(ComplexFloat const& a, ComplexFloat const& b);
ComplexFloat operator/(ComplexFloat const& a, ComplexFloat const& b);

}  // namespace betauto
