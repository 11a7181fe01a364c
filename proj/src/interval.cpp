#include "betauto/interval.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace betauto {

Float::Float(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Float::Float(double v, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, v, MPFR_RNDN);
}

Float::Float(Float const& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept {
  // Leave the moved-from value valid at minimal precision.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Float& Float::operator=(Float const& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& other) noexcept {
  if (this != &other) {
    mpfr_swap(value_, other.value_);
  }
  return *this;
}

Float::~Float() { mpfr_clear(value_); }

namespace {

mpfr_prec_t join(mpfr_prec_t a, mpfr_prec_t b) { return std::max(a, b); }

template <typename Op>
Float apply(mpfr_prec_t prec, mpfr_rnd_t rnd, Op op) {
  Float out(prec);
  op(out.get(), rnd);
  return out;
}

Float min_of(Float const& a, Float const& b) {
  return mpfr_lessequal_p(a.get(), b.get()) ? a : b;
}

Float max_of(Float const& a, Float const& b) {
  return mpfr_greaterequal_p(a.get(), b.get()) ? a : b;
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval::Interval(double v, mpfr_prec_t prec) : lo_(v, prec), hi_(v, prec) {}

Interval::Interval(Float lo, Float hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

Interval Interval::from_int(BigInt const& v, mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_z(out.lo_.get(), v.backend().data(), MPFR_RNDD);
  mpfr_set_z(out.hi_.get(), v.backend().data(), MPFR_RNDU);
  return out;
}

Interval Interval::from_rational(Rational const& v, mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_q(out.lo_.get(), v.backend().data(), MPFR_RNDD);
  mpfr_set_q(out.hi_.get(), v.backend().data(), MPFR_RNDU);
  return out;
}

Interval Interval::from_point(Float const& v) { return Interval(v, v); }

Interval Interval::around(Float const& mid, Float const& rad) {
  auto const prec = join(mid.precision(), rad.precision());
  Float lo(prec);
  Float hi(prec);
  mpfr_sub(lo.get(), mid.get(), rad.get(), MPFR_RNDD);
  mpfr_add(hi.get(), mid.get(), rad.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

double Interval::mid() const {
  Float m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

double Interval::width() const {
  Float w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

bool Interval::contains(double v) const {
  return mpfr_cmp_d(lo_.get(), v) <= 0 && mpfr_cmp_d(hi_.get(), v) >= 0;
}

bool Interval::contains(Interval const& other) const {
  return mpfr_lessequal_p(lo_.get(), other.lo_.get()) &&
         mpfr_greaterequal_p(hi_.get(), other.hi_.get());
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool Interval::intersects(Interval const& other) const {
  return mpfr_lessequal_p(lo_.get(), other.hi_.get()) &&
         mpfr_lessequal_p(other.lo_.get(), hi_.get());
}

bool Interval::certainly_less(Interval const& other) const {
  return mpfr_less_p(hi_.get(), other.lo_.get());
}

bool Interval::certainly_geq(Interval const& other) const {
  return mpfr_greaterequal_p(lo_.get(), other.hi_.get());
}

bool Interval::certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }

bool Interval::certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }

Interval operator+(Interval const& a, Interval const& b) {
  auto const prec = join(a.precision(), b.precision());
  return Interval(apply(prec, MPFR_RNDD,
                        [&](mpfr_ptr r, mpfr_rnd_t m) {
                          mpfr_add(r, a.lo_.get(), b.lo_.get(), m);
                        }),
                  apply(prec, MPFR_RNDU, [&](mpfr_ptr r, mpfr_rnd_t m) {
                    mpfr_add(r, a.hi_.get(), b.hi_.get(), m);
                  }));
}

Interval operator-(Interval const& a, Interval const& b) {
  auto const prec = join(a.precision(), b.precision());
  return Interval(apply(prec, MPFR_RNDD,
                        [&](mpfr_ptr r, mpfr_rnd_t m) {
                          mpfr_sub(r, a.lo_.get(), b.hi_.get(), m);
                        }),
                  apply(prec, MPFR_RNDU, [&](mpfr_ptr r, mpfr_rnd_t m) {
                    mpfr_sub(r, a.hi_.get(), b.lo_.get(), m);
                  }));
}

Interval operator-(Interval const& a) {
  Float lo(a.precision());
  Float hi(a.precision());
  mpfr_neg(lo.get(), a.hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), a.lo_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval operator*(Interval const& a, Interval const& b) {
  auto const prec = join(a.precision(), b.precision());
  mpfr_srcptr const xs[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr const ys[2] = {b.lo_.get(), b.hi_.get()};
  Float lo(prec);
  Float hi(prec);
  Float t(prec);
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return Interval(std::move(lo), std::move(hi));
}

Interval operator/(Interval const& a, Interval const& b) {
  if (b.contains_zero()) {
    auto const prec = join(a.precision(), b.precision());
    Float lo(prec);
    Float hi(prec);
    mpfr_set_inf(lo.get(), -1);
    mpfr_set_inf(hi.get(), 1);
    return Interval(std::move(lo), std::move(hi));
  }
  auto const prec = join(a.precision(), b.precision());
  mpfr_srcptr const xs[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr const ys[2] = {b.lo_.get(), b.hi_.get()};
  Float lo(prec);
  Float hi(prec);
  Float t(prec);
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_.get()) >= 0) return *this;
  if (mpfr_sgn(hi_.get()) <= 0) return -*this;
  Float lo(precision());
  Float hi(precision());
  mpfr_set_zero(lo.get(), 1);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  if (mpfr_greater_p(hi_.get(), hi.get())) mpfr_set(hi.get(), hi_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::square() const {
  Interval const m = abs();
  Float lo(precision());
  Float hi(precision());
  mpfr_sqr(lo.get(), m.lo_.get(), MPFR_RNDD);
  mpfr_sqr(hi.get(), m.hi_.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::sqrt() const {
  Float lo(precision());
  Float hi(precision());
  if (mpfr_sgn(lo_.get()) <= 0) {
    mpfr_set_zero(lo.get(), 1);
  } else {
    mpfr_sqrt(lo.get(), lo_.get(), MPFR_RNDD);
  }
  if (mpfr_sgn(hi_.get()) <= 0) {
    mpfr_set_zero(hi.get(), 1);
  } else {
    mpfr_sqrt(hi.get(), hi_.get(), MPFR_RNDU);
  }
  return Interval(std::move(lo), std::move(hi));
}

std::string Interval::to_string(int digits) const {
  auto fmt = [digits](mpfr_srcptr v, mpfr_rnd_t rnd) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*R*g", digits, rnd, v);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  };
  return "[" + fmt(lo_.get(), MPFR_RNDD) + ", " + fmt(hi_.get(), MPFR_RNDU) + "]";
}

Interval hull(Interval const& a, Interval const& b) {
  return Interval(min_of(a.lo(), b.lo()), max_of(a.hi(), b.hi()));
}

Interval max(Interval const& a, Interval const& b) {
  return Interval(max_of(a.lo(), b.lo()), max_of(a.hi(), b.hi()));
}

Interval ComplexInterval::abs_squared() const {
  return re.square() + im.square();
}

Interval ComplexInterval::abs() const { return abs_squared().sqrt(); }

ComplexInterval operator+(ComplexInterval const& a, ComplexInterval const& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexInterval operator-(ComplexInterval const& a, ComplexInterval const& b) {
  return {a.re - b.re, a.im - b.im};
}

ComplexInterval operator*(ComplexInterval const& a, ComplexInterval const& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator*(Interval const& a, ComplexInterval const& b) {
  return {a * b.re, a * b.im};
}

ComplexFloat::ComplexFloat(std::complex<long double> z, mpfr_prec_t prec)
    : re(prec), im(prec) {
  mpfr_set_ld(re.get(), z.real(), MPFR_RNDN);
  mpfr_set_ld(im.get(), z.imag(), MPFR_RNDN);
}

ComplexFloat operator+(ComplexFloat const& a, ComplexFloat const& b) {
  ComplexFloat out(join(a.re.precision(), b.re.precision()));
  mpfr_add(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return out;
}

ComplexFloat operator-(ComplexFloat const& a, ComplexFloat const& b) {
  ComplexFloat out(join(a.re.precision(), b.re.precision()));
  mpfr_sub(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return out;
}

ComplexFloat operator*(ComplexFloat const& a, ComplexFloat const& b) {
  auto const prec = join(a.re.precision(), b.re.precision());
  ComplexFloat out(prec);
  Float t(prec);
  mpfr_mul(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(out.re.get(), out.re.get(), t.get(), MPFR_RNDN);
  mpfr_mul(out.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), out.im.get(), t.get(), MPFR_RNDN);
  return out;
}

ComplexFloat operator/(ComplexFloat const& a, ComplexFloat const& b) {
  auto const prec = join(a.re.precision(), b.re.precision());
  Float den(prec);
  Float t(prec);
  mpfr_sqr(den.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(den.get(), den.get(), t.get(), MPFR_RNDN);
  ComplexFloat conj(prec);
  mpfr_set(conj.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_neg(conj.im.get(), b.im.get(), MPFR_RNDN);
  ComplexFloat out = a * conj;
  mpfr_div(out.re.get(), out.re.get(), den.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), out.im.get(), den.get(), MPFR_RNDN);
  return out;
}

}  // namespace betauto
