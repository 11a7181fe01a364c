#include "betauto/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "betauto/error.hpp"

namespace betauto {

char const* to_string(EmbeddingClass cls) noexcept {
  switch (cls) {
    case EmbeddingClass::expanding: return "expanding";
    case EmbeddingClass::contracting: return "contracting";
    case EmbeddingClass::unit: return "unit";
  }
  return "?";
}

// ---------------------------------------------------------------- MinPoly

MinPoly::MinPoly(IntPoly coeffs) : coeffs_(std::move(coeffs)) {
  trim(coeffs_);
  if (coeffs_.size() < 2) {
    throw Error(Errc::invalid_argument, "minimal polynomial must have degree >= 1");
  }
  BigInt content = 0;
  for (auto const& c : coeffs_) content = boost::multiprecision::gcd(content, c);
  if (abs(content) != 1) {
    throw Error(Errc::invalid_argument,
                "minimal polynomial coefficients must have gcd 1");
  }
  RatPoly const g = gcd(to_rational(coeffs_), to_rational(derivative(coeffs_)));
  if (betauto::degree(g) > 0) {
    throw Error(Errc::not_squarefree,
                "minimal polynomial is not squarefree: " + to_string(coeffs_));
  }
}

// -------------------------------------------------------------- FieldElem

FieldElem FieldElem::zero(std::size_t dim) {
  FieldElem x;
  x.dim_ = dim;
  x.coeffs_.assign(dim, Rational(0));
  return x;
}

FieldElem FieldElem::polynomial(RatPoly coeffs) {
  FieldElem x;
  x.coeffs_ = std::move(coeffs);
  x.canonicalize();
  return x;
}

FieldElem FieldElem::vector(RatPoly coeffs, std::size_t dim) {
  if (dim == 0 || coeffs.size() != dim) {
    throw Error(Errc::mode_mismatch, "coefficient vector length does not match degree");
  }
  FieldElem x;
  x.dim_ = dim;
  x.coeffs_ = std::move(coeffs);
  return x;
}

void FieldElem::canonicalize() {
  if (dim_ == 0) trim(coeffs_);
}

bool FieldElem::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](Rational const& c) { return c == 0; });
}

int FieldElem::degree() const { return betauto::degree(coeffs_); }

std::size_t FieldElem::hash() const noexcept {
  std::size_t seed = dim_;
  for (auto const& c : coeffs_) hash_combine(seed, hash_value(c));
  return seed;
}

std::string FieldElem::to_string(std::string_view var) const {
  return betauto::to_string(coeffs_, var);
}

namespace {

void require_same_mode(FieldElem const& x, FieldElem const& y) {
  if (x.dim() != y.dim()) {
    throw Error(Errc::mode_mismatch, "field elements from different contexts");
  }
}

}  // namespace

FieldElem fe_add(FieldElem const& x, FieldElem const& y) {
  require_same_mode(x, y);
  RatPoly out(std::max(x.coeffs().size(), y.coeffs().size()), Rational(0));
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) out[i] += x.coeffs()[i];
  for (std::size_t i = 0; i < y.coeffs().size(); ++i) out[i] += y.coeffs()[i];
  return x.dim() == 0 ? FieldElem::polynomial(std::move(out))
                      : FieldElem::vector(std::move(out), x.dim());
}

FieldElem fe_neg(FieldElem const& x) {
  RatPoly out = x.coeffs();
  for (auto& c : out) c = -c;
  return x.dim() == 0 ? FieldElem::polynomial(std::move(out))
                      : FieldElem::vector(std::move(out), x.dim());
}

FieldElem fe_sub(FieldElem const& x, FieldElem const& y) { return fe_add(x, fe_neg(y)); }

FieldElem fe_scale(FieldElem const& x, Rational const& c) {
  RatPoly out = x.coeffs();
  for (auto& v : out) v *= c;
  return x.dim() == 0 ? FieldElem::polynomial(std::move(out))
                      : FieldElem::vector(std::move(out), x.dim());
}

// ---------------------------------------------------------- root finding

namespace {

using CLD = std::complex<long double>;

CLD horner(std::vector<long double> const& p, CLD z) {
  CLD acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<CLD> aberth_long_double(IntPoly const& poly) {
  int const n = degree(poly);
  std::vector<long double> p(poly.size());
  long double const lead = poly.back().convert_to<long double>();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    p[i] = poly[i].convert_to<long double>() / lead;
  }
  std::vector<long double> dp;
  for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * static_cast<long double>(i));

  long double bound = 0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(p[i]));
  long double const radius = std::max<long double>(0.5L, std::pow(std::abs(p[0]) + 1e-3L, 1.0L / n));
  std::vector<CLD> z(n);
  for (int k = 0; k < n; ++k) {
    long double const angle = 2.0L * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[k] = std::polar(std::min(radius, 1 + bound), angle);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (int k = 0; k < n; ++k) {
      CLD const f = horner(p, z[k]);
      CLD const df = horner(dp, z[k]);
      if (f == CLD(0)) continue;
      CLD const ratio = f / df;
      CLD sum = 0;
      for (int j = 0; j < n; ++j) {
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      }
      CLD const w = ratio / (1.0L - ratio * sum);
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / std::max<long double>(1, std::abs(z[k])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

ComplexFloat horner(IntPoly const& p, ComplexFloat const& z) {
  auto const prec = z.re.precision();
  ComplexFloat acc(prec);
  ComplexFloat c(prec);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = acc * z;
    mpfr_set_z(c.re.get(), it->backend().data(), MPFR_RNDN);
    acc = acc + c;
  }
  return acc;
}

long double magnitude(ComplexFloat const& z) { return std::abs(z.to_complex()); }

/// Aberth refinement at MPFR precision, seeded by long double estimates.
std::vector<ComplexFloat> aberth_refine(IntPoly const& p, std::vector<CLD> const& seeds,
                                        mpfr_prec_t prec) {
  int const n = static_cast<int>(seeds.size());
  IntPoly const dp = derivative(p);
  std::vector<ComplexFloat> z;
  z.reserve(n);
  for (auto const& s : seeds) z.emplace_back(s, prec);
  ComplexFloat one(prec);
  mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
  long double const tol = std::ldexp(1.0L, -static_cast<int>(prec) + 8);
  for (int iter = 0; iter < 200; ++iter) {
    long double worst = 0;
    for (int k = 0; k < n; ++k) {
      ComplexFloat const f = horner(p, z[k]);
      if (mpfr_zero_p(f.re.get()) && mpfr_zero_p(f.im.get())) continue;
      ComplexFloat const ratio = f / horner(dp, z[k]);
      ComplexFloat sum(prec);
      for (int j = 0; j < n; ++j) {
        if (j != k) sum = sum + one / (z[k] - z[j]);
      }
      ComplexFloat const w = ratio / (one - ratio * sum);
      z[k] = z[k] - w;
      worst = std::max(worst, magnitude(w) / std::max<long double>(1, magnitude(z[k])));
    }
    if (worst < tol) break;
  }
  return z;
}

ComplexInterval point_box(ComplexFloat const& z) {
  return {Interval::from_point(z.re), Interval::from_point(z.im)};
}

}  // namespace

std::vector<Embedding> compute_embeddings(IntPoly const& poly, double target_radius) {
  int const n = degree(poly);
  if (n < 1) throw Error(Errc::invalid_argument, "cannot embed a constant polynomial");
  bool const reciprocal = is_self_reciprocal(poly);
  auto const seeds = aberth_long_double(poly);
  IntPoly const dp = derivative(poly);

  auto prec = static_cast<mpfr_prec_t>(std::ceil(-std::log2(target_radius))) + 64;
  for (; prec <= 16384; prec *= 2) {
    auto const z = aberth_refine(poly, seeds, prec);
    std::vector<Embedding> out(n);
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      ComplexInterval const box = point_box(z[k]);
      Interval const fz = evaluate(poly, box).abs();
      Interval const dfz = evaluate(dp, box).abs();
      if (!dfz.certainly_positive()) {
        ok = false;
        break;
      }
      Interval const r = Interval(static_cast<double>(n), prec) * fz / dfz;
      Float const& rad = r.hi();
      if (rad.to_double(MPFR_RNDU) > target_radius) {
        ok = false;
        break;
      }
      out[k].root = {Interval::around(z[k].re, rad), Interval::around(z[k].im, rad)};
      out[k].modulus = out[k].root.abs();
      out[k].approx = {z[k].re.to_double(), z[k].im.to_double()};
      out[k].radius = rad.to_double(MPFR_RNDU);
    }
    if (!ok) continue;
    // Pairwise disjoint disks each hold exactly one of the n roots.
    for (int i = 0; i < n && ok; ++i) {
      for (int j = i + 1; j < n && ok; ++j) {
        Interval const dist = (point_box(z[i]) - point_box(z[j])).abs();
        Interval const radii(out[i].radius + out[j].radius, prec);
        if (!radii.certainly_less(dist)) ok = false;
      }
    }
    if (!ok) continue;
    Interval const one(1.0, prec);
    Interval const band_lo(1.0 - 1e-9, prec);
    Interval const band_hi(1.0 + 1e-9, prec);
    for (auto& e : out) {
      if (e.modulus.certainly_positive() && one.certainly_less(e.modulus)) {
        e.cls = EmbeddingClass::expanding;
      } else if (e.modulus.certainly_less(one)) {
        e.cls = EmbeddingClass::contracting;
      } else if (reciprocal && e.radius <= 1e-14 &&
                 e.modulus.intersects(hull(band_lo, band_hi))) {
        e.cls = EmbeddingClass::unit;
      } else {
        ok = false;
      }
    }
    if (ok) return out;
  }
  throw Error(Errc::precision_exhausted,
              "could not certify the roots of " + to_string(poly));
}

// ------------------------------------------------------------- context

namespace {

std::string default_name(IntPoly const& digit, Mode mode) {
  return to_string(digit, mode == Mode::transcendental ? "X" : "β");
}

}  // namespace

std::string BetaContext::variable() const {
  if (mode_ == Mode::transcendental) return "X";
  return inverted_ ? "u" : "β";
}

FieldElem BetaContext::base() const {
  if (mode_ == Mode::transcendental) {
    return FieldElem::polynomial({Rational(0), Rational(1)});
  }
  return reduce({Rational(0), Rational(1)});
}

FieldElem BetaContext::reduce(RatPoly const& p) const {
  if (mode_ == Mode::transcendental) return FieldElem::polynomial(p);
  RatPoly const m = to_rational(minpoly_->coeffs());
  RatPoly r = divide(p, m).remainder;
  r.resize(dim_, Rational(0));
  return FieldElem::vector(std::move(r), dim_);
}

void BetaContext::compute_numeric() {
  embeddings_.clear();
  prune_bounds_.clear();
  if (mode_ == Mode::transcendental) return;
  double const target = std::pow(10.0, -precision_);
  embeddings_ = compute_embeddings(minpoly_->coeffs(), self_reciprocal_ ? std::min(target, 1e-14) : target);
  blocked_ = std::any_of(embeddings_.begin(), embeddings_.end(),
                         [](Embedding const& e) { return e.cls == EmbeddingClass::unit; });
  for (std::size_t i = 0; i < embeddings_.size(); ++i) {
    auto const& e = embeddings_[i];
    auto const prec = e.modulus.precision();
    Interval biggest(0.0, prec);
    for (auto const& d : differences_) biggest = max(biggest, fe_abs_at(*this, d, i));
    if (e.cls == EmbeddingClass::expanding) {
      prune_bounds_.push_back(biggest / (e.modulus - Interval(1.0, prec)));
    } else if (e.cls == EmbeddingClass::contracting) {
      prune_bounds_.push_back(biggest / (Interval(1.0, prec) - e.modulus));
    } else {
      Float lo(prec);
      Float hi(prec);
      mpfr_set_inf(hi.get(), 1);
      prune_bounds_.emplace_back(lo, hi);
    }
  }
}

BetaContext BetaContext::refined(int digits) const {
  BetaContext out = *this;
  out.precision_ = digits;
  out.compute_numeric();
  return out;
}

nlohmann::json BetaContext::describe() const {
  nlohmann::json j;
  j["mode"] = mode_ == Mode::algebraic ? "algebraic" : "transcendental";
  j["variable"] = variable();
  j["inverted"] = inverted_;
  j["blocked"] = blocked_;
  if (user_minpoly_) {
    j["minpoly"] = to_string(user_minpoly_->coeffs());
    j["working_minpoly"] = to_string(minpoly_->coeffs(), variable());
  }
  j["digits"] = names_;
  nlohmann::json working = nlohmann::json::array();
  for (auto const& d : digits_) working.push_back(d.to_string(variable()));
  j["working_digits"] = working;
  nlohmann::json embs = nlohmann::json::array();
  for (std::size_t i = 0; i < embeddings_.size(); ++i) {
    auto const& e = embeddings_[i];
    nlohmann::json ej;
    ej["re"] = e.approx.real();
    ej["im"] = e.approx.imag();
    ej["radius"] = e.radius;
    ej["modulus"] = {{"lo", e.modulus.lower()}, {"hi", e.modulus.upper()}};
    ej["class"] = to_string(e.cls);
    if (e.cls == EmbeddingClass::expanding) {
      ej["prune_bound"] = prune_bounds_[i].upper();
    }
    embs.push_back(ej);
  }
  j["embeddings"] = embs;
  if (mode_ == Mode::transcendental) {
    j["max_degree"] = poly_bounds_.max_degree;
    nlohmann::json cb = nlohmann::json::array();
    for (auto const& b : poly_bounds_.coeff_bound) cb.push_back(b.str());
    j["coeff_bounds"] = cb;
  }
  return j;
}

BetaContext make_context(std::optional<IntPoly> const& minpoly,
                         std::vector<IntPoly> const& digits,
                         ContextOptions const& options) {
  if (digits.empty()) throw Error(Errc::empty_digits, "digit set is empty");
  BetaContext ctx;
  ctx.precision_ = options.precision;
  ctx.user_digits_ = digits;
  for (auto& d : ctx.user_digits_) trim(d);
  ctx.mode_ = minpoly ? Mode::algebraic : Mode::transcendental;

  if (ctx.mode_ == Mode::algebraic) {
    MinPoly const user(*minpoly);
    ctx.user_minpoly_ = user;
    ctx.self_reciprocal_ = is_self_reciprocal(user.coeffs());
    IntPoly working;
    if (abs(user.leading()) == 1) {
      working = user.coeffs();
    } else if (abs(user.constant()) == 1) {
      ctx.inverted_ = true;
      working = reversed(user.coeffs());
    } else {
      throw Error(Errc::unsupported_denominator,
                  "neither β nor 1/β is an algebraic integer: " + to_string(user.coeffs()));
    }
    if (working.back() < 0) {
      for (auto& c : working) c = -c;
    }
    ctx.minpoly_ = MinPoly(working);
    ctx.dim_ = static_cast<std::size_t>(ctx.minpoly_->degree());

    int max_deg = 0;
    for (auto const& d : ctx.user_digits_) max_deg = std::max(max_deg, degree(d));
    for (auto const& d : ctx.user_digits_) {
      IntPoly w = d;
      if (ctx.inverted_) {
        // u^m · d(1/u): reverse the coefficient vector padded to length m+1.
        w.resize(static_cast<std::size_t>(max_deg) + 1, BigInt(0));
        std::reverse(w.begin(), w.end());
        trim(w);
      }
      ctx.digits_.push_back(ctx.reduce(to_rational(w)));
    }
  } else {
    for (auto const& d : ctx.user_digits_) {
      ctx.digits_.push_back(FieldElem::polynomial(to_rational(d)));
    }
  }

  for (std::size_t i = 0; i < ctx.digits_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (ctx.digits_[i] == ctx.digits_[j]) {
        throw Error(Errc::duplicate_digits, "digits " + std::to_string(j) + " and " +
                                                std::to_string(i) + " coincide");
      }
    }
  }

  ctx.names_ = options.names;
  if (!ctx.names_.empty() && ctx.names_.size() != ctx.digits_.size()) {
    throw Error(Errc::invalid_argument, "names must match the digit count");
  }
  if (ctx.names_.empty()) {
    for (auto const& d : ctx.user_digits_) ctx.names_.push_back(default_name(d, ctx.mode_));
  }
  std::set<std::string> const unique_names(ctx.names_.begin(), ctx.names_.end());
  if (unique_names.size() != ctx.names_.size()) {
    throw Error(Errc::invalid_argument, "digit names must be distinct");
  }

  for (auto const& a : ctx.digits_) {
    for (auto const& b : ctx.digits_) {
      FieldElem d = fe_sub(a, b);
      if (d.is_zero()) continue;
      if (std::find(ctx.differences_.begin(), ctx.differences_.end(), d) ==
          ctx.differences_.end()) {
        ctx.differences_.push_back(std::move(d));
      }
    }
  }

  if (ctx.mode_ == Mode::transcendental) {
    auto& pb = ctx.poly_bounds_;
    for (auto const& d : ctx.differences_) pb.max_degree = std::max(pb.max_degree, d.degree());
    std::size_t const len = pb.max_degree < 0 ? 0 : static_cast<std::size_t>(pb.max_degree) + 1;
    std::vector<BigInt> col_max(len, BigInt(0));
    for (auto const& d : ctx.differences_) {
      for (std::size_t j = 0; j < d.coeffs().size(); ++j) {
        BigInt const v = abs(numerator(d.coeffs()[j]));
        if (v > col_max[j]) col_max[j] = v;
      }
    }
    pb.coeff_bound.assign(len, BigInt(0));
    BigInt running = 0;
    for (std::size_t k = len; k-- > 0;) {
      running += col_max[k];
      pb.coeff_bound[k] = running;
    }
  }

  ctx.compute_numeric();
  return ctx;
}

BetaContext context_from_json(nlohmann::json const& doc) {
  try {
    auto read_poly = [](nlohmann::json const& arr) {
      IntPoly p;
      for (auto const& v : arr) {
        if (v.is_string()) {
          p.emplace_back(v.get<std::string>());
        } else {
          p.emplace_back(v.get<long long>());
        }
      }
      trim(p);
      return p;
    };
    std::optional<IntPoly> minpoly;
    auto const& beta = doc.at("beta");
    if (beta.is_string()) {
      if (beta.get<std::string>() != "transcendental") {
        throw Error(Errc::malformed_json, "beta must be {\"minpoly\": [...]} or \"transcendental\"");
      }
    } else {
      minpoly = read_poly(beta.at("minpoly"));
    }
    std::vector<IntPoly> digits;
    for (auto const& d : doc.at("digits")) {
      digits.push_back(d.is_array() ? read_poly(d) : read_poly(nlohmann::json::array({d})));
    }
    ContextOptions options;
    if (doc.contains("precision")) options.precision = doc.at("precision").get<int>();
    if (doc.contains("names")) options.names = doc.at("names").get<std::vector<std::string>>();
    return make_context(minpoly, digits, options);
  } catch (nlohmann::json::exception const& e) {
    throw Error(Errc::malformed_json, e.what());
  }
}

// ------------------------------------------------------------ operations

FieldElem fe_mul_base(BetaContext const& ctx, FieldElem const& x) {
  if (x.dim() != ctx.dim()) {
    throw Error(Errc::mode_mismatch, "field element does not belong to this context");
  }
  if (ctx.mode() == Mode::transcendental) {
    if (x.is_zero()) return x;
    RatPoly out;
    out.reserve(x.coeffs().size() + 1);
    out.emplace_back(0);
    out.insert(out.end(), x.coeffs().begin(), x.coeffs().end());
    return FieldElem::polynomial(std::move(out));
  }
  auto const d = ctx.dim();
  auto const& m = ctx.minpoly()->coeffs();
  RatPoly const& c = x.coeffs();
  Rational const carry = c[d - 1];
  RatPoly out(d, Rational(0));
  for (std::size_t i = 1; i < d; ++i) out[i] = c[i - 1];
  if (carry != 0) {
    // β^d = -(m_0 + … + m_{d-1} β^{d-1}) / m_d, and m_d = 1.
    for (std::size_t i = 0; i < d; ++i) out[i] -= carry * m[i];
  }
  return FieldElem::vector(std::move(out), d);
}

ComplexInterval fe_embed(BetaContext const& ctx, FieldElem const& x, std::size_t embedding) {
  if (ctx.mode() != Mode::algebraic) {
    throw Error(Errc::mode_mismatch, "embeddings exist only for algebraic bases");
  }
  if (embedding >= ctx.embeddings().size()) {
    throw Error(Errc::invalid_argument, "embedding index out of range");
  }
  auto const& z = ctx.embeddings()[embedding].root;
  auto const prec = z.re.precision();
  ComplexInterval acc{Interval(0.0, prec), Interval(0.0, prec)};
  auto const& c = x.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * z;
    acc.re = acc.re + Interval::from_rational(*it, prec);
  }
  return acc;
}

Interval fe_abs_at(BetaContext const& ctx, FieldElem const& x, std::size_t embedding) {
  return fe_embed(ctx, x, embedding).abs();
}

Interval mahler_measure(BetaContext const& ctx) {
  if (ctx.mode() != Mode::algebraic) {
    throw Error(Errc::mode_mismatch, "Mahler measure needs an algebraic base");
  }
  // The working polynomial is monic and M(p) = M(reversed p), so the
  // product over expanding working roots equals the measure of β.
  auto const prec = ctx.embeddings().front().modulus.precision();
  Interval m(1.0, prec);
  for (auto const& e : ctx.embeddings()) {
    if (e.cls == EmbeddingClass::expanding) m = m * e.modulus;
  }
  return m;
}

}  // namespace betauto
