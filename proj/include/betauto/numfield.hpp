#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "betauto/bignum.hpp"
#include "betauto/interval.hpp"
#include "betauto/polynomial.hpp"

namespace betauto {

enum class Mode { algebraic, transcendental };

enum class EmbeddingClass { expanding, contracting, unit };

char const* to_string(EmbeddingClass cls) noexcept;

/// Minimal polynomial of β: primitive, squarefree, degree >= 1.
/// Irreducibility is assumed, not checked.
class MinPoly {
 public:
  /// Throws Error(invalid_argument) or Error(not_squarefree).
  explicit MinPoly(IntPoly coeffs);

  [[nodiscard]] IntPoly const& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] int degree() const noexcept {
    return static_cast<int>(coeffs_.size()) - 1;
  }
  [[nodiscard]] BigInt const& leading() const { return coeffs_.back(); }
  [[nodiscard]] BigInt const& constant() const { return coeffs_.front(); }

 private:
  IntPoly coeffs_;
};

/// Exact element of Q(β) in the power basis 1, β, …, β^{d-1}, or of Z[X]
/// when the base is transcendental (dim() == 0).
class FieldElem {
 public:
  FieldElem() = default;

  static FieldElem zero(std::size_t dim);
  /// Transcendental element with the given polynomial coefficients.
  static FieldElem polynomial(RatPoly coeffs);
  /// Algebraic element; `coeffs` must already have length `dim`.
  static FieldElem vector(RatPoly coeffs, std::size_t dim);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] Mode mode() const noexcept {
    return dim_ == 0 ? Mode::transcendental : Mode::algebraic;
  }
  [[nodiscard]] RatPoly const& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] bool is_zero() const;
  /// Degree as a polynomial in the base; -1 for zero.
  [[nodiscard]] int degree() const;
  [[nodiscard]] std::size_t hash() const noexcept;
  [[nodiscard]] std::string to_string(std::string_view var) const;

  friend bool operator==(FieldElem const& a, FieldElem const& b) = default;

 private:
  void canonicalize();

  RatPoly coeffs_;
  std::size_t dim_ = 0;
};

struct FieldElemHash {
  std::size_t operator()(FieldElem const& x) const noexcept { return x.hash(); }
};

FieldElem fe_add(FieldElem const& x, FieldElem const& y);
FieldElem fe_sub(FieldElem const& x, FieldElem const& y);
FieldElem fe_neg(FieldElem const& x);
FieldElem fe_scale(FieldElem const& x, Rational const& c);

/// A complex embedding σ_i(β) = γ_i with a certified enclosure.
struct Embedding {
  ComplexInterval root;
  Interval modulus;
  EmbeddingClass cls = EmbeddingClass::contracting;
  std::complex<double> approx;
  double radius = 0.0;
};

/// Certified root enclosures of `p` with radius <= target, classified by
/// modulus. Throws Error(precision_exhausted) if certification fails.
std::vector<Embedding> compute_embeddings(IntPoly const& p, double target_radius);

struct ContextOptions {
  /// Decimal digits of the root-enclosure radius (radius <= 10^-precision).
  int precision = 12;
  /// Display names for the digits; defaults to their polynomial form.
  std::vector<std::string> names;
};

/// Degree and per-coefficient bounds on relation-automaton states when the
/// base is transcendental.
struct PolyBounds {
  int max_degree = -1;
  std::vector<BigInt> coeff_bound;
};

/// The base, the digit set and everything derived from them. Immutable.
class BetaContext {
 public:
  [[nodiscard]] Mode mode() const noexcept { return mode_; }
  [[nodiscard]] bool inverted() const noexcept { return inverted_; }
  [[nodiscard]] bool blocked() const noexcept { return blocked_; }
  [[nodiscard]] bool self_reciprocal() const noexcept { return self_reciprocal_; }
  [[nodiscard]] int precision() const noexcept { return precision_; }

  /// Working minimal polynomial (monic; that of β⁻¹ when inverted).
  [[nodiscard]] std::optional<MinPoly> const& minpoly() const noexcept {
    return minpoly_;
  }
  /// The minimal polynomial as supplied by the user.
  [[nodiscard]] std::optional<MinPoly> const& user_minpoly() const noexcept {
    return user_minpoly_;
  }
  /// Dimension of FieldElem vectors; 0 in transcendental mode.
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

  [[nodiscard]] std::vector<FieldElem> const& digits() const noexcept { return digits_; }
  [[nodiscard]] std::vector<IntPoly> const& user_digits() const noexcept {
    return user_digits_;
  }
  [[nodiscard]] std::vector<std::string> const& names() const noexcept { return names_; }
  [[nodiscard]] std::size_t alphabet_size() const noexcept { return digits_.size(); }

  [[nodiscard]] std::vector<Embedding> const& embeddings() const noexcept {
    return embeddings_;
  }
  /// B_γ per embedding; only meaningful for expanding embeddings.
  [[nodiscard]] std::vector<Interval> const& prune_bounds() const noexcept {
    return prune_bounds_;
  }
  [[nodiscard]] PolyBounds const& poly_bounds() const noexcept { return poly_bounds_; }

  /// Distinct nonzero digit differences t_g - t_h.
  [[nodiscard]] std::vector<FieldElem> const& digit_differences() const noexcept {
    return differences_;
  }

  /// Variable name used when rendering working-base elements.
  [[nodiscard]] std::string variable() const;

  /// Same context with embeddings recomputed to 10^-digits radius.
  [[nodiscard]] BetaContext refined(int digits) const;

  [[nodiscard]] FieldElem zero() const { return FieldElem::zero(dim_); }
  /// The working base itself as an element.
  [[nodiscard]] FieldElem base() const;
  /// Reduce an integer/rational polynomial in the working base.
  [[nodiscard]] FieldElem reduce(RatPoly const& p) const;

  [[nodiscard]] nlohmann::json describe() const;

 private:
  friend BetaContext make_context(std::optional<IntPoly> const& minpoly,
                                  std::vector<IntPoly> const& digits,
                                  ContextOptions const& options);
  void compute_numeric();

  Mode mode_ = Mode::algebraic;
  bool inverted_ = false;
  bool blocked_ = false;
  bool self_reciprocal_ = false;
  int precision_ = 12;
  std::optional<MinPoly> minpoly_;
  std::optional<MinPoly> user_minpoly_;
  std::size_t dim_ = 0;
  std::vector<FieldElem> digits_;
  std::vector<IntPoly> user_digits_;
  std::vector<std::string> names_;
  std::vector<FieldElem> differences_;
  std::vector<Embedding> embeddings_;
  std::vector<Interval> prune_bounds_;
  PolyBounds poly_bounds_;
};

/// Build a context. `minpoly` empty means a transcendental base; digits are
/// integer polynomials in the user's β (or X).
BetaContext make_context(std::optional<IntPoly> const& minpoly,
                         std::vector<IntPoly> const& digits,
                         ContextOptions const& options = {});

/// Parse {"beta": {"minpoly": [...]} | "transcendental", "digits": [[...]],
/// "precision": n?, "names": [...]?}.
BetaContext context_from_json(nlohmann::json const& doc);

/// Multiply by the working base: x ↦ βx (reduced), or X·x.
FieldElem fe_mul_base(BetaContext const& ctx, FieldElem const& x);

/// Certified enclosure of |σ_i(x)|.
Interval fe_abs_at(BetaContext const& ctx, FieldElem const& x, std::size_t embedding);
ComplexInterval fe_embed(BetaContext const& ctx, FieldElem const& x, std::size_t embedding);

/// |a_d| · Π_{|γ|>1} |γ| over the conjugates of β.
Interval mahler_measure(BetaContext const& ctx);

}  // namespace betauto
