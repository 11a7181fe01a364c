#include "betauto/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "betauto/error.hpp"

namespace betauto {

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(IntPoly const& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i] != 0) return i;
  }
  return -1;
}

int degree(RatPoly const& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i] != 0) return i;
  }
  return -1;
}

IntPoly make_int_poly(std::vector<long long> const& coeffs) {
  IntPoly p;
  p.reserve(coeffs.size());
  for (auto c : coeffs) p.emplace_back(c);
  trim(p);
  return p;
}

RatPoly to_rational(IntPoly const& p) {
  RatPoly out;
  out.reserve(p.size());
  for (auto const& c : p) out.emplace_back(c);
  return out;
}

IntPoly derivative(IntPoly const& p) {
  IntPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<long>(i));
  trim(out);
  return out;
}

IntPoly reversed(IntPoly const& p) {
  IntPoly out(p.rbegin(), p.rend());
  trim(out);
  return out;
}

RatDivision divide(RatPoly const& a, RatPoly const& b) {
  RatPoly den = b;
  trim(den);
  if (den.empty()) throw Error(Errc::invalid_argument, "polynomial division by zero");
  RatPoly rem = a;
  trim(rem);
  int const db = degree(den);
  RatPoly quo;
  if (degree(rem) >= db) quo.assign(rem.size() - den.size() + 1, Rational(0));
  while (degree(rem) >= db) {
    int const dr = degree(rem);
    Rational const f = rem[dr] / den[db];
    quo[dr - db] = f;
    for (int i = 0; i <= db; ++i) rem[dr - db + i] -= f * den[i];
    trim(rem);
  }
  trim(quo);
  return {quo, rem};
}

RatPoly gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly r = divide(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational const lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

bool divides(IntPoly const& divisor, IntPoly const& p) {
  return divide(to_rational(p), to_rational(divisor)).remainder.empty();
}

bool is_self_reciprocal(IntPoly const& p) {
  IntPoly q = p;
  trim(q);
  auto const n = q.size();
  bool palin = true;
  bool anti = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i] != q[n - 1 - i]) palin = false;
    if (q[i] != -q[n - 1 - i]) anti = false;
  }
  return palin || anti;
}

Interval evaluate(IntPoly const& p, Interval const& x) {
  Interval acc(0.0, x.precision());
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = acc * x + Interval::from_int(*it, x.precision());
  }
  return acc;
}

ComplexInterval evaluate(IntPoly const& p, ComplexInterval const& z) {
  auto const prec = z.re.precision();
  ComplexInterval acc{Interval(0.0, prec), Interval(0.0, prec)};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = acc * z;
    acc.re = acc.re + Interval::from_int(*it, prec);
  }
  return acc;
}

namespace {

template <typename Coeff>
std::string format_poly(std::vector<Coeff> const& p, std::string_view var) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    Coeff c = p[i];
    if (c == 0) continue;
    bool const neg = c < 0;
    if (neg) c = -c;
    if (neg) {
      os << '-';
    } else if (!first) {
      os << '+';
    }
    if (i == 0 || c != 1) {
      std::string s = c.str();
      bool const fraction = s.find('/') != std::string::npos;
      if (fraction && i > 0) {
        os << '(' << s << ')';
      } else {
        os << s;
      }
    }
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  if (first) return "0";
  return os.str();
}

}  // namespace

std::string to_string(IntPoly const& p, std::string_view var) {
  return format_poly(p, var);
}

std::string to_string(RatPoly const& p, std::string_view var) {
  return format_poly(p, var);
}

}  // namespace betauto
