#pragma once

#include <stdexcept>
#include <string>

namespace betauto {

enum class Errc {
  not_squarefree,
  unsupported_denominator,
  unit_circle_conjugate,
  empty_digits,
  duplicate_digits,
  mode_mismatch,
  invalid_argument,
  alphabet_mismatch,
  malformed_json,
  cap_exceeded,
  blocked,
  precision_exhausted,
  internal,
};

char const* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string const& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace betauto
