#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace posmon {

enum class Errc {
  cycle_detected,
  duplicate_label,
  unknown_label,
  too_large,
  not_an_upper_set,
  not_irreducible,
  not_monotone,
  poset_mismatch,
  arithmetic_overflow,
  not_applicable,
  search_bound_exceeded,
  out_of_range,
  unknown_element,
  not_prime,
  duplicate_prime,
  size_mismatch,
  ground_set_too_large,
  invalid_input,
  timeout,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace posmon
