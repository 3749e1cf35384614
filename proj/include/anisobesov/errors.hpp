#pragma once

#include <stdexcept>
#include <string>

namespace anisobesov {

// Bad parameters or malformed input. The CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& what)
      : std::invalid_argument(what) {}
};

// A numerical guard tripped: Nyquist violation, non-negligible spectral
// residual, noise floor, degenerate fit. The CLI maps this to exit code 3.
class guard_error : public std::runtime_error {
 public:
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace anisobesov
