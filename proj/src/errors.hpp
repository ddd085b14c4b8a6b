#pragma once

#include <stdexcept>
#include <string>

namespace qtn {

enum class ErrorCode {
  invalid_argument = 1,
  degenerate_energy,
  near_resonance,
  step_too_large,
  mapping,
  insufficient_transmission,
  scheme_unstable,
  parse,
  io,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace qtn
