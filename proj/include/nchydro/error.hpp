#pragma once

#include <stdexcept>
#include <string>

namespace nchydro {

// Error taxonomy shared by the C++ core, the C API and the CLI exit codes.
enum class Errc {
  parse_error,          // malformed expression / config text
  invalid_argument,     // bad sizes, indices, mode mismatches
  invariant_violation,  // a mathematical precondition failed (not div-free, not self-adjoint, ...)
  resource_limit,       // a configured cap would be exceeded
  internal,             // "cannot happen" paths
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message) : std::runtime_error(message), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) { throw Error(code, message); }

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::parse_error: return "parse_error";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::invariant_violation: return "invariant_violation";
    case Errc::resource_limit: return "resource_limit";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

}  // namespace nchydro
