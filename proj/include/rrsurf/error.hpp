#ifndef RRSURF_ERROR_HPP
#define RRSURF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rrsurf {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated series does not carry enough terms to answer the request.
/// `variable()` names the direction ("u" or "t") that ran out.
class insufficient_precision : public error {
 public:
  insufficient_precision(const std::string& variable, const std::string& what)
      : error("insufficient precision in " + variable + ": " + what), variable_(variable) {}
  const std::string& variable() const noexcept { return variable_; }

 private:
  std::string variable_;
};

/// Input is well-formed but outside what the desk-scale models support
/// (singular flags, oversized factor searches, unsupported lattice pairs).
class unsupported : public error {
 public:
  using error::error;
};

}  // namespace rrsurf

#endif  // RRSURF_ERROR_HPP
