#pragma once

#include <stdexcept>
#include <string>

namespace carleman {

/// Base for every error raised by the library. The message is prefixed with
/// the module that raised it ("params: ...", "spectral: ...").
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// An exponent tuple failed validation; rule() names the violated inequality.
class ParamError : public Error {
 public:
  explicit ParamError(std::string rule) : Error("params", rule), rule_(std::move(rule)) {}
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string rule_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The discrete compact-support surrogate broke down (boundary layer not negligible).
class BoundaryError : public Error {
 public:
  using Error::Error;
};

}  // namespace carleman
