#pragma once

#include <stdexcept>
#include <string>

namespace dstab {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (rational literals, matrix documents, expressions).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Dimension mismatches, out-of-range indices, non-square input.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

// Division by zero or an elimination/Schur pivot that is exactly zero.
class SingularError : public Error {
 public:
  explicit SingularError(const std::string& what) : Error(what) {}
};

// Floating-point eigenvalue iteration failed to converge within the cap.
class EigenvalueError : public Error {
 public:
  explicit EigenvalueError(const std::string& what) : Error(what) {}
};

// A documented size guard was exceeded (minor tables, symbolic expansion,
// exhaustive chain search).
class GuardError : public Error {
 public:
  explicit GuardError(const std::string& what) : Error(what) {}
};

}  // namespace dstab
