#pragma once

#include <stdexcept>
#include <string>

namespace tmb {

// Error taxonomy mirrors the pipeline stages so the CLI can map failures
// to exit codes (parse 2, type 3, unsat 4, cap 5, everything else 1).
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Lexing/parsing failures: sentences, term syntax, formula syntax, model
// files, theory files.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Type checking, translation to first-order form, signature violations.
struct TypeError : Error {
  explicit TypeError(const std::string& msg) : Error(msg) {}
};

// No model exists within the size bound.
struct UnsatError : Error {
  explicit UnsatError(const std::string& msg) : Error(msg) {}
};

// Too many significant time points for the configured succession cap.
struct CapError : Error {
  explicit CapError(const std::string& msg) : Error(msg) {}
};

// Degenerate inputs to the perturbation pipeline (empty core domain).
struct DegenerateError : Error {
  explicit DegenerateError(const std::string& msg) : Error(msg) {}
};

// Unreadable files.
struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace tmb
