#pragma once

#include <stdexcept>
#include <string>

namespace iiq {

// Base class for every error the engine raises. CLI catches this and
// turns it into a one-line diagnostic plus a non-zero exit status.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid or out-of-range configuration. Messages name the offending key.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Malformed input file (event log, snapshot, results CSV). Messages carry
// the line number where that is meaningful.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace iiq
