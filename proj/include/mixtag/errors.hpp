#ifndef MIXTAG_ERRORS_HPP
#define MIXTAG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mixtag {

// Malformed input data: corpus files, lexicon files, templates, model files,
// shape/layout mismatches. Messages carry line numbers where applicable.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration (flag out of range, inconsistent options).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failure (non-finite objective or weights).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mixtag

#endif  // MIXTAG_ERRORS_HPP
