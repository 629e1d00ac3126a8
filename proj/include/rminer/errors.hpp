#ifndef RMINER_ERRORS_HPP_
#define RMINER_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rminer {

// Malformed schema descriptor or schema-level validation failure.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or missing data: unreadable files, missing columns, malformed
// pattern streams, model fit failures.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rminer

#endif  // RMINER_ERRORS_HPP_
