#pragma once

#include <stdexcept>
#include <string>

namespace kzm {

// Every library failure carries a machine-readable kind; the CLI reports it
// verbatim in its {"error": {"kind", "message"}} object.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct ConfigurationError : Error {
  explicit ConfigurationError(const std::string& m) : Error("configuration", m) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& m) : Error("domain", m) {}
};
struct ShapeError : Error {
  explicit ShapeError(const std::string& m) : Error("shape", m) {}
};
struct SingularityError : Error {
  explicit SingularityError(const std::string& m) : Error("singularity", m) {}
};
struct ConsistencyError : Error {
  explicit ConsistencyError(const std::string& m) : Error("consistency", m) {}
};
struct ViolationError : Error {
  explicit ViolationError(const std::string& m) : Error("violation", m) {}
};

}  // namespace kzm
