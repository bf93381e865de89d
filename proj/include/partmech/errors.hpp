#pragma once

#include <stdexcept>
#include <string>

namespace partmech {

enum class ErrorKind {
    InvalidArgument,     // structural problems: bad partition, bad config, bad parameters
    SupportExplosion,    // convolution output support would exceed the configured cap
    InstanceTooLarge,    // full outcome enumeration would exceed the configured cap
    OracleSizeExceeded,  // exact solver called beyond its item bound
    NoMassBelow,         // conditional expectation with zero conditioning mass
    FileFormat,          // unparseable or schema-violating input file
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace partmech
