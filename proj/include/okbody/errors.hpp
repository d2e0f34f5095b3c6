// Error taxonomy shared by the library and the CLI exit-code mapping.
#pragma once

#include <stdexcept>
#include <string>

namespace okb {

// Bad model data, non-pseudo-effective input, failed internal audit, ...
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// The slice formula is not applicable: some Mori chamber met by the t-path is
// neither an identity small modification nor disjoint from the flag surface.
struct AdmissibilityError : std::runtime_error {
  explicit AdmissibilityError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace okb
