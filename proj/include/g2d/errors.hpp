#pragma once

#include <stdexcept>
#include <string>

namespace g2d {

/// Input is beyond what the implementation can handle (as opposed to being
/// mathematically invalid, which throws std::domain_error).
class capability_error : public std::runtime_error {
 public:
  explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace g2d
