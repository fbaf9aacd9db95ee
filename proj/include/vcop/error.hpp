#pragma once

#include <stdexcept>
#include <string>

namespace vcop {

// Fatal library error; diagnostics that are recoverable travel as data, not
// as exceptions.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vcop
