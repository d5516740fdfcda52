#pragma once

#include <stdexcept>
#include <string>

namespace share {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File and socket failures; mapped to their own exit code by the CLI.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace share
