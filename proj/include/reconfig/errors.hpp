#pragma once

#include <stdexcept>
#include <string>

namespace reconfig {

/// Malformed or out-of-range input (bad vertex id, non-independent set, bad file).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction or algorithm refused because a stated precondition does not hold.
/// The message names the violated condition.
class precondition_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by operations that need a fully explored state space when the
/// exploration hit its node cap.
class capped_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reconfig
