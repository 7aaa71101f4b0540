#pragma once

#include <stdexcept>

namespace ftc {

/// Input text or bytes that do not follow the documented format.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a structural requirement: a self-loop,
/// a disconnected graph, a fault set larger than the label budget, labels
/// from different stores, and so on.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration value outside the supported range.
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A guarantee of the construction did not hold at query time, e.g. the
/// syndrome decoder overflowed on a level where the hierarchy promises at
/// most K boundary edges.
class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ftc
