#pragma once

#include <stdexcept>
#include <string>

namespace sstcuts {

/// Malformed or inconsistent input: parse failures, dimension mismatches,
/// out-of-range indices, violated preconditions on user data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured cap or search budget was exceeded. Never replaced by a
/// silently truncated answer.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GroupTooLarge : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

/// An internal consistency check failed (e.g. a structural property that must
/// hold for valid inputs did not).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sstcuts
