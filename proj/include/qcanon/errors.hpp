#ifndef QCANON_ERRORS_HPP
#define QCANON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcanon {

// A computed value contradicts a guaranteed property: an upstream bug or a
// corrupt input, never a user mistake.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The request exceeds a configured size limit (rank, height, word space).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qcanon

#endif
