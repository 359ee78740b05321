#ifndef TEAMLOGIC_ERROR_H_
#define TEAMLOGIC_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace teamlogic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lexing or parsing failure in any of the text formats.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A value violates a structural invariant (negation discipline, arity,
// undeclared symbol, out-of-range tuple, ...).
class WellFormednessError : public Error {
 public:
  using Error::Error;
};

// Substitution would capture a variable of the substituted term.
class CaptureError : public Error {
 public:
  explicit CaptureError(const std::string& binder)
      : Error("substitution captured by binder " + binder), binder_(binder) {}
  const std::string& binder() const { return binder_; }

 private:
  std::string binder_;
};

// The evaluator exhausted its node budget. Never means "false".
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// Input has the wrong shape for an operation (not a sentence, not in
// normal form, ...).
class ShapeError : public Error {
 public:
  using Error::Error;
};

}  // namespace teamlogic

#endif  // TEAMLOGIC_ERROR_H_
