#pragma once

#include <stdexcept>
#include <string>

namespace modred {

/// Malformed or out-of-domain input. The CLI maps it to exit code 1.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in a system file, with a 1-based source position.
class parse_error : public input_error {
 public:
  parse_error(const std::string& what, int line, int column)
      : input_error(what + " at line " + std::to_string(line) + ", column " +
                    std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// An enumeration budget or a search cap was hit. Exit code 2.
class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed object failed a postcondition that the theory guarantees.
/// Exit code 3.
class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Composition produced an identically-zero denominator.
class pole_collapse : public input_error {
 public:
  using input_error::input_error;
};

}  // namespace modred
