#ifndef RAFTRES_ERRORS_HPP_
#define RAFTRES_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace raftres {

// Invalid distribution parameters.
class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Lexical or grammatical error in Galileo input.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int col, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + message),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Structural violation found while lowering or validating a tree.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Importance arithmetic exceeded the 128-bit budget.
class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No pilot simulation ever left importance 0.
class NoAscentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Steady-state estimation saw no events where some were required.
class DegenerateBatchesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace raftres

#endif  // RAFTRES_ERRORS_HPP_
