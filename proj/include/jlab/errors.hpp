#ifndef JLAB_ERRORS_HPP_
#define JLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace jlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownSymbolError : Error {
  explicit UnknownSymbolError(const std::string& symbol)
      : Error("unknown operation symbol: " + symbol), symbol(symbol) {}
  std::string symbol;
};

struct ArityMismatchError : Error {
  ArityMismatchError(const std::string& symbol, int expected, int got)
      : Error("operation " + symbol + " expects " + std::to_string(expected) +
              " arguments, got " + std::to_string(got)) {}
};

struct SizeMismatchError : Error {
  using Error::Error;
};

struct ResourceLimitError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

struct InvalidAlgebraError : Error {
  using Error::Error;
};

struct VerificationFailedError : Error {
  using Error::Error;
};

struct StepValidationError : Error {
  StepValidationError(int step_index, const std::string& expected, const std::string& detail)
      : Error("step " + std::to_string(step_index) + " fails " + expected +
              (detail.empty() ? "" : ": " + detail)),
        step_index(step_index),
        expected(expected) {}
  int step_index;
  std::string expected;
};

// Raised when none of the encoded candidate readings of a construction
// validates; carries the first failing step of every candidate tried.
struct AmbiguousFormulaError : Error {
  explicit AmbiguousFormulaError(std::vector<std::string> failures)
      : Error(join(failures)), candidate_failures(std::move(failures)) {}
  std::vector<std::string> candidate_failures;

 private:
  static std::string join(const std::vector<std::string>& fs) {
    std::string out = "no candidate reading validates:";
    for (const auto& f : fs) out += "\n  " + f;
    return out;
  }
};

// The alvin-headed chain needs a bridge element between the endpoint and the
// head term's value; raised when exhaustive search finds none.
struct NoBridgeElementError : Error {
  using Error::Error;
};

}  // namespace jlab

#endif  // JLAB_ERRORS_HPP_
