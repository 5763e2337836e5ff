#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace padicfit {

// Base class for every error raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of an operation (composite prime,
// p-value outside [0,1], neighbourhood size of zero, unparseable number).
struct DomainError : Error {
  using Error::Error;
};

// --- wordcode ---
struct NulCharacterError : Error {
  using Error::Error;
};
struct InvalidCodePointError : Error {
  using Error::Error;
};
struct EqualWordsError : Error {
  using Error::Error;
};

// --- regress ---
struct TooFewPointsError : Error {
  using Error::Error;
};
struct DegenerateXError : Error {
  using Error::Error;
};
// A local or global fit could not produce a line; downstream this counts as
// an incorrect prediction, never an abort.
struct FitFailedError : Error {
  using Error::Error;
};
// The predicted value is not a non-negative integer that decodes to a word.
struct PredictionNotAWordError : Error {
  using Error::Error;
};

// --- corpus / report parsing ---
struct EncodingError : Error {
  using Error::Error;
};
struct MalformedRowError : Error {
  MalformedRowError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};
struct EmptyFieldError : Error {
  EmptyFieldError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

// --- harness ---
struct CorpusTooSmallError : Error {
  using Error::Error;
};
struct NoRecordsError : Error {
  using Error::Error;
};

// --- stats ---
struct EmptyInputError : Error {
  using Error::Error;
};
struct NoOverlappingLanguagesError : Error {
  using Error::Error;
};

}  // namespace padicfit
