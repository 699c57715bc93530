#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hdr {

// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Evaluator produced a negative or non-finite mass.
class InvalidMassError : public Error {
  public:
    InvalidMassError(std::int64_t x, double mass)
        : Error("invalid mass at x = " + std::to_string(x) + ": " + std::to_string(mass)),
          x_(x), mass_(mass) {}
    std::int64_t element() const { return x_; }
    double mass() const { return mass_; }

  private:
    std::int64_t x_;
    double mass_;
};

// A PMF table listed the same element twice.
class DuplicateKeyError : public Error {
  public:
    explicit DuplicateKeyError(std::int64_t x)
        : Error("duplicate table entry for x = " + std::to_string(x)), x_(x) {}
    std::int64_t element() const { return x_; }

  private:
    std::int64_t x_;
};

// Total mass is incompatible with a proper probability distribution.
class ImproperPmfError : public Error {
  public:
    using Error::Error;
};

// Declared support bounds produce an empty support.
class EmptySupportError : public Error {
  public:
    using Error::Error;
};

// Sequence index outside the valid range (indices are 1-based).
class IndexError : public Error {
  public:
    using Error::Error;
};

// A custom sequence repeated an element within the visited prefix.
class DuplicateElementError : public Error {
  public:
    DuplicateElementError(std::int64_t x, std::uint64_t index)
        : Error("sequence repeats element " + std::to_string(x) + " at index " +
                std::to_string(index)),
          x_(x), index_(index) {}
    std::int64_t element() const { return x_; }
    std::uint64_t index() const { return index_; }

  private:
    std::int64_t x_;
    std::uint64_t index_;
};

// The solver hit its iteration cap before the termination condition held.
class TerminationError : public Error {
  public:
    TerminationError(std::uint64_t cap, double out_prob, double min_prob)
        : Error("termination not reached within " + std::to_string(cap) +
                " visited elements (out_prob = " + std::to_string(out_prob) +
                ", min_prob = " + std::to_string(min_prob) + ")"),
          out_prob_(out_prob), min_prob_(min_prob) {}
    double out_prob() const { return out_prob_; }
    double min_prob() const { return min_prob_; }

  private:
    double out_prob_;
    double min_prob_;
};

// Requested solution enumeration exceeds the configured cap.
class EnumerationTooLargeError : public Error {
  public:
    using Error::Error;
};

// Malformed distribution spec or table text; carries the offending position.
class ParseError : public Error {
  public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

// A documented precondition was violated by the caller.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

}  // namespace hdr
