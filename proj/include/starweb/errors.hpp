#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace starweb {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Malformed input to an operation (bad set mapping, bad pins, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Every point of a box is a unit point, so no point off Z can be picked.
// Only reachable at finite dimension.
class BoxInsideZ : public Error {
 public:
  BoxInsideZ(std::string box, std::string what)
      : Error(std::move(what)), box_(std::move(box)) {}
  const std::string& box() const noexcept { return box_; }

 private:
  std::string box_;
};

// A singleton free class {alpha} has no spare coordinate to switch on.
class SingletonUnfixable : public Error {
 public:
  SingletonUnfixable(std::size_t alpha, std::string what)
      : Error(std::move(what)), alpha_(alpha) {}
  std::size_t alpha() const noexcept { return alpha_; }

 private:
  std::size_t alpha_;
};

class InvalidCover : public Error {
 public:
  InvalidCover(std::string certificate, std::string what)
      : Error(std::move(what)), certificate_(std::move(certificate)) {}
  const std::string& certificate() const noexcept { return certificate_; }

 private:
  std::string certificate_;
};

// Oracle enumeration horizon does not reach the stable level.
class HorizonTooSmall : public Error {
 public:
  HorizonTooSmall(std::size_t given, std::size_t required)
      : Error("horizon too small: " + std::to_string(given) + " < required " +
              std::to_string(required)),
        given_(given),
        required_(required) {}
  std::size_t given() const noexcept { return given_; }
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t given_;
  std::size_t required_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace starweb
