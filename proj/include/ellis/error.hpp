// Exception types shared by every ellis module.
//
// Four kinds of failure are distinguished because the command line front end
// maps each one to its own exit code:
//
//   ParseError       malformed substitution text or JSON
//   ValidationError  well-formed input that violates a precondition
//                    (non-bijective, non-primitive, periodic, ...)
//   ResourceError    a configured size guard was hit
//   InternalError    a cross-check between two independent computations
//                    failed; this always indicates a bug

#ifndef ELLIS_ERROR_HPP_
#define ELLIS_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace ellis {

  class Error : public std::runtime_error {
   public:
    explicit Error(std::string const& what) : std::runtime_error(what) {}
    Error(std::string const& what, nlohmann::json details)
        : std::runtime_error(what), _details(std::move(details)) {}
    virtual char const* kind() const noexcept = 0;

    // Extra machine-readable context, null when there is none.
    nlohmann::json const& details() const noexcept {
      return _details;
    }

   private:
    nlohmann::json _details;
  };

  class ParseError : public Error {
   public:
    ParseError(std::string const& what, std::size_t line, std::size_t column)
        : Error(what + " (line " + std::to_string(line) + ", column "
                + std::to_string(column) + ")"),
          _line(line),
          _column(column) {}

    explicit ParseError(std::string const& what)
        : Error(what), _line(0), _column(0) {}

    char const* kind() const noexcept override {
      return "parse";
    }
    std::size_t line() const noexcept {
      return _line;
    }
    std::size_t column() const noexcept {
      return _column;
    }

   private:
    std::size_t _line;
    std::size_t _column;
  };

  class ValidationError : public Error {
   public:
    using Error::Error;
    char const* kind() const noexcept override {
      return "validation";
    }
  };

  class ResourceError : public Error {
   public:
    using Error::Error;
    char const* kind() const noexcept override {
      return "resource";
    }
  };

  class InternalError : public Error {
   public:
    using Error::Error;
    char const* kind() const noexcept override {
      return "internal";
    }
  };

  namespace detail {
    inline void check_internal(bool ok, std::string const& what) {
      if (!ok) {
        throw InternalError(what);
      }
    }
  }  // namespace detail

}  // namespace ellis

#endif  // ELLIS_ERROR_HPP_
