#ifndef SYMP_COMMON_HPP_
#define SYMP_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace symp {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Every failure the library reports derives from Error, so callers (the CLI in
// particular) can map the concrete type onto an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};
class NotDominated : public Error {
 public:
  using Error::Error;
};
class CapExceeded : public Error {
 public:
  using Error::Error;
};
class OutOfRange : public Error {
 public:
  using Error::Error;
};
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};
class CostGuard : public Error {
 public:
  using Error::Error;
};
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};
class NotSquarefree : public Error {
 public:
  using Error::Error;
};

}  // namespace symp

#endif  // SYMP_COMMON_HPP_
