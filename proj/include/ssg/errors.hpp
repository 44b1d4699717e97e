#ifndef SSG_ERRORS_HPP
#define SSG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ssg {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& msg) : Error(msg) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

class ComposabilityError : public Error {
 public:
  explicit ComposabilityError(const std::string& msg) : Error(msg) {}
};

class UnknownVertex : public Error {
 public:
  explicit UnknownVertex(const std::string& msg) : Error(msg) {}
};

class UnknownEdge : public Error {
 public:
  explicit UnknownEdge(const std::string& msg) : Error(msg) {}
};

class AssumptionAViolated : public Error {
 public:
  explicit AssumptionAViolated(const std::string& msg) : Error(msg) {}
};

class WanderingMismatch : public Error {
 public:
  explicit WanderingMismatch(const std::string& msg) : Error(msg) {}
};

class PeriodicWordRejected : public Error {
 public:
  explicit PeriodicWordRejected(const std::string& msg) : Error(msg) {}
};

class NonPrimitiveWord : public Error {
 public:
  explicit NonPrimitiveWord(const std::string& msg) : Error(msg) {}
};

class UnsupportedInfiniteMultiplicity : public Error {
 public:
  explicit UnsupportedInfiniteMultiplicity(const std::string& msg) : Error(msg) {}
};

class InteriorTooSmall : public Error {
 public:
  explicit InteriorTooSmall(const std::string& msg) : Error(msg) {}
};

class NotIsometry : public Error {
 public:
  explicit NotIsometry(const std::string& msg) : Error(msg) {}
};

class WrongType : public Error {
 public:
  explicit WrongType(const std::string& msg) : Error(msg) {}
};

class UnsupportedRepStructure : public Error {
 public:
  explicit UnsupportedRepStructure(const std::string& msg) : Error(msg) {}
};

}  // namespace ssg

#endif
