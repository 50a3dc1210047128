#pragma once

#include <stdexcept>
#include <string>

namespace cleanpair {

// Base for every failure raised by the library. `kind()` is a stable tag
// (used in JSON reports and CLI messages); what() carries the detail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CLEANPAIR_ERROR(Name)                                   \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& detail) : Error(#Name, detail) {} \
  }

// exactmath
CLEANPAIR_ERROR(DegreeError);
CLEANPAIR_ERROR(UndefinedValuation);
CLEANPAIR_ERROR(PoleAtPlace);
CLEANPAIR_ERROR(DivisionByZero);
CLEANPAIR_ERROR(VariableMismatch);
CLEANPAIR_ERROR(RadicandMismatch);
CLEANPAIR_ERROR(DescentError);
CLEANPAIR_ERROR(NotIrreducible);

// ec_core
CLEANPAIR_ERROR(SingularCurve);
CLEANPAIR_ERROR(ModelError);
CLEANPAIR_ERROR(ShapeError);
CLEANPAIR_ERROR(TorsionError);
CLEANPAIR_ERROR(NotOnCurve);

// family
CLEANPAIR_ERROR(SMismatch);
CLEANPAIR_ERROR(NotInU);
CLEANPAIR_ERROR(DegeneratePair);

// kummer_cert
CLEANPAIR_ERROR(TwoTorsionError);
CLEANPAIR_ERROR(NotOnFiber);
CLEANPAIR_ERROR(NotSingular);
CLEANPAIR_ERROR(CuspNotSupported);
CLEANPAIR_ERROR(NodeIsTarget);
CLEANPAIR_ERROR(IrrationalParameter);
CLEANPAIR_ERROR(CertificateFormatError);

// ffheights
CLEANPAIR_ERROR(MinimalityError);
CLEANPAIR_ERROR(NotRationalSurface);
CLEANPAIR_ERROR(IdentityHeight);
CLEANPAIR_ERROR(DegenerateS);

#undef CLEANPAIR_ERROR

// search_cli: carries the 1-based line number of the offending input line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& detail)
      : Error("ParseError", "line " + std::to_string(line) + ": " + detail), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cleanpair
