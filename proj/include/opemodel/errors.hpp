#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace opemodel {

// Base class for all domain errors.  `kind` is a stable machine-readable tag
// that the CLI echoes in error reports.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define OPEMODEL_DEFINE_ERROR(ClassName, tag)                 \
  class ClassName : public Error {                            \
  public:                                                     \
    explicit ClassName(const std::string& message)            \
        : Error(tag, message) {}                              \
  }

OPEMODEL_DEFINE_ERROR(MalformedTable, "MalformedTable");
OPEMODEL_DEFINE_ERROR(NotComposable, "NotComposable");
OPEMODEL_DEFINE_ERROR(NotSymmetric, "NotSymmetric");
OPEMODEL_DEFINE_ERROR(InvalidArgument, "InvalidArgument");
OPEMODEL_DEFINE_ERROR(InvalidOperad, "InvalidOperad");
OPEMODEL_DEFINE_ERROR(InvalidFunctor, "InvalidFunctor");
OPEMODEL_DEFINE_ERROR(InvalidCategory, "InvalidCategory");
OPEMODEL_DEFINE_ERROR(NotTrivialCofibration, "NotTrivialCofibration");
OPEMODEL_DEFINE_ERROR(NotOverStar, "NotOverStar");
OPEMODEL_DEFINE_ERROR(SquareNotCommutative, "SquareNotCommutative");
OPEMODEL_DEFINE_ERROR(NotApplicable, "NotApplicable");
OPEMODEL_DEFINE_ERROR(SearchBudgetExceeded, "SearchBudgetExceeded");
OPEMODEL_DEFINE_ERROR(ColorMismatch, "ColorMismatch");
OPEMODEL_DEFINE_ERROR(ProfileMismatch, "ProfileMismatch");
OPEMODEL_DEFINE_ERROR(Unstable, "Unstable");
OPEMODEL_DEFINE_ERROR(IncompatibleMaps, "IncompatibleMaps");
OPEMODEL_DEFINE_ERROR(NotCofibration, "NotCofibration");
OPEMODEL_DEFINE_ERROR(ParseError, "ParseError");
OPEMODEL_DEFINE_ERROR(SemanticError, "SemanticError");

#undef OPEMODEL_DEFINE_ERROR

}  // namespace opemodel
