#pragma once

#include <stdexcept>
#include <string>

namespace predict {

// Base of every error thrown by the library. Callers that only need to log
// and skip an episode catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PREDICT_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

PREDICT_DEFINE_ERROR(MalformedPreference);
PREDICT_DEFINE_ERROR(ContradictionError);
PREDICT_DEFINE_ERROR(ConfigError);
PREDICT_DEFINE_ERROR(PlanningError);
PREDICT_DEFINE_ERROR(MissingFile);
PREDICT_DEFINE_ERROR(EmptyDocument);
PREDICT_DEFINE_ERROR(ExtractionError);
PREDICT_DEFINE_ERROR(BackendError);
PREDICT_DEFINE_ERROR(StrictScriptMiss);
PREDICT_DEFINE_ERROR(UnboundPlaceholder);
PREDICT_DEFINE_ERROR(MarkerNotFound);
PREDICT_DEFINE_ERROR(FenceNotFound);
PREDICT_DEFINE_ERROR(ParseError);
PREDICT_DEFINE_ERROR(DegenerateRange);
PREDICT_DEFINE_ERROR(ZeroVariance);
PREDICT_DEFINE_ERROR(MissingBaseline);

#undef PREDICT_DEFINE_ERROR

}  // namespace predict
