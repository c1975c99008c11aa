#pragma once

#include <stdexcept>
#include <string>

namespace tcm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// integration / root finding
struct StepLimitExceeded : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// domain and argument validation
struct DomainError : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct ConstraintViolation : Error { using Error::Error; };
struct RelationViolated : Error { using Error::Error; };
struct UnknownInvariant : Error { using Error::Error; };
struct SingularReducedSpace : Error { using Error::Error; };
struct DegenerateLinearization : Error { using Error::Error; };

// monodromy pipeline
struct DegenerateBasis : Error { using Error::Error; };
struct StepCollapse : Error { using Error::Error; };
struct RoundingAmbiguous : Error { using Error::Error; };
struct NotUnimodular : Error { using Error::Error; };
struct NotReducible : Error { using Error::Error; };

// unfolding
struct NearDiscriminant : Error { using Error::Error; };

}  // namespace tcm
