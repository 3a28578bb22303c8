#pragma once

#include <stdexcept>

namespace zetastar {

/// Input outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// An all-zero digit stream where a value in (0,1] is required.
struct ZeroValueError : DomainError {
  using DomainError::DomainError;
};

/// A digit stream that is not in canonical (non-terminating) form.
struct NonCanonicalError : DomainError {
  using DomainError::DomainError;
};

/// An index that violates the k1 >= 2 admissibility condition.
struct InadmissibleIndexError : DomainError {
  using DomainError::DomainError;
};

/// A series formula applied to digits that do not satisfy its hypotheses.
struct HypothesisUnmetError : DomainError {
  using DomainError::DomainError;
};

}  // namespace zetastar
