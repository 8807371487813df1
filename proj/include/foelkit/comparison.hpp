#pragma once

#include <limits>
#include <string>
#include <vector>

namespace foel {

enum class CompareStatus { HoldsStrict, HoldsNonStrict, Violated, PreconditionFailed };

std::string to_string(CompareStatus status);

struct Witness {
  std::string location;
  double value = 0.0;
};

/// Structured outcome of a matrix or energy comparison. Every verdict carries
/// at least one witness describing what was measured; e_small/e_large hold
/// minimum eigenvalues when the check computed them (NaN otherwise).
struct ComparisonVerdict {
  CompareStatus status = CompareStatus::HoldsNonStrict;
  std::vector<Witness> witnesses;
  double e_small = std::numeric_limits<double>::quiet_NaN();
  double e_large = std::numeric_limits<double>::quiet_NaN();

  bool holds() const {
    return status == CompareStatus::HoldsStrict ||
           status == CompareStatus::HoldsNonStrict;
  }
};

}  // namespace foel
