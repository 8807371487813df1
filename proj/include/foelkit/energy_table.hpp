#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "foelkit/half_integer.hpp"

namespace foel {

/// How a sector minimum was obtained.
enum class SolveMethod { Dense, Sector, PowerIteration };

std::string to_string(SolveMethod method);

struct EnergyEntry {
  HalfInteger S;
  int64_t dimension = 0;  // highest-weight sector dimension d(chain, S)
  double energy = 0.0;
  SolveMethod method = SolveMethod::Dense;
};

/// Minimum energy per admissible total spin, sorted by descending S.
struct EnergyTable {
  std::vector<EnergyEntry> entries;

  const EnergyEntry* find(HalfInteger S) const;
  double energy(HalfInteger S) const;  // throws NotAdmissible if absent
};

}  // namespace foel
