#include "foelkit/energy_table.hpp"

#include "foelkit/errors.hpp"

namespace foel {

std::string to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::Dense:
      return "dense";
    case SolveMethod::Sector:
      return "sector";
    case SolveMethod::PowerIteration:
      return "power";
  }
  return "unknown";
}

const EnergyEntry* EnergyTable::find(HalfInteger S) const {
  for (const auto& e : entries) {
    if (e.S == S) return &e;
  }
  return nullptr;
}

double EnergyTable::energy(HalfInteger S) const {
  const EnergyEntry* e = find(S);
  if (e == nullptr) throw NotAdmissible("S = " + S.str() + " not in table");
  return e->energy;
}

}  // namespace foel
