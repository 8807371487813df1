#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "foelkit/chain.hpp"
#include "foelkit/comparison.hpp"
#include "foelkit/dense_ed.hpp"
#include "foelkit/energy_table.hpp"
#include "foelkit/pf_compare.hpp"
#include "foelkit/tl_engine.hpp"

namespace foel {

/// Adjacent-pair tolerance for ordering-of-energy-levels verdicts.
inline constexpr double kFoelTolerance = 1e-9;
/// Strictness tolerance for the increment and extension inequalities.
inline constexpr double kStrictTolerance = 1e-10;

enum class MethodChoice { Auto, Dense, Sector };

using SectorProvider =
    std::function<SparseSectorMatrix(const SpinChainSpec&, HalfInteger, SectorOptions)>;

struct SpectraOptions {
  MethodChoice method = MethodChoice::Auto;
  int64_t dense_limit = kDefaultDenseLimit;
  PowerIterOptions power;
  /// Hook for cached sector-matrix assembly; defaults to sector_hamiltonian.
  SectorProvider sector_provider;
};

struct SectorEnergy {
  double energy = 0.0;
  int64_t dimension = 0;
  SolveMethod method = SolveMethod::Sector;
};

/// Minimum energy and dimension of one highest-weight sector. Auto and Sector
/// assemble the sector matrix (diagrammatic for all-spin-1/2 chains) and
/// solve densely up to dimension 2000, by power iteration beyond; Dense goes
/// through the full-space eigendecomposition.
SectorEnergy min_energy_sector(const SpinChainSpec& chain, HalfInteger S,
                               const SpectraOptions& options = {});

/// Minimum energies for every admissible S, descending.
EnergyTable energy_table(const SpinChainSpec& chain,
                         const SpectraOptions& options = {});

struct FoelViolation {
  HalfInteger S_low, S_high;  // adjacent admissible pair, S_low < S_high
  double e_low = 0.0, e_high = 0.0;
};

/// Verdict on ferromagnetic ordering of energy levels: E(H, S) must decrease
/// strictly as S grows across admissible spins.
struct FoelReport {
  EnergyTable table;
  CompareStatus status = CompareStatus::HoldsStrict;
  std::optional<FoelViolation> first_violation;  // first tie or violation
  std::vector<FoelViolation> violations;         // every tie or violation
};

FoelReport foel_check(const SpinChainSpec& chain, const SpectraOptions& options = {});

/// Verifies, along the whole incremental sequence of the chain: the Case I
/// operator inequality H_{k+1} >= H_k (x) I, the Case II operator identity
/// through the last-two-site projection, and the strict energy drop
/// E(H_{k+1}, S+1/2) < E(H_k, S) for every sub-maximal admissible S.
std::vector<ComparisonVerdict> increment_relations_check(
    const SpinChainSpec& chain, const SpectraOptions& options = {});

/// Verifies E(H, S_max - n) > E(H', S_max' - n) for an end-extension H' of H,
/// for every n >= 1 with both sectors admissible.
std::vector<ComparisonVerdict> extension_mono_check(
    const SpinChainSpec& chain, const SpinChainSpec& extension,
    const SpectraOptions& options = {});

/// E(H, S_max - 1): the energy gap above the ferromagnetic ground multiplet.
double spectral_gap(const SpinChainSpec& chain, const SpectraOptions& options = {});

/// All eigenvalues of H restricted to the spin-S highest-weight sector,
/// ascending. Full spectra are limited to sector dimension 2000.
std::vector<double> sector_spectrum(const SpinChainSpec& chain, HalfInteger S,
                                    const SpectraOptions& options = {});

/// All (S, eigenvalue) pairs below e_max, walking sectors downward from
/// S_max and stopping at the first sector whose minimum reaches e_max; the
/// ordering property guarantees the list is complete.
std::vector<std::pair<HalfInteger, double>> eigenvalues_below(
    const SpinChainSpec& chain, double e_max, const SpectraOptions& options = {});

/// Ordering verdicts for the spin-1 bilinear-biquadratic chain of length L
/// across biquadratic coefficients.
std::vector<std::pair<double, FoelReport>> biquadratic_sweep(
    int64_t L, const std::vector<double>& t_values,
    const SpectraOptions& options = {});

}  // namespace foel
