#pragma once

#include <cstdint>
#include <vector>

#include "foelkit/half_integer.hpp"

namespace foel {

enum class ModelKind { Heisenberg, BilinearBiquadratic };

/// Nearest-neighbour interaction family. The bilinear-biquadratic model is
/// defined for spin-1 chains only and uses unit couplings.
struct Model {
  ModelKind kind = ModelKind::Heisenberg;
  double biquadratic_t = 0.0;

  static Model heisenberg() { return {ModelKind::Heisenberg, 0.0}; }
  static Model bilinear_biquadratic(double t) {
    return {ModelKind::BilinearBiquadratic, t};
  }

  friend bool operator==(const Model&, const Model&) = default;
};

/// An open chain of spins with positive bond couplings; the problem instance
/// everything else operates on. Immutable after construction.
class SpinChainSpec {
 public:
  /// Throws std::invalid_argument unless spins are >= 1/2, couplings are
  /// positive with length L-1, and a biquadratic model only sees spin-1 sites.
  SpinChainSpec(std::vector<HalfInteger> spins, std::vector<double> couplings,
                Model model = Model::heisenberg());

  const std::vector<HalfInteger>& spins() const { return spins_; }
  const std::vector<double>& couplings() const { return couplings_; }
  const Model& model() const { return model_; }

  int64_t length() const { return static_cast<int64_t>(spins_.size()); }
  HalfInteger spin(int64_t site) const { return spins_[static_cast<size_t>(site)]; }

  /// Total strand count 2*S_max; the number of constituent spin-1/2 variables.
  int64_t strand_count() const;

  /// Product of the local dimensions, saturating at INT64_MAX.
  int64_t hilbert_dim() const;

  bool all_spin_half() const;

  friend bool operator==(const SpinChainSpec&, const SpinChainSpec&) = default;

 private:
  std::vector<HalfInteger> spins_;
  std::vector<double> couplings_;
  Model model_;
};

/// One step of the incremental construction: either a new spin-1/2 site is
/// appended (CaseI) or the last site's magnitude grows by 1/2 (CaseII).
/// The leading element of a sequence is the single-spin start.
struct IncrementStep {
  enum class Kind { Start, CaseI, CaseII };
  Kind kind = Kind::Start;
  SpinChainSpec chain;
};

/// Maximal total spin S_max = sum of the site spins.
HalfInteger max_total_spin(const SpinChainSpec& chain);

/// Multiplicity d(chain, S) of the spin-S representation, computed by
/// left-to-right Clebsch-Gordan reduction. Zero exactly when S is not
/// admissible. Counts saturate at INT64_MAX for very long chains.
int64_t multiplicity(const SpinChainSpec& chain, HalfInteger S);

/// All S with multiplicity > 0, in descending order.
std::vector<HalfInteger> admissible_spins(const SpinChainSpec& chain);

/// The canonical incremental sequence from a single spin-1/2 to the given
/// chain: each site is appended as spin-1/2 (CaseI) and then grown in place
/// (CaseII) until it reaches its final magnitude. The returned list has
/// 2*S_max elements, the first of kind Start; couplings of intermediate
/// chains reuse the final chain's values on existing bonds.
std::vector<IncrementStep> build_sequence(const SpinChainSpec& chain);

}  // namespace foel
