#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "foelkit/chain.hpp"
#include "foelkit/half_integer.hpp"

namespace foel {

/// A product of ordered single-site Ising configurations: site x carries
/// downs_per_site[x] down-arrows (0..2*s_x), all downs before all ups within
/// the block of 2*s_x constituent strands.
struct OrderedIsingConfig {
  std::vector<int64_t> downs_per_site;
};

/// A basis vector of fixed total spin and magnetization, encoded as
/// non-crossing singlet arcs over the spin-1/2 strands plus unpaired strands.
/// Unpaired strands not listed in unpaired_down carry an up label.
struct ArcDiagram {
  int64_t strand_count = 0;
  std::vector<std::pair<int64_t, int64_t>> blocks;   // (first strand, length) per site
  std::vector<std::pair<int64_t, int64_t>> arcs;     // sorted pairs (i, j), i < j
  std::vector<int64_t> unpaired_down;                // sorted strand indices

  HalfInteger total_spin() const;       // S_max minus the number of arcs
  HalfInteger magnetization() const;    // S_max minus the total down count
  std::vector<int64_t> unpaired_up() const;
  int64_t site_of_strand(int64_t strand) const;

  /// Reconstructs the ordered Ising configuration the diagram encodes
  /// (arc right-endpoints and unpaired_down strands are the down arrows).
  OrderedIsingConfig config() const;

  /// Structural checks: arcs sorted and mutually non-crossing, no arc spans
  /// an unpaired strand, per-block labels ordered. Throws InconsistentDiagram.
  void validate() const;

  /// One-line rendering with 1-based strand indices:
  /// "S=1/2 arcs=(2,3) unpaired=1^... "; arrows are UTF-8.
  std::string str() const;

  friend bool operator==(const ArcDiagram&, const ArcDiagram&) = default;
  friend auto operator<=>(const ArcDiagram&, const ArcDiagram&) = default;
};

/// Runs the pairing procedure on an ordered Ising configuration: scan left to
/// right, matching every down-arrow to the nearest unpaired up-arrow on its
/// left. Total on valid configurations.
ArcDiagram pair_arcs(const OrderedIsingConfig& config, const SpinChainSpec& chain);

/// All highest-weight diagrams of total spin S (no unpaired down-arrow after
/// pairing), enumerated in descending lexicographic order of downs_per_site.
/// The count equals multiplicity(chain, S). Throws NotAdmissible when d = 0.
std::vector<ArcDiagram> enumerate_hw_basis(const SpinChainSpec& chain,
                                           HalfInteger S);

/// Expansion of a diagram over the tensor-product site basis.
struct TensorVector {
  int64_t dim = 0;
  std::vector<std::pair<int64_t, double>> amplitudes;  // sorted by index

  Eigen::VectorXd to_dense() const;
};

/// Replaces every arc by the unnormalized singlet (up-down minus down-up),
/// symmetrizes each site block and maps the block with k downs to the site
/// state |s, s-k>. The result is a simultaneous Casimir/S3 eigenvector.
/// Restricted to chains within the dense limit.
TensorVector expand_to_tensor(const ArcDiagram& diagram, const SpinChainSpec& chain,
                              int64_t dense_limit = 4096);

/// Inner products G_ab of the expanded diagrams; symmetric positive definite
/// for any enumerated sector.
Eigen::MatrixXd gram_matrix(const std::vector<ArcDiagram>& diagrams,
                            const SpinChainSpec& chain, int64_t dense_limit = 4096);

/// Image of a diagram under one chain increment: CaseI appends a one-strand
/// up block, CaseII widens the last block by one up strand. Arcs are
/// unchanged and the sector moves from S to S+1/2.
ArcDiagram embed_next(const ArcDiagram& diagram, const IncrementStep& step);

/// Positions of the embedded small-chain basis inside the enumeration of the
/// grown chain, for sector S -> S+1/2.
std::vector<int64_t> embedding_indices(const SpinChainSpec& small_chain,
                                       HalfInteger S, const IncrementStep& step);

}  // namespace foel
