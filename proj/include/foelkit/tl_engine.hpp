#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "foelkit/arc_basis.hpp"
#include "foelkit/chain.hpp"
#include "foelkit/comparison.hpp"
#include "foelkit/sparse_matrix.hpp"

namespace foel {

/// One term of a diagrammatic expansion.
struct DiagramWeight {
  ArcDiagram diagram;
  double weight = 0.0;
};

/// Graphical action of the bond operator h on an arc diagram, for all-spin-1/2
/// chains (strand x = site x, bond between sites x and x+1, 0-based):
///   - both strands unpaired: zero;
///   - the composition with the cup-cap generator closes a loop (the bond arc
///     is already present): weight 2 on the same diagram;
///   - otherwise: weight -1 on the rewired diagram.
/// The Hamiltonian bond term contributes 2*J_x times these weights.
std::vector<DiagramWeight> apply_bond(const ArcDiagram& diagram, int64_t x,
                                      const SpinChainSpec& chain);

/// One step of the symmetrizer recursion: the (2s+1)-strand projector equals
/// the identity-extended 2s-strand projector plus a turn-back term with
/// coefficient 2s/(2s+1).
struct JonesWenzlStep {
  int64_t strands = 0;  // 2s+1, the reduced projector's width
  double turnback_coefficient = 0.0;
};

JonesWenzlStep jones_wenzl_reduce(HalfInteger s);

/// A planar (n, n) Temperley-Lieb diagram: a non-crossing perfect matching of
/// n bottom endpoints (0..n-1) and n top endpoints (n..2n-1).
struct TLDiagram {
  int64_t n = 0;
  std::vector<int64_t> partner;  // size 2n

  static TLDiagram identity(int64_t n);
  static TLDiagram generator(int64_t n, int64_t i);  // cup-cap e_i

  friend bool operator==(const TLDiagram&, const TLDiagram&) = default;
  friend auto operator<=>(const TLDiagram&, const TLDiagram&) = default;
};

/// upper o lower with every closed loop contributing a factor written to
/// loop_factor (2 per loop).
TLDiagram tl_compose(const TLDiagram& upper, const TLDiagram& lower,
                     double& loop_factor);

using TLOperatorSum = std::vector<std::pair<TLDiagram, double>>;

/// The n-strand symmetrizer expanded over the diagram basis via the recursion
/// above (loop weight 2). Each recursion level strips one strand.
TLOperatorSum jones_wenzl_projector(int64_t n);

/// Tensor realization of a single diagram on (C^2)^(x n): caps contract with
/// the unnormalized singlet, cups insert it, through-strands are identity
/// wires. Note that matrix products of realizations realize generator words,
/// not composed diagrams: straightening a zig-zag costs a sign under this
/// convention, while the abstract algebra above absorbs it.
Eigen::MatrixXd tl_diagram_matrix(const TLDiagram& d);

/// The n-strand symmetrizer built on (C^2)^(x n) through the same one-strand
/// reduction as the diagram expansion, with generators realized by the
/// unnormalized singlet. Equals the symmetric-group projector.
Eigen::MatrixXd jones_wenzl_matrix(int64_t n);

struct SectorOptions {
  enum class Path { Auto, Diagrammatic, Expansion };
  Path path = Path::Auto;
  int64_t dense_limit = 4096;
};

/// The sector Hamiltonian in the arc-diagram basis: diagrammatic for
/// all-spin-1/2 chains, otherwise by expanding the basis, applying the bond
/// operators and solving the Gram system for the coefficients.
SparseSectorMatrix sector_hamiltonian(const SpinChainSpec& chain, HalfInteger S,
                                      SectorOptions options = {});

/// Checks every off-diagonal entry against <= 1e-12; violations are reported
/// with their (row, col) location.
ComparisonVerdict offdiag_nonpositive_check(const SparseSectorMatrix& m);

/// Entrywise domination check across one chain increment: the grown chain's
/// matrix, restricted to the embedded images, must not exceed the small
/// chain's matrix. Strict decreases are reported as witnesses.
ComparisonVerdict compare_embedded(const SparseSectorMatrix& m_small,
                                   const SparseSectorMatrix& m_large,
                                   const std::vector<int64_t>& embedding,
                                   double tolerance = 1e-10);

}  // namespace foel
