#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <tuple>
#include <vector>

#include "foelkit/chain.hpp"
#include "foelkit/energy_table.hpp"
#include "foelkit/half_integer.hpp"

namespace foel {

/// Full tensor-product exact diagonalization for small chains. Everything in
/// this header builds explicit matrices of dimension prod(2*s_x+1), so each
/// entry point takes a hard cap on that dimension. The rest of the toolkit is
/// validated against these routines.

using DenseOperator = Eigen::MatrixXcd;

inline constexpr int64_t kDefaultDenseLimit = 4096;

/// Standard angular-momentum matrices in the |s, m> basis, m = s..-s.
struct SpinMatrices {
  HalfInteger s;
  Eigen::MatrixXcd sx, sy, sz;

  Eigen::MatrixXcd splus() const;   // sx + i sy
  Eigen::MatrixXcd sminus() const;  // sx - i sy
};

SpinMatrices spin_matrices(HalfInteger s);

/// The chain Hamiltonian as a dense matrix, ground-state energy shifted to 0.
/// Heisenberg: H = -sum_x J_x [ (S_x . S_{x+1}) / (s_x s_{x+1}) - 1 ].
/// Bilinear-biquadratic (spin-1, unit couplings):
///   H = sum_x (1 - S_x . S_{x+1}) + t (1 - (S_x . S_{x+1})^2).
DenseOperator hamiltonian_dense(const SpinChainSpec& chain,
                                int64_t dense_limit = kDefaultDenseLimit);

/// (sum_x S_x) . (sum_x S_x); eigenvalues are S(S+1) over admissible S.
DenseOperator casimir_total(const SpinChainSpec& chain,
                            int64_t dense_limit = kDefaultDenseLimit);

/// Orthogonal projector onto the total-spin-S eigenspace, built by polynomial
/// filtering of the Casimir across the admissible eigenvalues.
struct SectorProjector {
  HalfInteger S;
  DenseOperator projector;
};

SectorProjector sector_projector(const SpinChainSpec& chain, HalfInteger S,
                                 int64_t dense_limit = kDefaultDenseLimit);

/// Total raising, lowering and z-component operators (S+, S-, S3).
std::tuple<DenseOperator, DenseOperator, DenseOperator> ladder_operators(
    const SpinChainSpec& chain, int64_t dense_limit = kDefaultDenseLimit);

/// Minimum energy in every admissible total-spin sector, from one full
/// Hermitian eigendecomposition with Casimir classification of eigenvectors
/// (simultaneous diagonalization inside degenerate clusters).
EnergyTable min_energy_per_sector_dense(const SpinChainSpec& chain,
                                        int64_t dense_limit = kDefaultDenseLimit);

/// All d(chain, S) eigenvalues of H restricted to the highest-weight vectors
/// of total spin S, ascending. Computed inside the magnetization-S block by
/// Casimir filtering, independently of the sector-basis machinery.
std::vector<double> highest_weight_spectrum_dense(
    const SpinChainSpec& chain, HalfInteger S,
    int64_t dense_limit = kDefaultDenseLimit);

}  // namespace foel
