#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>

#include "foelkit/chain.hpp"

namespace foel {

/// Real-arithmetic actions of the chain operators on vectors in the
/// tensor-product site basis (index = sum over sites of k_x * stride_x with
/// k_x = s_x - m_x). All model matrix elements are real in this basis.

/// S_x . S_{x+1} applied to v.
Eigen::VectorXd apply_bond_ss(const SpinChainSpec& chain, int64_t x,
                              const Eigen::VectorXd& v);

/// The full chain Hamiltonian (Heisenberg or bilinear-biquadratic) applied to v.
Eigen::VectorXd apply_hamiltonian(const SpinChainSpec& chain,
                                  const Eigen::VectorXd& v);

/// Assembled sparse Hamiltonian in the site basis.
Eigen::SparseMatrix<double> hamiltonian_sparse(const SpinChainSpec& chain);

/// Total ladder and z-component actions.
Eigen::VectorXd apply_splus_total(const SpinChainSpec& chain, const Eigen::VectorXd& v);
Eigen::VectorXd apply_sminus_total(const SpinChainSpec& chain, const Eigen::VectorXd& v);
Eigen::VectorXd apply_sz_total(const SpinChainSpec& chain, const Eigen::VectorXd& v);

/// Total-spin Casimir via S-S+ + S3(S3+1).
Eigen::VectorXd apply_casimir_total(const SpinChainSpec& chain, const Eigen::VectorXd& v);

}  // namespace foel
