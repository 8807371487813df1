#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "foelkit/comparison.hpp"
#include "foelkit/sparse_matrix.hpp"

namespace foel {

/// Dimension up to which minimum eigenvalues are computed densely; larger
/// matrices go through the shifted power iteration.
inline constexpr int64_t kDenseEigenLimit = 2000;

struct PowerIterOptions {
  int64_t max_iterations = 100000;
  double tolerance = 1e-10;  // residual, relative to max(1, |estimate|)
};

/// Minimum eigenvalue of a real-spectrum matrix. Symmetric matrices use a
/// self-adjoint solve, everything else the general real eigensolver.
double min_eigenvalue(const Eigen::MatrixXd& m);

/// Dense below kDenseEigenLimit, otherwise shifted power iteration on
/// c*I - M with c = max diagonal + 1. The shift makes the iteration matrix
/// entrywise nonnegative for non-positive off-diagonals, so its spectral
/// radius is c - E(M). Throws NoConvergence past the iteration budget.
double min_eigenvalue(const SparseSectorMatrix& m, PowerIterOptions options = {});

/// The iterative path regardless of size (dense input variant exists for the
/// cross-validation suites).
double min_eigenvalue_power(const SparseSectorMatrix& m, PowerIterOptions options = {});
double min_eigenvalue_power(const Eigen::MatrixXd& m, PowerIterOptions options = {});

/// Certificate that (c*I - B)^p is entrywise positive, established by boolean
/// reachability on the sparsity pattern with c = max diagonal + 1. Requires
/// non-positive off-diagonals; attained=false when no p <= dim works.
struct IrreducibilityCertificate {
  double shift = 0.0;
  int64_t power = 0;
  bool attained = false;
};

IrreducibilityCertificate irreducibility_certificate(const Eigen::MatrixXd& b);
IrreducibilityCertificate irreducibility_certificate(const SparseSectorMatrix& b);

/// The minimum-eigenvalue comparison lemma: for A (m x m) and B (n x n) with
/// n >= m, non-positive off-diagonals and B <= A entrywise on the leading
/// block, E(B) <= E(A); strict when m < n or some entry strictly decreases,
/// provided B carries an irreducibility certificate. Precondition failures
/// are reported in the verdict, never thrown.
ComparisonVerdict pf_compare(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                             double tolerance = 1e-10);

}  // namespace foel
