#include "foelkit/pf_compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "foelkit/errors.hpp"

namespace foel {

namespace {

constexpr double kSignTol = 1e-12;

std::string entry_location(int64_t row, int64_t col) {
  return "(" + std::to_string(row + 1) + "," + std::to_string(col + 1) + ")";
}

// Power iteration for the spectral radius of the nonnegative matrix c*I - M,
// given through its action. Returns rho; the caller recovers E = c - rho.
template <typename Apply>
double shifted_spectral_radius(int64_t dim, double shift, Apply&& apply_m,
                               const PowerIterOptions& options) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(dim);
  v.normalize();
  Eigen::VectorXd w(dim);

  bool restarted = false;
  double best_residual = std::numeric_limits<double>::infinity();
  int64_t stale = 0;
  for (int64_t iter = 0; iter < options.max_iterations; ++iter) {
    w.setZero();
    apply_m(v, w);            // w = M v
    w = shift * v - w;        // w = (c I - M) v
    const double rho = v.dot(w);
    const double residual = (w - rho * v).template lpNorm<Eigen::Infinity>();
    if (residual <= options.tolerance * std::max(1.0, std::abs(rho))) {
      return rho;
    }
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;  // v was in the kernel: rho = 0 exactly
    v = w / norm;

    if (residual < 0.5 * best_residual) {
      best_residual = residual;
      stale = 0;
    } else if (++stale > 5000 && !restarted) {
      // One re-randomized restart guards against a start vector that is
      // orthogonal to the dominant eigenvector.
      std::mt19937 rng(12345);
      std::uniform_real_distribution<double> dist(0.0, 1.0);
      for (int64_t i = 0; i < dim; ++i) v(i) = dist(rng);
      v.normalize();
      restarted = true;
      stale = 0;
      best_residual = std::numeric_limits<double>::infinity();
    }
  }
  throw NoConvergence("power iteration did not reach tolerance " +
                      std::to_string(options.tolerance) + " within " +
                      std::to_string(options.max_iterations) + " iterations");
}

IrreducibilityCertificate certificate_from_pattern(
    int64_t dim, double shift, const std::vector<std::pair<int64_t, int64_t>>& edges) {
  IrreducibilityCertificate cert;
  cert.shift = shift;
  if (dim == 0) return cert;

  const size_t words = static_cast<size_t>((dim + 63) / 64);
  std::vector<uint64_t> adj(static_cast<size_t>(dim) * words, 0);
  auto set_bit = [&](std::vector<uint64_t>& rows, int64_t i, int64_t j) {
    rows[static_cast<size_t>(i) * words + static_cast<size_t>(j) / 64] |=
        uint64_t{1} << (j % 64);
  };
  for (int64_t i = 0; i < dim; ++i) set_bit(adj, i, i);  // positive diagonal
  for (const auto& [i, j] : edges) set_bit(adj, i, j);

  auto all_ones = [&](const std::vector<uint64_t>& rows) {
    for (int64_t i = 0; i < dim; ++i) {
      for (int64_t j = 0; j < dim; ++j) {
        const uint64_t word = rows[static_cast<size_t>(i) * words + static_cast<size_t>(j) / 64];
        if (!(word & (uint64_t{1} << (j % 64)))) return false;
      }
    }
    return true;
  };

  std::vector<uint64_t> reach = adj;
  for (int64_t p = 1; p <= dim; ++p) {
    if (all_ones(reach)) {
      cert.power = p;
      cert.attained = true;
      return cert;
    }
    // reach <- reach * adj (boolean)
    std::vector<uint64_t> next(reach.size(), 0);
    for (int64_t i = 0; i < dim; ++i) {
      for (int64_t j = 0; j < dim; ++j) {
        const uint64_t word = reach[static_cast<size_t>(i) * words + static_cast<size_t>(j) / 64];
        if (word & (uint64_t{1} << (j % 64))) {
          for (size_t k = 0; k < words; ++k) {
            next[static_cast<size_t>(i) * words + k] |=
                adj[static_cast<size_t>(j) * words + k];
          }
        }
      }
    }
    reach = std::move(next);
  }
  return cert;
}

}  // namespace

std::string to_string(CompareStatus status) {
  switch (status) {
    case CompareStatus::HoldsStrict:
      return "holds_strict";
    case CompareStatus::HoldsNonStrict:
      return "holds_non_strict";
    case CompareStatus::Violated:
      return "violated";
    case CompareStatus::PreconditionFailed:
      return "precondition_failed";
  }
  return "unknown";
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix must be square");
  if (m.rows() == 0) throw DimensionMismatch("matrix is empty");
  const bool symmetric = (m - m.transpose()).cwiseAbs().maxCoeff() == 0.0;
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  return solver.eigenvalues().real().minCoeff();
}

double min_eigenvalue(const SparseSectorMatrix& m, PowerIterOptions options) {
  if (m.dim <= kDenseEigenLimit) return min_eigenvalue(m.to_dense());
  return min_eigenvalue_power(m, options);
}

double min_eigenvalue_power(const SparseSectorMatrix& m, PowerIterOptions options) {
  const double shift = m.max_diagonal() + 1.0;
  const double rho = shifted_spectral_radius(
      m.dim, shift,
      [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { m.apply(x, y); },
      options);
  return shift - rho;
}

double min_eigenvalue_power(const Eigen::MatrixXd& m, PowerIterOptions options) {
  const double shift = m.diagonal().maxCoeff() + 1.0;
  const double rho = shifted_spectral_radius(
      m.rows(), shift,
      [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = m * x; }, options);
  return shift - rho;
}

IrreducibilityCertificate irreducibility_certificate(const Eigen::MatrixXd& b) {
  std::vector<std::pair<int64_t, int64_t>> edges;
  for (int64_t i = 0; i < b.rows(); ++i) {
    for (int64_t j = 0; j < b.cols(); ++j) {
      if (i != j && b(i, j) < 0.0) edges.emplace_back(i, j);
    }
  }
  const double shift = b.rows() == 0 ? 0.0 : b.diagonal().maxCoeff() + 1.0;
  return certificate_from_pattern(b.rows(), shift, edges);
}

IrreducibilityCertificate irreducibility_certificate(const SparseSectorMatrix& b) {
  std::vector<std::pair<int64_t, int64_t>> edges;
  for (const auto& t : b.triplets) {
    if (t.row != t.col && t.value < 0.0) edges.emplace_back(t.row, t.col);
  }
  return certificate_from_pattern(b.dim, b.max_diagonal() + 1.0, edges);
}

ComparisonVerdict pf_compare(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                             double tolerance) {
  ComparisonVerdict verdict;
  const int64_t m = a.rows();
  const int64_t n = b.rows();

  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    verdict.status = CompareStatus::PreconditionFailed;
    verdict.witnesses.push_back({"matrices must be square", 0.0});
    return verdict;
  }
  if (n < m) {
    verdict.status = CompareStatus::PreconditionFailed;
    verdict.witnesses.push_back({"size(B) < size(A)", static_cast<double>(n - m)});
    return verdict;
  }
  for (int64_t i = 0; i < m; ++i) {
    for (int64_t j = 0; j < m; ++j) {
      if (i != j && a(i, j) > kSignTol) {
        verdict.status = CompareStatus::PreconditionFailed;
        verdict.witnesses.push_back({"positive off-diagonal in A at " + entry_location(i, j), a(i, j)});
      }
    }
  }
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = 0; j < n; ++j) {
      if (i != j && b(i, j) > kSignTol) {
        verdict.status = CompareStatus::PreconditionFailed;
        verdict.witnesses.push_back({"positive off-diagonal in B at " + entry_location(i, j), b(i, j)});
      }
    }
  }
  bool strict_entry = false;
  for (int64_t i = 0; i < m; ++i) {
    for (int64_t j = 0; j < m; ++j) {
      const double diff = b(i, j) - a(i, j);
      if (diff > tolerance) {
        verdict.status = CompareStatus::PreconditionFailed;
        verdict.witnesses.push_back({"B > A at " + entry_location(i, j), diff});
      } else if (diff < -tolerance) {
        strict_entry = true;
      }
    }
  }
  if (verdict.status == CompareStatus::PreconditionFailed) return verdict;

  verdict.e_small = min_eigenvalue(a);
  verdict.e_large = min_eigenvalue(b);
  const bool strict_hypothesis = (m < n) || strict_entry;
  const IrreducibilityCertificate cert = irreducibility_certificate(b);

  if (strict_hypothesis && cert.attained &&
      verdict.e_large < verdict.e_small - tolerance) {
    verdict.status = CompareStatus::HoldsStrict;
    verdict.witnesses.push_back(
        {m < n ? "strict size increase" : "strict entrywise decrease",
         verdict.e_small - verdict.e_large});
  } else if (verdict.e_large <= verdict.e_small + tolerance) {
    verdict.status = CompareStatus::HoldsNonStrict;
    verdict.witnesses.push_back({"E(B) <= E(A)", verdict.e_small - verdict.e_large});
  } else {
    verdict.status = CompareStatus::Violated;
    verdict.witnesses.push_back({"E(B) > E(A)", verdict.e_large - verdict.e_small});
  }
  return verdict;
}

}  // namespace foel
