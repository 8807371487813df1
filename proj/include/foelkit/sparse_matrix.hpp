#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "foelkit/chain.hpp"
#include "foelkit/half_integer.hpp"

namespace foel {

/// The matrix of H acting on the arc-diagram basis of one total-spin sector:
/// H|a> = sum_b M[b,a] |b> in the (non-orthogonal) basis, stored as triplets
/// grouped by column. Generally non-symmetric but with real spectrum.
struct SparseSectorMatrix {
  struct Triplet {
    int64_t row = 0;
    int64_t col = 0;
    double value = 0.0;

    friend bool operator==(const Triplet&, const Triplet&) = default;
  };

  int64_t dim = 0;
  HalfInteger sector;
  uint64_t chain_fingerprint = 0;
  std::vector<Triplet> triplets;  // sorted by (col, row)

  Eigen::MatrixXd to_dense() const;
  double max_diagonal() const;
  bool is_symmetric() const;  // exact entrywise test on the triplets
  void sort_triplets();

  /// y += M x
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
};

/// FNV-1a hash of (spins, couplings, model, format version).
uint64_t chain_fingerprint(const SpinChainSpec& chain);

/// Chain fingerprint extended with the sector; the disk-cache key for
/// assembled sector matrices.
uint64_t sector_fingerprint(const SpinChainSpec& chain, HalfInteger sector);

}  // namespace foel
