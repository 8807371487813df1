#include "foelkit/dense_ed.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "foelkit/errors.hpp"

namespace foel {

namespace {

using Complex = std::complex<double>;

void check_dense_limit(const SpinChainSpec& chain, int64_t dense_limit) {
  const int64_t dim = chain.hilbert_dim();
  if (dim > dense_limit) {
    throw DimensionTooLarge("Hilbert dimension " + std::to_string(dim) +
                            " exceeds the dense limit " +
                            std::to_string(dense_limit));
  }
}

std::vector<int64_t> local_dims(const SpinChainSpec& chain) {
  std::vector<int64_t> dims;
  dims.reserve(static_cast<size_t>(chain.length()));
  for (HalfInteger s : chain.spins()) dims.push_back(multiplet_dim(s));
  return dims;
}

// Adds scale * (I (x) A (x) I (x) B (x) I) to target, where A acts on site x
// and B on site y > x. Touches only the structurally nonzero blocks, so the
// cost is O(dim * dA * dB) instead of a chain of Kronecker products.
void add_two_site(Eigen::MatrixXcd& target, const std::vector<int64_t>& dims,
                  int64_t x, int64_t y, const Eigen::MatrixXcd& a,
                  const Eigen::MatrixXcd& b, Complex scale) {
  int64_t left = 1, mid = 1, right = 1;
  for (int64_t t = 0; t < x; ++t) left *= dims[static_cast<size_t>(t)];
  for (int64_t t = x + 1; t < y; ++t) mid *= dims[static_cast<size_t>(t)];
  for (int64_t t = y + 1; t < static_cast<int64_t>(dims.size()); ++t) {
    right *= dims[static_cast<size_t>(t)];
  }
  const int64_t da = dims[static_cast<size_t>(x)];
  const int64_t db = dims[static_cast<size_t>(y)];

  for (int64_t l = 0; l < left; ++l) {
    for (int64_t m = 0; m < mid; ++m) {
      for (int64_t r = 0; r < right; ++r) {
        const int64_t base = ((l * da * mid + m) * db) * right + r;
        for (int64_t ai = 0; ai < da; ++ai) {
          for (int64_t aj = 0; aj < da; ++aj) {
            const Complex av = a(ai, aj);
            if (av == Complex(0, 0)) continue;
            for (int64_t bi = 0; bi < db; ++bi) {
              for (int64_t bj = 0; bj < db; ++bj) {
                const Complex bv = b(bi, bj);
                if (bv == Complex(0, 0)) continue;
                const int64_t row = base + (ai * mid * db + bi) * right;
                const int64_t col = base + (aj * mid * db + bj) * right;
                target(row, col) += scale * av * bv;
              }
            }
          }
        }
      }
    }
  }
}

void add_one_site(Eigen::MatrixXcd& target, const std::vector<int64_t>& dims,
                  int64_t x, const Eigen::MatrixXcd& a, Complex scale) {
  int64_t left = 1, right = 1;
  for (int64_t t = 0; t < x; ++t) left *= dims[static_cast<size_t>(t)];
  for (int64_t t = x + 1; t < static_cast<int64_t>(dims.size()); ++t) {
    right *= dims[static_cast<size_t>(t)];
  }
  const int64_t da = dims[static_cast<size_t>(x)];
  for (int64_t l = 0; l < left; ++l) {
    for (int64_t r = 0; r < right; ++r) {
      const int64_t base = l * da * right + r;
      for (int64_t ai = 0; ai < da; ++ai) {
        for (int64_t aj = 0; aj < da; ++aj) {
          const Complex av = a(ai, aj);
          if (av == Complex(0, 0)) continue;
          target(base + ai * right, base + aj * right) += scale * av;
        }
      }
    }
  }
}

Eigen::MatrixXcd heisenberg_bond(const SpinMatrices& sa, const SpinMatrices& sb,
                                 double coupling) {
  const int64_t da = multiplet_dim(sa.s);
  const int64_t db = multiplet_dim(sb.s);
  Eigen::MatrixXcd dot = Eigen::MatrixXcd::Zero(da * db, da * db);
  const Eigen::MatrixXcd* a[3] = {&sa.sx, &sa.sy, &sa.sz};
  const Eigen::MatrixXcd* b[3] = {&sb.sx, &sb.sy, &sb.sz};
  for (int i = 0; i < 3; ++i) {
    Eigen::MatrixXcd term(da * db, da * db);
    for (int64_t p = 0; p < da; ++p)
      for (int64_t q = 0; q < da; ++q)
        term.block(p * db, q * db, db, db) = (*a[i])(p, q) * (*b[i]);
    dot += term;
  }
  const double inv = 1.0 / (sa.s.value() * sb.s.value());
  Eigen::MatrixXcd bond = -coupling * (inv * dot -
                                       Eigen::MatrixXcd::Identity(da * db, da * db));
  return bond;
}

Eigen::MatrixXcd biquadratic_bond(const SpinMatrices& sa, const SpinMatrices& sb,
                                  double t) {
  const int64_t da = multiplet_dim(sa.s);
  const int64_t db = multiplet_dim(sb.s);
  Eigen::MatrixXcd dot = Eigen::MatrixXcd::Zero(da * db, da * db);
  const Eigen::MatrixXcd* a[3] = {&sa.sx, &sa.sy, &sa.sz};
  const Eigen::MatrixXcd* b[3] = {&sb.sx, &sb.sy, &sb.sz};
  for (int i = 0; i < 3; ++i) {
    Eigen::MatrixXcd term(da * db, da * db);
    for (int64_t p = 0; p < da; ++p)
      for (int64_t q = 0; q < da; ++q)
        term.block(p * db, q * db, db, db) = (*a[i])(p, q) * (*b[i]);
    dot += term;
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(da * db, da * db);
  return (id - dot) + t * (id - dot * dot);
}

}  // namespace

Eigen::MatrixXcd SpinMatrices::splus() const { return sx + Complex(0, 1) * sy; }
Eigen::MatrixXcd SpinMatrices::sminus() const { return sx - Complex(0, 1) * sy; }

SpinMatrices spin_matrices(HalfInteger s) {
  if (s.doubled() < 1) throw Error("spin_matrices requires s >= 1/2");
  const int64_t d = multiplet_dim(s);
  const double sval = s.value();
  Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(d, d);
  for (int64_t i = 0; i < d; ++i) {
    const double m = sval - static_cast<double>(i);
    sz(i, i) = m;
    if (i > 0) sp(i - 1, i) = std::sqrt(sval * (sval + 1.0) - m * (m + 1.0));
  }
  const Eigen::MatrixXcd sm = sp.adjoint();
  SpinMatrices out;
  out.s = s;
  out.sx = 0.5 * (sp + sm);
  out.sy = Complex(0, -0.5) * (sp - sm);
  out.sz = sz;
  return out;
}

DenseOperator hamiltonian_dense(const SpinChainSpec& chain, int64_t dense_limit) {
  check_dense_limit(chain, dense_limit);
  const auto dims = local_dims(chain);
  const int64_t dim = chain.hilbert_dim();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int64_t x = 0; x + 1 < chain.length(); ++x) {
    const SpinMatrices sa = spin_matrices(chain.spin(x));
    const SpinMatrices sb = spin_matrices(chain.spin(x + 1));
    Eigen::MatrixXcd bond;
    if (chain.model().kind == ModelKind::Heisenberg) {
      bond = heisenberg_bond(sa, sb, chain.couplings()[static_cast<size_t>(x)]);
    } else {
      bond = biquadratic_bond(sa, sb, chain.model().biquadratic_t);
    }
    // The (x, x+1) pair is contiguous, so treat it as one composite factor.
    const int64_t da = dims[static_cast<size_t>(x)];
    const int64_t db = dims[static_cast<size_t>(x + 1)];
    std::vector<int64_t> merged;
    for (int64_t t = 0; t < chain.length(); ++t) {
      if (t == x) {
        merged.push_back(da * db);
      } else if (t == x + 1) {
        continue;
      } else {
        merged.push_back(dims[static_cast<size_t>(t)]);
      }
    }
    add_one_site(h, merged, x, bond, Complex(1, 0));
  }
  return h;
}

DenseOperator casimir_total(const SpinChainSpec& chain, int64_t dense_limit) {
  check_dense_limit(chain, dense_limit);
  const auto dims = local_dims(chain);
  const int64_t dim = chain.hilbert_dim();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(dim, dim);
  double diag = 0.0;
  for (HalfInteger s : chain.spins()) diag += s.value() * (s.value() + 1.0);
  c.diagonal().setConstant(Complex(diag, 0));

  std::vector<SpinMatrices> mats;
  for (HalfInteger s : chain.spins()) mats.push_back(spin_matrices(s));
  for (int64_t x = 0; x < chain.length(); ++x) {
    for (int64_t y = x + 1; y < chain.length(); ++y) {
      const Eigen::MatrixXcd* a[3] = {&mats[static_cast<size_t>(x)].sx,
                                      &mats[static_cast<size_t>(x)].sy,
                                      &mats[static_cast<size_t>(x)].sz};
      const Eigen::MatrixXcd* b[3] = {&mats[static_cast<size_t>(y)].sx,
                                      &mats[static_cast<size_t>(y)].sy,
                                      &mats[static_cast<size_t>(y)].sz};
      for (int i = 0; i < 3; ++i) {
        add_two_site(c, dims, x, y, *a[i], *b[i], Complex(2, 0));
      }
    }
  }
  return c;
}

SectorProjector sector_projector(const SpinChainSpec& chain, HalfInteger S,
                                 int64_t dense_limit) {
  check_dense_limit(chain, dense_limit);
  if (multiplicity(chain, S) == 0) {
    throw NotAdmissible("S = " + S.str() + " is not admissible");
  }
  const Eigen::MatrixXcd c = casimir_total(chain, dense_limit);
  const int64_t dim = c.rows();
  const double target = S.value() * (S.value() + 1.0);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(dim, dim);
  for (HalfInteger sp : admissible_spins(chain)) {
    if (sp == S) continue;
    const double other = sp.value() * (sp.value() + 1.0);
    p = (c - other * Eigen::MatrixXcd::Identity(dim, dim)) * p / (target - other);
  }
  return SectorProjector{S, std::move(p)};
}

std::tuple<DenseOperator, DenseOperator, DenseOperator> ladder_operators(
    const SpinChainSpec& chain, int64_t dense_limit) {
  check_dense_limit(chain, dense_limit);
  const auto dims = local_dims(chain);
  const int64_t dim = chain.hilbert_dim();
  Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd sm = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd s3 = Eigen::MatrixXcd::Zero(dim, dim);
  for (int64_t x = 0; x < chain.length(); ++x) {
    const SpinMatrices m = spin_matrices(chain.spin(x));
    add_one_site(sp, dims, x, m.splus(), Complex(1, 0));
    add_one_site(sm, dims, x, m.sminus(), Complex(1, 0));
    add_one_site(s3, dims, x, m.sz, Complex(1, 0));
  }
  return {std::move(sp), std::move(sm), std::move(s3)};
}

EnergyTable min_energy_per_sector_dense(const SpinChainSpec& chain,
                                        int64_t dense_limit) {
  check_dense_limit(chain, dense_limit);
  const Eigen::MatrixXcd h = hamiltonian_dense(chain, dense_limit);
  const Eigen::MatrixXcd c = casimir_total(chain, dense_limit);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const Eigen::VectorXd evals = solver.eigenvalues();
  const Eigen::MatrixXcd& evecs = solver.eigenvectors();
  const int64_t dim = evals.size();

  const auto admissible = admissible_spins(chain);
  std::vector<double> casimir_values;
  for (HalfInteger s : admissible) casimir_values.push_back(s.value() * (s.value() + 1.0));

  EnergyTable table;
  for (HalfInteger s : admissible) {
    table.entries.push_back(EnergyEntry{s, multiplicity(chain, s),
                                        std::numeric_limits<double>::infinity(),
                                        SolveMethod::Dense});
  }

  // Walk degenerate clusters of H and diagonalize the Casimir inside each, so
  // every eigenvector gets an unambiguous total spin.
  constexpr double kClusterTol = 1e-8;
  int64_t start = 0;
  while (start < dim) {
    int64_t stop = start + 1;
    while (stop < dim && evals(stop) - evals(stop - 1) <= kClusterTol) ++stop;
    const int64_t k = stop - start;
    const Eigen::MatrixXcd block = evecs.middleCols(start, k);
    const Eigen::MatrixXcd c_block = block.adjoint() * (c * block);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> csolver(c_block);
    for (int64_t i = 0; i < k; ++i) {
      const double cval = csolver.eigenvalues()(i);
      size_t best = 0;
      double best_err = std::numeric_limits<double>::infinity();
      for (size_t a = 0; a < casimir_values.size(); ++a) {
        const double err = std::abs(cval - casimir_values[a]);
        if (err < best_err) {
          best_err = err;
          best = a;
        }
      }
      if (best_err > 1e-6) {
        throw Error("Casimir classification failed: eigenvalue " +
                    std::to_string(cval) + " matches no admissible sector");
      }
      auto& entry = table.entries[best];
      entry.energy = std::min(entry.energy, evals(start));
    }
    // Eigenvalues within a cluster are treated as equal; using evals(start)
    // for all of them is within the cluster tolerance.
    start = stop;
  }
  return table;
}

std::vector<double> highest_weight_spectrum_dense(const SpinChainSpec& chain,
                                                  HalfInteger S,
                                                  int64_t dense_limit) {
  check_dense_limit(chain, dense_limit);
  const int64_t d_expected = multiplicity(chain, S);
  if (d_expected == 0) {
    throw NotAdmissible("S = " + S.str() + " is not admissible");
  }

  // Enumerate product states with total magnetization M = S. Down-steps per
  // site k_x = s_x - m_x must sum to (S_max - S).
  const auto dims = local_dims(chain);
  const int64_t total_down = (max_total_spin(chain) - S).doubled() / 2;
  std::vector<int64_t> block_indices;
  std::vector<int64_t> ks(dims.size(), 0);
  const int64_t dim = chain.hilbert_dim();
  for (int64_t idx = 0; idx < dim; ++idx) {
    int64_t rem = idx;
    int64_t sum = 0;
    for (size_t x = dims.size(); x-- > 0;) {
      ks[x] = rem % dims[x];
      rem /= dims[x];
      sum += ks[x];
    }
    if (sum == total_down) block_indices.push_back(idx);
  }

  const Eigen::MatrixXcd c = casimir_total(chain, dense_limit);
  const Eigen::MatrixXcd h = hamiltonian_dense(chain, dense_limit);
  const int64_t b = static_cast<int64_t>(block_indices.size());
  Eigen::MatrixXcd c_block(b, b);
  Eigen::MatrixXcd h_block(b, b);
  for (int64_t i = 0; i < b; ++i) {
    for (int64_t j = 0; j < b; ++j) {
      c_block(i, j) = c(block_indices[static_cast<size_t>(i)],
                        block_indices[static_cast<size_t>(j)]);
      h_block(i, j) = h(block_indices[static_cast<size_t>(i)],
                        block_indices[static_cast<size_t>(j)]);
    }
  }

  // Highest-weight vectors of spin S are exactly the Casimir-S(S+1) states in
  // this magnetization block.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> csolver(c_block);
  const double target = S.value() * (S.value() + 1.0);
  std::vector<int64_t> cols;
  for (int64_t i = 0; i < b; ++i) {
    if (std::abs(csolver.eigenvalues()(i) - target) < 1e-6) cols.push_back(i);
  }
  if (static_cast<int64_t>(cols.size()) != d_expected) {
    throw Error("highest-weight space dimension mismatch for S = " + S.str());
  }
  Eigen::MatrixXcd w(b, cols.size());
  for (size_t i = 0; i < cols.size(); ++i) w.col(i) = csolver.eigenvectors().col(cols[i]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hsolver(w.adjoint() * h_block * w);
  std::vector<double> out(hsolver.eigenvalues().data(),
                          hsolver.eigenvalues().data() + cols.size());
  return out;
}

}  // namespace foel
