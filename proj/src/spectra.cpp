#include "foelkit/spectra.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "foelkit/errors.hpp"
#include "foelkit/site_ops.hpp"

namespace foel {

namespace {

SparseSectorMatrix assemble(const SpinChainSpec& chain, HalfInteger S,
                            const SpectraOptions& options) {
  SectorOptions sector_options;
  sector_options.dense_limit = options.dense_limit;
  if (options.sector_provider) {
    return options.sector_provider(chain, S, sector_options);
  }
  return sector_hamiltonian(chain, S, sector_options);
}

// Symmetric Lanczos with full reorthogonalization for the smallest
// eigenvalue of an operator given through its action. The operators handled
// here (bond differences) have few distinct eigenvalues, so the Krylov space
// exhausts quickly; a deterministic restart covers starting-vector accidents.
double lanczos_min_eigenvalue(
    int64_t dim, const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply) {
  constexpr int kMaxIter = 300;
  constexpr double kBreakdown = 1e-13;
  double best = std::numeric_limits<double>::infinity();

  std::mt19937 rng(202406);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigen::VectorXd v(dim);
    if (attempt == 0) {
      v.setOnes();
    } else {
      for (int64_t i = 0; i < dim; ++i) v(i) = dist(rng);
    }
    v.normalize();

    std::vector<Eigen::VectorXd> basis{v};
    std::vector<double> alpha, beta;
    Eigen::VectorXd w(dim);
    for (int it = 0; it < kMaxIter && static_cast<int64_t>(basis.size()) <= dim; ++it) {
      w.setZero();
      apply(basis.back(), w);
      const double a = basis.back().dot(w);
      alpha.push_back(a);
      w -= a * basis.back();
      if (basis.size() > 1) w -= beta.back() * basis[basis.size() - 2];
      for (const auto& q : basis) w -= q.dot(w) * q;  // full reorthogonalization
      const double b = w.norm();

      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(alpha.size(), alpha.size());
      for (size_t i = 0; i < alpha.size(); ++i) {
        tri(i, i) = alpha[i];
        if (i + 1 < alpha.size()) tri(i, i + 1) = tri(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri, Eigen::EigenvaluesOnly);
      const double theta = solver.eigenvalues().minCoeff();

      if (b < kBreakdown) {
        best = std::min(best, theta);
        break;
      }
      if (it > 2 && std::abs(theta - best) < 1e-12 && theta <= best) {
        best = theta;
        break;
      }
      best = std::min(best, theta);
      beta.push_back(b);
      basis.push_back(w / b);
    }
  }
  return best;
}

Eigen::SparseMatrix<double> kron_identity2(const Eigen::SparseMatrix<double>& m) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(m.nonZeros()) * 2);
  for (int k = 0; k < m.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      for (int a = 0; a < 2; ++a) {
        triplets.emplace_back(2 * it.row() + a, 2 * it.col() + a, it.value());
      }
    }
  }
  Eigen::SparseMatrix<double> out(2 * m.rows(), 2 * m.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

// Isometry from the (spin s) x (spin 1/2) pair onto its spin-(s+1/2)
// subspace, columns indexed by the new site's basis (m = s+1/2 .. -(s+1/2)),
// built by repeated lowering from the top product state.
Eigen::MatrixXd pair_isometry(HalfInteger s) {
  const int64_t d_old = multiplet_dim(s);
  const int64_t d_pair = d_old * 2;
  const int64_t d_new = d_old + 1;
  const double sv = s.value();

  auto lower_pair = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d_pair);
    for (int64_t k = 0; k < d_old; ++k) {
      for (int64_t a = 0; a < 2; ++a) {
        const double amp = v(k * 2 + a);
        if (amp == 0.0) continue;
        const double m = sv - static_cast<double>(k);
        if (k + 1 < d_old) {
          out((k + 1) * 2 + a) += std::sqrt(sv * (sv + 1.0) - m * (m - 1.0)) * amp;
        }
        if (a == 0) out(k * 2 + 1) += amp;  // lower the appended spin-1/2
      }
    }
    return out;
  };

  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(d_pair, d_new);
  Eigen::VectorXd top = Eigen::VectorXd::Zero(d_pair);
  top(0) = 1.0;  // |s, s> (x) |up>
  u.col(0) = top;
  for (int64_t c = 1; c < d_new; ++c) {
    Eigen::VectorXd next = lower_pair(u.col(c - 1));
    u.col(c) = next / next.norm();
  }
  return u;
}

ComparisonVerdict case1_verdict(const SpinChainSpec& prev, const SpinChainSpec& cur,
                                int64_t step_index) {
  const Eigen::SparseMatrix<double> h_prev = hamiltonian_sparse(prev);
  const Eigen::SparseMatrix<double> h_cur = hamiltonian_sparse(cur);
  const Eigen::SparseMatrix<double> diff = h_cur - kron_identity2(h_prev);
  const int64_t dim = diff.rows();

  double min_eig;
  if (dim <= 1024) {
    min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                  Eigen::MatrixXd(diff), Eigen::EigenvaluesOnly)
                  .eigenvalues()
                  .minCoeff();
  } else {
    min_eig = lanczos_min_eigenvalue(
        dim, [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = diff * x; });
  }
  ComparisonVerdict verdict;
  verdict.status = min_eig >= -kStrictTolerance ? CompareStatus::HoldsNonStrict
                                                : CompareStatus::Violated;
  verdict.witnesses.push_back(
      {"step " + std::to_string(step_index) + " (case I): min eig of H_diff", min_eig});
  return verdict;
}

ComparisonVerdict case2_verdict(const SpinChainSpec& prev, const SpinChainSpec& cur,
                                int64_t step_index) {
  const Eigen::SparseMatrix<double> h_prev = hamiltonian_sparse(prev);
  const Eigen::SparseMatrix<double> h_cur = hamiltonian_sparse(cur);
  const Eigen::SparseMatrix<double> extended = kron_identity2(h_prev);

  const HalfInteger s_old = prev.spins().back();
  const Eigen::MatrixXd u = pair_isometry(s_old);
  const int64_t d_old2 = multiplet_dim(s_old) * 2;
  const int64_t d_new = multiplet_dim(s_old) + 1;
  int64_t rest = 1;
  for (int64_t x = 0; x + 1 < prev.length(); ++x) rest *= multiplet_dim(prev.spin(x));

  std::vector<Eigen::Triplet<double>> ptrip;
  for (int64_t l = 0; l < rest; ++l) {
    for (int64_t c_new = 0; c_new < d_new; ++c_new) {
      for (int64_t c_old = 0; c_old < d_old2; ++c_old) {
        const double v = u(c_old, c_new);
        if (v != 0.0) {
          ptrip.emplace_back(l * d_new + c_new, l * d_old2 + c_old, v);
        }
      }
    }
  }
  Eigen::SparseMatrix<double> p(rest * d_new, rest * d_old2);
  p.setFromTriplets(ptrip.begin(), ptrip.end());

  const Eigen::SparseMatrix<double> projected = p * extended * p.transpose();
  const double residual = (h_cur - projected).norm();
  ComparisonVerdict verdict;
  verdict.status = residual < kStrictTolerance ? CompareStatus::HoldsNonStrict
                                               : CompareStatus::Violated;
  verdict.witnesses.push_back(
      {"step " + std::to_string(step_index) + " (case II): operator identity residual",
       residual});
  return verdict;
}

}  // namespace

SectorEnergy min_energy_sector(const SpinChainSpec& chain, HalfInteger S,
                               const SpectraOptions& options) {
  const int64_t d = multiplicity(chain, S);
  if (d == 0) throw NotAdmissible("S = " + S.str() + " is not admissible");

  if (options.method == MethodChoice::Dense) {
    const EnergyTable table = min_energy_per_sector_dense(chain, options.dense_limit);
    return SectorEnergy{table.energy(S), d, SolveMethod::Dense};
  }
  const SparseSectorMatrix m = assemble(chain, S, options);
  if (m.dim <= kDenseEigenLimit) {
    return SectorEnergy{min_eigenvalue(m.to_dense()), d, SolveMethod::Sector};
  }
  return SectorEnergy{min_eigenvalue_power(m, options.power), d,
                      SolveMethod::PowerIteration};
}

EnergyTable energy_table(const SpinChainSpec& chain, const SpectraOptions& options) {
  if (options.method == MethodChoice::Dense) {
    return min_energy_per_sector_dense(chain, options.dense_limit);
  }
  EnergyTable table;
  for (HalfInteger S : admissible_spins(chain)) {
    const SectorEnergy e = min_energy_sector(chain, S, options);
    table.entries.push_back(EnergyEntry{S, e.dimension, e.energy, e.method});
  }
  return table;
}

FoelReport foel_check(const SpinChainSpec& chain, const SpectraOptions& options) {
  FoelReport report;
  report.table = energy_table(chain, options);
  report.status = CompareStatus::HoldsStrict;

  const auto& entries = report.table.entries;
  for (size_t i = 0; i + 1 < entries.size(); ++i) {
    const auto& high = entries[i];      // larger S
    const auto& low = entries[i + 1];   // next admissible S below
    const double margin = low.energy - high.energy;
    if (margin > kFoelTolerance) continue;
    const FoelViolation v{low.S, high.S, low.energy, high.energy};
    report.violations.push_back(v);
    if (!report.first_violation) report.first_violation = v;
    if (margin < -kFoelTolerance) {
      report.status = CompareStatus::Violated;
    } else if (report.status != CompareStatus::Violated) {
      report.status = CompareStatus::HoldsNonStrict;
    }
  }
  return report;
}

std::vector<ComparisonVerdict> increment_relations_check(
    const SpinChainSpec& chain, const SpectraOptions& options) {
  if (chain.model().kind != ModelKind::Heisenberg) {
    throw std::invalid_argument("increment relations are defined for Heisenberg chains");
  }
  if (chain.hilbert_dim() > options.dense_limit) {
    throw DimensionTooLarge("increment checks need the chain within the dense limit");
  }

  const auto sequence = build_sequence(chain);
  std::vector<EnergyTable> tables;
  tables.reserve(sequence.size());
  for (const auto& step : sequence) tables.push_back(energy_table(step.chain, options));

  std::vector<ComparisonVerdict> verdicts;
  for (size_t k = 1; k < sequence.size(); ++k) {
    const SpinChainSpec& prev = sequence[k - 1].chain;
    const SpinChainSpec& cur = sequence[k].chain;
    const auto index = static_cast<int64_t>(k);

    if (sequence[k].kind == IncrementStep::Kind::CaseI) {
      verdicts.push_back(case1_verdict(prev, cur, index));
    } else {
      verdicts.push_back(case2_verdict(prev, cur, index));
    }

    const HalfInteger s_max_prev = max_total_spin(prev);
    for (const auto& entry : tables[k - 1].entries) {
      if (entry.S == s_max_prev) continue;  // both sides are ground sectors
      const double e_prev = entry.energy;
      const double e_cur = tables[k].energy(entry.S + kSpinHalf);
      ComparisonVerdict verdict;
      verdict.e_small = e_prev;
      verdict.e_large = e_cur;
      if (e_cur < e_prev - kStrictTolerance) {
        verdict.status = CompareStatus::HoldsStrict;
      } else if (e_cur <= e_prev + kStrictTolerance) {
        verdict.status = CompareStatus::HoldsNonStrict;
      } else {
        verdict.status = CompareStatus::Violated;
      }
      verdict.witnesses.push_back(
          {"step " + std::to_string(index) + ": E(H_k+1, " +
               (entry.S + kSpinHalf).str() + ") vs E(H_k, " + entry.S.str() + ")",
           e_cur - e_prev});
      verdicts.push_back(std::move(verdict));
    }
  }
  return verdicts;
}

std::vector<ComparisonVerdict> extension_mono_check(const SpinChainSpec& chain,
                                                    const SpinChainSpec& extension,
                                                    const SpectraOptions& options) {
  if (chain.model().kind != ModelKind::Heisenberg ||
      extension.model().kind != ModelKind::Heisenberg) {
    throw std::invalid_argument("extension monotonicity is defined for Heisenberg chains");
  }
  const int64_t l = chain.length();
  const int64_t le = extension.length();
  if (le <= l) throw InvalidExtension("extension must add at least one site");

  auto matches_at = [&](int64_t offset) {
    for (int64_t x = 0; x < l; ++x) {
      if (extension.spin(offset + x) != chain.spin(x)) return false;
    }
    for (int64_t x = 0; x + 1 < l; ++x) {
      if (extension.couplings()[static_cast<size_t>(offset + x)] !=
          chain.couplings()[static_cast<size_t>(x)]) {
        return false;
      }
    }
    return true;
  };
  if (!matches_at(0) && !matches_at(le - l)) {
    throw InvalidExtension("second chain does not extend the first at either end");
  }

  const EnergyTable table = energy_table(chain, options);
  const EnergyTable table_ext = energy_table(extension, options);
  const HalfInteger s_max = max_total_spin(chain);
  const HalfInteger s_max_ext = max_total_spin(extension);

  std::vector<ComparisonVerdict> verdicts;
  for (int64_t n = 1; HalfInteger::from_int(n) <= s_max; ++n) {
    const HalfInteger s = s_max - HalfInteger::from_int(n);
    if (table.find(s) == nullptr) continue;  // beyond the chain's lowest sector
    const double e_chain = table.energy(s);
    const double e_ext = table_ext.energy(s_max_ext - HalfInteger::from_int(n));
    ComparisonVerdict verdict;
    verdict.e_small = e_chain;
    verdict.e_large = e_ext;
    if (e_ext < e_chain - kStrictTolerance) {
      verdict.status = CompareStatus::HoldsStrict;
    } else if (e_ext <= e_chain + kStrictTolerance) {
      verdict.status = CompareStatus::HoldsNonStrict;
    } else {
      verdict.status = CompareStatus::Violated;
    }
    verdict.witnesses.push_back(
        {"n=" + std::to_string(n) + ": E(H, " + s.str() + ") vs E(H', " +
             (s_max_ext - HalfInteger::from_int(n)).str() + ")",
         e_ext - e_chain});
    verdicts.push_back(std::move(verdict));
  }
  return verdicts;
}

double spectral_gap(const SpinChainSpec& chain, const SpectraOptions& options) {
  const HalfInteger s = max_total_spin(chain) - HalfInteger::from_int(1);
  if (multiplicity(chain, s) == 0) {
    throw NotAdmissible("no S_max - 1 sector for this chain");
  }
  return min_energy_sector(chain, s, options).energy;
}

std::vector<double> sector_spectrum(const SpinChainSpec& chain, HalfInteger S,
                                    const SpectraOptions& options) {
  if (multiplicity(chain, S) == 0) {
    throw NotAdmissible("S = " + S.str() + " is not admissible");
  }
  if (options.method == MethodChoice::Dense) {
    return highest_weight_spectrum_dense(chain, S, options.dense_limit);
  }
  const SparseSectorMatrix m = assemble(chain, S, options);
  if (m.dim > kDenseEigenLimit) {
    throw DimensionTooLarge("full sector spectra are limited to dimension " +
                            std::to_string(kDenseEigenLimit));
  }
  const Eigen::MatrixXd dense = m.to_dense();
  std::vector<double> out;
  if ((dense - dense.transpose()).cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
    out.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + m.dim);
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(dense, false);
    for (int64_t i = 0; i < m.dim; ++i) out.push_back(solver.eigenvalues()(i).real());
    std::sort(out.begin(), out.end());
  }
  return out;
}

std::vector<std::pair<HalfInteger, double>> eigenvalues_below(
    const SpinChainSpec& chain, double e_max, const SpectraOptions& options) {
  if (!(e_max > 0.0)) throw std::invalid_argument("energy threshold must be positive");

  std::vector<std::pair<HalfInteger, double>> out;
  const auto admissible = admissible_spins(chain);
  for (size_t k = 0; k < admissible.size(); ++k) {
    const std::vector<double> spectrum = sector_spectrum(chain, admissible[k], options);
    if (k > 0 && spectrum.front() >= e_max) break;  // stopping rule
    for (double e : spectrum) {
      if (e < e_max) out.emplace_back(admissible[k], e);
    }
  }
  return out;
}

std::vector<std::pair<double, FoelReport>> biquadratic_sweep(
    int64_t L, const std::vector<double>& t_values, const SpectraOptions& options) {
  if (L < 2 || L > 6) {
    throw DimensionTooLarge("the biquadratic sweep covers chain lengths 2..6");
  }
  std::vector<std::pair<double, FoelReport>> out;
  for (double t : t_values) {
    const SpinChainSpec chain(std::vector<HalfInteger>(static_cast<size_t>(L),
                                                       HalfInteger::from_int(1)),
                              std::vector<double>(static_cast<size_t>(L) - 1, 1.0),
                              Model::bilinear_biquadratic(t));
    out.emplace_back(t, foel_check(chain, options));
  }
  return out;
}

}  // namespace foel
