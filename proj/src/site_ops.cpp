#include "foelkit/site_ops.hpp"

#include <cmath>
#include <vector>

#include "foelkit/errors.hpp"

namespace foel {

namespace {

struct Layout {
  std::vector<int64_t> dims;
  std::vector<int64_t> strides;  // site 0 most significant
  int64_t dim = 1;

  explicit Layout(const SpinChainSpec& chain) {
    const int64_t sites = chain.length();
    dims.resize(static_cast<size_t>(sites));
    strides.assign(static_cast<size_t>(sites), 1);
    for (int64_t x = 0; x < sites; ++x) dims[static_cast<size_t>(x)] = multiplet_dim(chain.spin(x));
    for (int64_t x = sites - 1; x-- > 0;) {
      strides[static_cast<size_t>(x)] =
          strides[static_cast<size_t>(x) + 1] * dims[static_cast<size_t>(x) + 1];
    }
    for (int64_t d : dims) dim *= d;
  }

  int64_t local(int64_t index, int64_t site) const {
    return (index / strides[static_cast<size_t>(site)]) % dims[static_cast<size_t>(site)];
  }
};

// Raising coefficient <s,m+1|S+|s,m> with m = s - k.
double raise_coeff(HalfInteger s, int64_t k) {
  const double sv = s.value();
  const double m = sv - static_cast<double>(k);
  return std::sqrt(sv * (sv + 1.0) - m * (m + 1.0));
}

// Lowering coefficient <s,m-1|S-|s,m> with m = s - k.
double lower_coeff(HalfInteger s, int64_t k) {
  const double sv = s.value();
  const double m = sv - static_cast<double>(k);
  return std::sqrt(sv * (sv + 1.0) - m * (m - 1.0));
}

}  // namespace

Eigen::VectorXd apply_bond_ss(const SpinChainSpec& chain, int64_t x,
                              const Eigen::VectorXd& v) {
  const Layout layout(chain);
  const HalfInteger sa = chain.spin(x);
  const HalfInteger sb = chain.spin(x + 1);
  const int64_t stride_a = layout.strides[static_cast<size_t>(x)];
  const int64_t stride_b = layout.strides[static_cast<size_t>(x + 1)];
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (int64_t i = 0; i < v.size(); ++i) {
    const double amp = v(i);
    if (amp == 0.0) continue;
    const int64_t ka = layout.local(i, x);
    const int64_t kb = layout.local(i, x + 1);
    const double ma = sa.value() - static_cast<double>(ka);
    const double mb = sb.value() - static_cast<double>(kb);
    out(i) += ma * mb * amp;
    // S+_x S-_{x+1} / 2: ka -> ka-1, kb -> kb+1
    if (ka > 0 && kb + 1 < multiplet_dim(sb)) {
      out(i - stride_a + stride_b) +=
          0.5 * raise_coeff(sa, ka) * lower_coeff(sb, kb) * amp;
    }
    // S-_x S+_{x+1} / 2: ka -> ka+1, kb -> kb-1
    if (kb > 0 && ka + 1 < multiplet_dim(sa)) {
      out(i + stride_a - stride_b) +=
          0.5 * lower_coeff(sa, ka) * raise_coeff(sb, kb) * amp;
    }
  }
  return out;
}

Eigen::VectorXd apply_hamiltonian(const SpinChainSpec& chain,
                                  const Eigen::VectorXd& v) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (int64_t x = 0; x + 1 < chain.length(); ++x) {
    const Eigen::VectorXd ss = apply_bond_ss(chain, x, v);
    if (chain.model().kind == ModelKind::Heisenberg) {
      const double j = chain.couplings()[static_cast<size_t>(x)];
      const double inv = 1.0 / (chain.spin(x).value() * chain.spin(x + 1).value());
      out += -j * (inv * ss - v);
    } else {
      const double t = chain.model().biquadratic_t;
      out += (v - ss) + t * (v - apply_bond_ss(chain, x, ss));
    }
  }
  return out;
}

Eigen::SparseMatrix<double> hamiltonian_sparse(const SpinChainSpec& chain) {
  const Layout layout(chain);
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(layout.dim);
  for (int64_t col = 0; col < layout.dim; ++col) {
    unit(col) = 1.0;
    const Eigen::VectorXd column = apply_hamiltonian(chain, unit);
    unit(col) = 0.0;
    for (int64_t row = 0; row < layout.dim; ++row) {
      if (column(row) != 0.0) triplets.emplace_back(row, col, column(row));
    }
  }
  Eigen::SparseMatrix<double> h(layout.dim, layout.dim);
  h.setFromTriplets(triplets.begin(), triplets.end());
  return h;
}

Eigen::VectorXd apply_splus_total(const SpinChainSpec& chain, const Eigen::VectorXd& v) {
  const Layout layout(chain);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (int64_t i = 0; i < v.size(); ++i) {
    const double amp = v(i);
    if (amp == 0.0) continue;
    for (int64_t x = 0; x < chain.length(); ++x) {
      const int64_t k = layout.local(i, x);
      if (k > 0) {
        out(i - layout.strides[static_cast<size_t>(x)]) +=
            raise_coeff(chain.spin(x), k) * amp;
      }
    }
  }
  return out;
}

Eigen::VectorXd apply_sminus_total(const SpinChainSpec& chain, const Eigen::VectorXd& v) {
  const Layout layout(chain);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (int64_t i = 0; i < v.size(); ++i) {
    const double amp = v(i);
    if (amp == 0.0) continue;
    for (int64_t x = 0; x < chain.length(); ++x) {
      const int64_t k = layout.local(i, x);
      if (k + 1 < layout.dims[static_cast<size_t>(x)]) {
        out(i + layout.strides[static_cast<size_t>(x)]) +=
            lower_coeff(chain.spin(x), k) * amp;
      }
    }
  }
  return out;
}

Eigen::VectorXd apply_sz_total(const SpinChainSpec& chain, const Eigen::VectorXd& v) {
  const Layout layout(chain);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (int64_t i = 0; i < v.size(); ++i) {
    if (v(i) == 0.0) continue;
    double m = 0.0;
    for (int64_t x = 0; x < chain.length(); ++x) {
      m += chain.spin(x).value() - static_cast<double>(layout.local(i, x));
    }
    out(i) = m * v(i);
  }
  return out;
}

Eigen::VectorXd apply_casimir_total(const SpinChainSpec& chain,
                                    const Eigen::VectorXd& v) {
  const Eigen::VectorXd sz = apply_sz_total(chain, v);
  return apply_sminus_total(chain, apply_splus_total(chain, v)) +
         apply_sz_total(chain, sz) + sz;
}

}  // namespace foel
