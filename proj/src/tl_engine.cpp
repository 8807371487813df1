#include "foelkit/tl_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <unordered_map>

#include "foelkit/errors.hpp"
#include "foelkit/site_ops.hpp"

namespace foel {

namespace {

constexpr double kSignTol = 1e-12;
constexpr double kSnapTol = 1e-12;

uint64_t fnv1a(uint64_t hash, const void* data, size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 1099511628211ULL;
  }
  return hash;
}

uint64_t fnv1a_int(uint64_t hash, int64_t value) {
  return fnv1a(hash, &value, sizeof(value));
}

uint64_t fnv1a_double(uint64_t hash, double value) {
  return fnv1a(hash, &value, sizeof(value));
}

using ArcList = std::vector<std::pair<int64_t, int64_t>>;

// Rewires an arc list under the cup-cap generator at (a, a+1). Returns false
// for the "both unpaired" case (the action is zero on the sector); sets
// `closes_loop` when the generator meets its own arc.
bool tl_move(const ArcList& arcs, int64_t a, ArcList& out, bool& closes_loop) {
  const int64_t b = a + 1;
  int64_t pa = -1, pb = -1;
  for (const auto& [i, j] : arcs) {
    if (i == a) pa = j;
    if (j == a) pa = i;
    if (i == b) pb = j;
    if (j == b) pb = i;
  }
  if (pa == -1 && pb == -1) return false;
  if (pa == b) {
    closes_loop = true;
    out = arcs;
    return true;
  }
  closes_loop = false;
  out.clear();
  for (const auto& arc : arcs) {
    if (arc.first == a || arc.second == a || arc.first == b || arc.second == b) continue;
    out.push_back(arc);
  }
  out.emplace_back(a, b);
  if (pa != -1 && pb != -1) {
    out.emplace_back(std::min(pa, pb), std::max(pa, pb));
  }
  std::sort(out.begin(), out.end());
  return true;
}

// Unpaired-label bookkeeping for the public apply_bond: when one strand of the
// bond is unpaired, its label migrates to the displaced arc endpoint.
void migrate_unpaired_label(ArcDiagram& d, int64_t from, int64_t to) {
  auto it = std::find(d.unpaired_down.begin(), d.unpaired_down.end(), from);
  if (it != d.unpaired_down.end()) {
    *it = to;
    std::sort(d.unpaired_down.begin(), d.unpaired_down.end());
  }
}

}  // namespace

Eigen::MatrixXd SparseSectorMatrix::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& t : triplets) m(t.row, t.col) += t.value;
  return m;
}

double SparseSectorMatrix::max_diagonal() const {
  double out = 0.0;  // absent diagonal entries count as zero
  for (const auto& t : triplets) {
    if (t.row == t.col) out = std::max(out, t.value);
  }
  return out;
}

bool SparseSectorMatrix::is_symmetric() const {
  std::map<std::pair<int64_t, int64_t>, double> entries;
  for (const auto& t : triplets) entries[{t.row, t.col}] += t.value;
  for (const auto& [rc, v] : entries) {
    const auto it = entries.find({rc.second, rc.first});
    const double mirror = it == entries.end() ? 0.0 : it->second;
    if (mirror != v) return false;
  }
  return true;
}

void SparseSectorMatrix::sort_triplets() {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return std::tie(a.col, a.row) < std::tie(b.col, b.row);
  });
}

void SparseSectorMatrix::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  for (const auto& t : triplets) y(t.row) += t.value * x(t.col);
}

uint64_t chain_fingerprint(const SpinChainSpec& chain) {
  uint64_t h = 1469598103934665603ULL;
  const char tag[] = "foelkit.sector.v1";
  h = fnv1a(h, tag, sizeof(tag));
  h = fnv1a_int(h, chain.length());
  for (HalfInteger s : chain.spins()) h = fnv1a_int(h, s.doubled());
  for (double j : chain.couplings()) h = fnv1a_double(h, j);
  h = fnv1a_int(h, static_cast<int64_t>(chain.model().kind));
  h = fnv1a_double(h, chain.model().biquadratic_t);
  return h;
}

uint64_t sector_fingerprint(const SpinChainSpec& chain, HalfInteger sector) {
  return fnv1a_int(chain_fingerprint(chain), sector.doubled());
}

std::vector<DiagramWeight> apply_bond(const ArcDiagram& diagram, int64_t x,
                                      const SpinChainSpec& chain) {
  if (!chain.all_spin_half()) {
    throw UnsupportedSpin("the graphical bond action requires an all-spin-1/2 chain");
  }
  if (x < 0 || x + 1 >= chain.length()) {
    throw std::invalid_argument("bond index out of range");
  }
  if (diagram.strand_count != chain.strand_count()) {
    throw InconsistentDiagram("diagram does not belong to this chain");
  }

  ArcList moved;
  bool closes_loop = false;
  if (!tl_move(diagram.arcs, x, moved, closes_loop)) return {};
  if (closes_loop) return {DiagramWeight{diagram, 2.0}};

  ArcDiagram out = diagram;
  out.arcs = std::move(moved);
  // The displaced partner of an unpaired bond strand inherits its label.
  int64_t pa = -1, pb = -1;
  for (const auto& [i, j] : diagram.arcs) {
    if (i == x) pa = j;
    if (j == x) pa = i;
    if (i == x + 1) pb = j;
    if (j == x + 1) pb = i;
  }
  if (pa == -1 && pb != -1) migrate_unpaired_label(out, x, pb);
  if (pb == -1 && pa != -1) migrate_unpaired_label(out, x + 1, pa);
  return {DiagramWeight{std::move(out), -1.0}};
}

JonesWenzlStep jones_wenzl_reduce(HalfInteger s) {
  if (s.doubled() < 1) throw Error("jones_wenzl_reduce requires s >= 1/2");
  const double ds = static_cast<double>(s.doubled());
  return JonesWenzlStep{s.doubled() + 1, ds / (ds + 1.0)};
}

TLDiagram TLDiagram::identity(int64_t n) {
  TLDiagram d;
  d.n = n;
  d.partner.resize(static_cast<size_t>(2 * n));
  for (int64_t i = 0; i < n; ++i) {
    d.partner[static_cast<size_t>(i)] = i + n;
    d.partner[static_cast<size_t>(i + n)] = i;
  }
  return d;
}

TLDiagram TLDiagram::generator(int64_t n, int64_t i) {
  if (i < 0 || i + 1 >= n) throw std::invalid_argument("generator index out of range");
  TLDiagram d = identity(n);
  d.partner[static_cast<size_t>(i)] = i + 1;
  d.partner[static_cast<size_t>(i + 1)] = i;
  d.partner[static_cast<size_t>(n + i)] = n + i + 1;
  d.partner[static_cast<size_t>(n + i + 1)] = n + i;
  return d;
}

TLDiagram tl_compose(const TLDiagram& upper, const TLDiagram& lower,
                     double& loop_factor) {
  if (upper.n != lower.n) throw DimensionMismatch("strand counts differ");
  const int64_t n = upper.n;
  TLDiagram out;
  out.n = n;
  out.partner.assign(static_cast<size_t>(2 * n), -1);

  // External endpoints: 0..n-1 are the lower diagram's bottoms, n..2n-1 the
  // upper diagram's tops. Walk through the glued middle layer.
  std::vector<bool> mid_seen(static_cast<size_t>(n), false);
  auto walk = [&](int64_t start_ext) -> int64_t {
    bool in_lower = start_ext < n;
    int64_t point = in_lower ? lower.partner[static_cast<size_t>(start_ext)]
                             : upper.partner[static_cast<size_t>(start_ext)];
    while (true) {
      if (in_lower) {
        if (point < n) return point;  // lower bottom: external
        const int64_t mid = point - n;
        mid_seen[static_cast<size_t>(mid)] = true;
        in_lower = false;
        point = upper.partner[static_cast<size_t>(mid)];
      } else {
        if (point >= n) return point;  // upper top: external
        mid_seen[static_cast<size_t>(point)] = true;
        in_lower = true;
        point = lower.partner[static_cast<size_t>(point + n)];
      }
    }
  };

  for (int64_t e = 0; e < 2 * n; ++e) {
    if (out.partner[static_cast<size_t>(e)] != -1) continue;
    const int64_t other = walk(e);
    out.partner[static_cast<size_t>(e)] = other;
    out.partner[static_cast<size_t>(other)] = e;
  }

  int64_t loops = 0;
  for (int64_t m = 0; m < n; ++m) {
    if (mid_seen[static_cast<size_t>(m)]) continue;
    // trace the closed cycle through unvisited middles
    int64_t cur = m;
    bool in_lower = true;  // start by crossing into the lower diagram
    do {
      mid_seen[static_cast<size_t>(cur)] = true;
      const int64_t next = in_lower ? lower.partner[static_cast<size_t>(cur + n)] - n
                                    : upper.partner[static_cast<size_t>(cur)];
      cur = next;
      in_lower = !in_lower;
    } while (cur != m || !in_lower);
    ++loops;
  }
  loop_factor = std::pow(2.0, static_cast<double>(loops));
  return out;
}

namespace {

TLDiagram extend_right(const TLDiagram& d) {
  const int64_t n = d.n;
  TLDiagram out;
  out.n = n + 1;
  out.partner.assign(static_cast<size_t>(2 * (n + 1)), -1);
  auto remap = [&](int64_t p) { return p < n ? p : p + 1; };
  for (int64_t i = 0; i < 2 * n; ++i) {
    out.partner[static_cast<size_t>(remap(i))] = remap(d.partner[static_cast<size_t>(i)]);
  }
  out.partner[static_cast<size_t>(n)] = 2 * n + 1;
  out.partner[static_cast<size_t>(2 * n + 1)] = n;
  return out;
}

TLOperatorSum sum_compose(const TLOperatorSum& upper, const TLOperatorSum& lower) {
  std::map<TLDiagram, double> acc;
  for (const auto& [du, wu] : upper) {
    for (const auto& [dl, wl] : lower) {
      double loop_factor = 1.0;
      TLDiagram composed = tl_compose(du, dl, loop_factor);
      acc[composed] += wu * wl * loop_factor;
    }
  }
  TLOperatorSum out;
  for (auto& [d, w] : acc) {
    if (w != 0.0) out.emplace_back(d, w);
  }
  return out;
}

}  // namespace

TLOperatorSum jones_wenzl_projector(int64_t n) {
  if (n < 1) throw std::invalid_argument("need at least one strand");
  TLOperatorSum f{{TLDiagram::identity(1), 1.0}};
  for (int64_t k = 2; k <= n; ++k) {
    TLOperatorSum ext;
    for (const auto& [d, w] : f) ext.emplace_back(extend_right(d), w);
    const TLOperatorSum e{{TLDiagram::generator(k, k - 2), 1.0}};
    TLOperatorSum correction = sum_compose(ext, sum_compose(e, ext));
    const double coeff = static_cast<double>(k - 1) / static_cast<double>(k);
    std::map<TLDiagram, double> acc;
    for (const auto& [d, w] : ext) acc[d] += w;
    for (const auto& [d, w] : correction) acc[d] -= coeff * w;
    f.clear();
    for (auto& [d, w] : acc) {
      if (w != 0.0) f.emplace_back(d, w);
    }
  }
  return f;
}

Eigen::MatrixXd tl_diagram_matrix(const TLDiagram& d) {
  const int64_t n = d.n;
  const int64_t dim = int64_t{1} << n;
  auto eps = [](int bi, int bj) -> double {
    if (bi == 0 && bj == 1) return 1.0;   // up-down
    if (bi == 1 && bj == 0) return -1.0;  // down-up
    return 0.0;
  };
  auto bit = [&](int64_t config, int64_t strand) -> int {
    return static_cast<int>((config >> (n - 1 - strand)) & 1);
  };
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int64_t b = 0; b < dim; ++b) {
    for (int64_t t = 0; t < dim; ++t) {
      double value = 1.0;
      for (int64_t p = 0; p < 2 * n && value != 0.0; ++p) {
        const int64_t q = d.partner[static_cast<size_t>(p)];
        if (q < p) continue;
        if (p < n && q < n) {
          value *= eps(bit(b, p), bit(b, q));
        } else if (p >= n && q >= n) {
          value *= eps(bit(t, p - n), bit(t, q - n));
        } else {
          value *= (bit(b, p) == bit(t, q - n)) ? 1.0 : 0.0;
        }
      }
      if (value != 0.0) m(t, b) = value;
    }
  }
  return m;
}

Eigen::MatrixXd jones_wenzl_matrix(int64_t n) {
  if (n < 1) throw std::invalid_argument("need at least one strand");
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(2, 2);
  for (int64_t k = 2; k <= n; ++k) {
    const int64_t dim = int64_t{1} << k;
    Eigen::MatrixXd ext = Eigen::MatrixXd::Zero(dim, dim);
    for (int64_t r = 0; r < dim / 2; ++r) {
      for (int64_t c = 0; c < dim / 2; ++c) {
        if (p(r, c) != 0.0) {
          ext(2 * r, 2 * c) = p(r, c);
          ext(2 * r + 1, 2 * c + 1) = p(r, c);
        }
      }
    }
    const Eigen::MatrixXd e = tl_diagram_matrix(TLDiagram::generator(k, k - 2));
    const double coeff = static_cast<double>(k - 1) / static_cast<double>(k);
    p = ext - coeff * (ext * e * ext);
  }
  if (n == 1) return Eigen::MatrixXd::Identity(2, 2);
  return p;
}

namespace {

SparseSectorMatrix diagrammatic_assembly(const SpinChainSpec& chain, HalfInteger S,
                                         const std::vector<ArcDiagram>& basis) {
  SparseSectorMatrix m;
  m.dim = static_cast<int64_t>(basis.size());
  m.sector = S;
  m.chain_fingerprint = sector_fingerprint(chain, S);

  std::map<ArcList, int64_t> index;
  for (size_t i = 0; i < basis.size(); ++i) {
    index.emplace(basis[i].arcs, static_cast<int64_t>(i));
  }

  const auto& couplings = chain.couplings();
  ArcList moved;
  for (int64_t col = 0; col < m.dim; ++col) {
    const ArcList& arcs = basis[static_cast<size_t>(col)].arcs;
    std::map<int64_t, double> entries;
    for (int64_t x = 0; x + 1 < chain.length(); ++x) {
      bool closes_loop = false;
      if (!tl_move(arcs, x, moved, closes_loop)) continue;
      const double j2 = 2.0 * couplings[static_cast<size_t>(x)];
      if (closes_loop) {
        entries[col] += 2.0 * j2;
        continue;
      }
      const auto it = index.find(moved);
      if (it == index.end()) {
        throw Error("bond action left the enumerated sector basis");
      }
      entries[it->second] -= j2;
    }
    for (const auto& [row, value] : entries) {
      if (value != 0.0) m.triplets.push_back({row, col, value});
    }
  }
  m.sort_triplets();
  return m;
}

// The expansion path works in the integer-count scaling of the basis: the
// site-state amplitude of a diagram is count/sqrt(W) with an integer count
// and a per-state weight W = prod_x C(2 s_x, k_x). Conjugating the
// Hamiltonian into this scaling cancels every square root - the hop element
// for S+_x S-_{x+1}/2 becomes k_x (2 s_{x+1} - k_{x+1}) / 2 - so the Gram and
// overlap matrices are assembled without rounding beyond the final divisions.
// Extended precision in the solve keeps structural zeros far below the sign
// tolerance.
using LongDouble = long double;
using MatrixXld = Eigen::Matrix<LongDouble, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXld = Eigen::Matrix<LongDouble, Eigen::Dynamic, 1>;

struct SiteLayout {
  std::vector<int64_t> dims, strides;
  int64_t dim = 1;

  explicit SiteLayout(const SpinChainSpec& chain) {
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

// S_x . S_{x+1} conjugated into the count scaling; all elements rational.
VectorXld apply_bond_ss_counts(const SpinChainSpec& chain, const SiteLayout& layout,
                               int64_t x, const VectorXld& v) {
  const int64_t nx = chain.spin(x).doubled();
  const int64_t ny = chain.spin(x + 1).doubled();
  const int64_t stride_x = layout.strides[static_cast<size_t>(x)];
  const int64_t stride_y = layout.strides[static_cast<size_t>(x + 1)];
  VectorXld out = VectorXld::Zero(v.size());
  for (int64_t i = 0; i < v.size(); ++i) {
    const LongDouble amp = v(i);
    if (amp == 0.0L) continue;
    const int64_t kx = layout.local(i, x);
    const int64_t ky = layout.local(i, x + 1);
    const LongDouble mx = LongDouble(nx) / 2.0L - LongDouble(kx);
    const LongDouble my = LongDouble(ny) / 2.0L - LongDouble(ky);
    out(i) += mx * my * amp;
    if (kx > 0 && ky < ny) {
      out(i - stride_x + stride_y) += 0.5L * LongDouble(kx * (ny - ky)) * amp;
    }
    if (ky > 0 && kx < nx) {
      out(i + stride_x - stride_y) += 0.5L * LongDouble((nx - kx) * ky) * amp;
    }
  }
  return out;
}

VectorXld apply_hamiltonian_counts(const SpinChainSpec& chain, const SiteLayout& layout,
                                   const VectorXld& v) {
  VectorXld out = VectorXld::Zero(v.size());
  for (int64_t x = 0; x + 1 < chain.length(); ++x) {
    const VectorXld ss = apply_bond_ss_counts(chain, layout, x, v);
    if (chain.model().kind == ModelKind::Heisenberg) {
      const LongDouble j = chain.couplings()[static_cast<size_t>(x)];
      const LongDouble inv =
          4.0L / (LongDouble(chain.spin(x).doubled()) * LongDouble(chain.spin(x + 1).doubled()));
      out += -j * (inv * ss - v);
    } else {
      const LongDouble t = chain.model().biquadratic_t;
      out += (v - ss) + t * (v - apply_bond_ss_counts(chain, layout, x, ss));
    }
  }
  return out;
}

SparseSectorMatrix expansion_assembly(const SpinChainSpec& chain, HalfInteger S,
                                      const std::vector<ArcDiagram>& basis,
                                      int64_t dense_limit) {
  const int64_t dim = chain.hilbert_dim();
  if (dim > dense_limit) {
    throw DimensionTooLarge("expansion path needs Hilbert dimension <= " +
                            std::to_string(dense_limit));
  }
  const SiteLayout layout(chain);
  const int64_t d = static_cast<int64_t>(basis.size());

  // Integer count vectors (the expansion without symmetrizer weights) and
  // the inverse state weights 1/W.
  MatrixXld counts = MatrixXld::Zero(dim, d);
  for (int64_t a = 0; a < d; ++a) {
    const ArcDiagram& diagram = basis[static_cast<size_t>(a)];
    std::vector<int64_t> base(static_cast<size_t>(chain.length()), 0);
    for (int64_t s : diagram.unpaired_down) base[static_cast<size_t>(diagram.site_of_strand(s))]++;
    std::vector<std::pair<int64_t, int64_t>> arc_sites;
    for (const auto& [i, j] : diagram.arcs) {
      arc_sites.emplace_back(diagram.site_of_strand(i), diagram.site_of_strand(j));
    }
    const size_t n_arcs = arc_sites.size();
    std::vector<int64_t> downs;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n_arcs); ++mask) {
      downs = base;
      int sign = 1;
      for (size_t arc = 0; arc < n_arcs; ++arc) {
        if (mask & (uint64_t{1} << arc)) {
          downs[static_cast<size_t>(arc_sites[arc].first)]++;
          sign = -sign;
        } else {
          downs[static_cast<size_t>(arc_sites[arc].second)]++;
        }
      }
      int64_t index = 0;
      for (int64_t x = 0; x < chain.length(); ++x) {
        index += downs[static_cast<size_t>(x)] * layout.strides[static_cast<size_t>(x)];
      }
      counts(index, a) += sign;
    }
  }

  VectorXld inv_weight(dim);
  for (int64_t i = 0; i < dim; ++i) {
    LongDouble w = 1.0L;
    for (int64_t x = 0; x < chain.length(); ++x) {
      const int64_t n = chain.spin(x).doubled();
      const int64_t k = layout.local(i, x);
      LongDouble binom = 1.0L;
      for (int64_t t = 0; t < k; ++t) binom *= LongDouble(n - t) / LongDouble(t + 1);
      w *= binom;
    }
    inv_weight(i) = 1.0L / w;
  }

  const MatrixXld weighted = inv_weight.asDiagonal() * counts;
  const MatrixXld gram = counts.transpose() * weighted;
  MatrixXld overlap(d, d);
  {
    MatrixXld transformed(dim, d);
    for (int64_t a = 0; a < d; ++a) {
      transformed.col(a) = apply_hamiltonian_counts(chain, layout, counts.col(a));
    }
    overlap = weighted.transpose() * transformed;
  }

  // Equilibrate by the bracket norms, solve, undo the scaling; all the
  // scalings are positive so entry signs are preserved.
  VectorXld norms(d);
  for (int64_t a = 0; a < d; ++a) norms(a) = std::sqrt(gram(a, a));
  MatrixXld gram_s = gram, overlap_s = overlap;
  for (int64_t a = 0; a < d; ++a) {
    gram_s.row(a) /= norms(a);
    gram_s.col(a) /= norms(a);
    overlap_s.row(a) /= norms(a);
    overlap_s.col(a) /= norms(a);
  }
  Eigen::LLT<MatrixXld> llt(gram_s);
  if (llt.info() != Eigen::Success) {
    throw Error("Gram matrix is not positive definite");
  }
  MatrixXld coeff = llt.solve(overlap_s);
  coeff += llt.solve(overlap_s - gram_s * coeff);  // one step of refinement

  SparseSectorMatrix m;
  m.dim = d;
  m.sector = S;
  m.chain_fingerprint = sector_fingerprint(chain, S);
  for (int64_t col = 0; col < d; ++col) {
    for (int64_t row = 0; row < d; ++row) {
      const double v =
          static_cast<double>(coeff(row, col) * norms(col) / norms(row));
      if (std::abs(v) > kSnapTol) m.triplets.push_back({row, col, v});
    }
  }
  m.sort_triplets();
  return m;
}

}  // namespace

SparseSectorMatrix sector_hamiltonian(const SpinChainSpec& chain, HalfInteger S,
                                      SectorOptions options) {
  const auto basis = enumerate_hw_basis(chain, S);
  SectorOptions::Path path = options.path;
  if (path == SectorOptions::Path::Auto) {
    path = chain.all_spin_half() ? SectorOptions::Path::Diagrammatic
                                 : SectorOptions::Path::Expansion;
  }
  if (path == SectorOptions::Path::Diagrammatic) {
    if (!chain.all_spin_half()) {
      throw UnsupportedSpin("diagrammatic assembly requires an all-spin-1/2 chain");
    }
    if (chain.model().kind != ModelKind::Heisenberg) {
      throw UnsupportedSpin("diagrammatic assembly covers the Heisenberg model only");
    }
    return diagrammatic_assembly(chain, S, basis);
  }
  return expansion_assembly(chain, S, basis, options.dense_limit);
}

ComparisonVerdict offdiag_nonpositive_check(const SparseSectorMatrix& m) {
  ComparisonVerdict verdict;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& t : m.triplets) {
    if (t.row == t.col) continue;
    worst = std::max(worst, t.value);
    if (t.value > kSignTol) {
      verdict.witnesses.push_back({"positive off-diagonal at (" +
                                       std::to_string(t.row + 1) + "," +
                                       std::to_string(t.col + 1) + ")",
                                   t.value});
    }
  }
  if (!verdict.witnesses.empty()) {
    verdict.status = CompareStatus::Violated;
  } else {
    verdict.status = CompareStatus::HoldsStrict;
    verdict.witnesses.push_back(
        {"max off-diagonal entry",
         std::isfinite(worst) ? worst : 0.0});
  }
  return verdict;
}

ComparisonVerdict compare_embedded(const SparseSectorMatrix& m_small,
                                   const SparseSectorMatrix& m_large,
                                   const std::vector<int64_t>& embedding,
                                   double tolerance) {
  if (static_cast<int64_t>(embedding.size()) != m_small.dim) {
    throw DimensionMismatch("embedding size does not match the small matrix");
  }
  if (m_large.sector.doubled() - m_small.sector.doubled() != 1) {
    throw DimensionMismatch("sectors are not related by one increment");
  }
  std::vector<bool> hit(static_cast<size_t>(m_large.dim), false);
  for (int64_t e : embedding) {
    if (e < 0 || e >= m_large.dim || hit[static_cast<size_t>(e)]) {
      throw DimensionMismatch("embedding is not injective into the large basis");
    }
    hit[static_cast<size_t>(e)] = true;
  }

  auto as_map = [](const SparseSectorMatrix& m) {
    std::unordered_map<int64_t, double> out;
    for (const auto& t : m.triplets) out[t.row * m.dim + t.col] += t.value;
    return out;
  };
  const auto small_map = as_map(m_small);
  const auto large_map = as_map(m_large);
  auto lookup = [](const std::unordered_map<int64_t, double>& map, int64_t key) {
    const auto it = map.find(key);
    return it == map.end() ? 0.0 : it->second;
  };

  ComparisonVerdict verdict;
  bool strict = false;
  for (int64_t i = 0; i < m_small.dim; ++i) {
    for (int64_t j = 0; j < m_small.dim; ++j) {
      const double sv = lookup(small_map, i * m_small.dim + j);
      const double lv = lookup(large_map, embedding[static_cast<size_t>(i)] * m_large.dim +
                                              embedding[static_cast<size_t>(j)]);
      const double diff = lv - sv;
      if (diff > tolerance) {
        verdict.witnesses.push_back(
            {"large exceeds small at (" + std::to_string(i + 1) + "," +
                 std::to_string(j + 1) + ")",
             diff});
      } else if (diff < -tolerance) {
        strict = true;
        verdict.witnesses.push_back(
            {"strict decrease at (" + std::to_string(i + 1) + "," +
                 std::to_string(j + 1) + ")",
             diff});
      }
    }
  }
  if (std::any_of(verdict.witnesses.begin(), verdict.witnesses.end(),
                  [](const Witness& w) { return w.value > 0.0; })) {
    verdict.status = CompareStatus::Violated;
  } else if (strict) {
    verdict.status = CompareStatus::HoldsStrict;
  } else {
    verdict.status = CompareStatus::HoldsNonStrict;
    verdict.witnesses.push_back({"entrywise equality within tolerance", 0.0});
  }
  return verdict;
}

}  // namespace foel
