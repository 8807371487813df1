#include "foelkit/arc_basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "foelkit/errors.hpp"

namespace foel {

namespace {

std::vector<std::pair<int64_t, int64_t>> blocks_of(const SpinChainSpec& chain) {
  std::vector<std::pair<int64_t, int64_t>> blocks;
  int64_t start = 0;
  for (HalfInteger s : chain.spins()) {
    blocks.emplace_back(start, s.doubled());
    start += s.doubled();
  }
  return blocks;
}

double binomial(int64_t n, int64_t k) {
  double out = 1.0;
  for (int64_t i = 0; i < k; ++i) {
    out *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return out;
}

void check_diagram_matches_chain(const ArcDiagram& d, const SpinChainSpec& chain) {
  if (d.blocks != blocks_of(chain) || d.strand_count != chain.strand_count()) {
    throw InconsistentDiagram("diagram does not belong to this chain");
  }
}

}  // namespace

HalfInteger ArcDiagram::total_spin() const {
  return HalfInteger::from_doubled(strand_count - 2 * static_cast<int64_t>(arcs.size()));
}

HalfInteger ArcDiagram::magnetization() const {
  const int64_t downs = static_cast<int64_t>(arcs.size() + unpaired_down.size());
  return HalfInteger::from_doubled(strand_count - 2 * downs);
}

std::vector<int64_t> ArcDiagram::unpaired_up() const {
  std::vector<bool> taken(static_cast<size_t>(strand_count), false);
  for (const auto& [i, j] : arcs) {
    taken[static_cast<size_t>(i)] = taken[static_cast<size_t>(j)] = true;
  }
  for (int64_t s : unpaired_down) taken[static_cast<size_t>(s)] = true;
  std::vector<int64_t> ups;
  for (int64_t s = 0; s < strand_count; ++s) {
    if (!taken[static_cast<size_t>(s)]) ups.push_back(s);
  }
  return ups;
}

int64_t ArcDiagram::site_of_strand(int64_t strand) const {
  for (size_t x = 0; x < blocks.size(); ++x) {
    if (strand < blocks[x].first + blocks[x].second) return static_cast<int64_t>(x);
  }
  throw InconsistentDiagram("strand index out of range");
}

OrderedIsingConfig ArcDiagram::config() const {
  std::vector<bool> down(static_cast<size_t>(strand_count), false);
  for (const auto& arc : arcs) down[static_cast<size_t>(arc.second)] = true;
  for (int64_t s : unpaired_down) down[static_cast<size_t>(s)] = true;
  OrderedIsingConfig cfg;
  for (const auto& [start, len] : blocks) {
    int64_t k = 0;
    for (int64_t s = start; s < start + len; ++s) {
      if (down[static_cast<size_t>(s)]) ++k;
    }
    cfg.downs_per_site.push_back(k);
  }
  return cfg;
}

void ArcDiagram::validate() const {
  std::vector<int> role(static_cast<size_t>(strand_count), 0);  // 1 arc-up, 2 arc-down, 3 free-down
  for (const auto& [i, j] : arcs) {
    if (i < 0 || j >= strand_count || i >= j) {
      throw InconsistentDiagram("malformed arc");
    }
    if (role[static_cast<size_t>(i)] || role[static_cast<size_t>(j)]) {
      throw InconsistentDiagram("strand used by more than one arc");
    }
    role[static_cast<size_t>(i)] = 1;
    role[static_cast<size_t>(j)] = 2;
  }
  for (int64_t s : unpaired_down) {
    if (s < 0 || s >= strand_count || role[static_cast<size_t>(s)]) {
      throw InconsistentDiagram("unpaired down strand clashes with an arc");
    }
    role[static_cast<size_t>(s)] = 3;
  }
  if (!std::is_sorted(arcs.begin(), arcs.end())) {
    throw InconsistentDiagram("arcs must be sorted");
  }
  for (size_t a = 0; a < arcs.size(); ++a) {
    for (size_t b = a + 1; b < arcs.size(); ++b) {
      const auto& [i, j] = arcs[a];
      const auto& [k, l] = arcs[b];
      const bool crossing = (i < k && k < j && j < l) || (k < i && i < l && l < j);
      if (crossing) throw InconsistentDiagram("arcs cross");
    }
  }
  for (const auto& [i, j] : arcs) {
    for (int64_t s = i + 1; s < j; ++s) {
      if (role[static_cast<size_t>(s)] == 0 || role[static_cast<size_t>(s)] == 3) {
        throw InconsistentDiagram("arc spans an unpaired strand");
      }
    }
  }
  // Block labels (downs from arc right-endpoints and free downs) must be
  // ordered: no up before a down inside a block.
  std::vector<bool> down(static_cast<size_t>(strand_count), false);
  for (const auto& arc : arcs) down[static_cast<size_t>(arc.second)] = true;
  for (int64_t s : unpaired_down) down[static_cast<size_t>(s)] = true;
  for (const auto& [start, len] : blocks) {
    bool seen_up = false;
    for (int64_t s = start; s < start + len; ++s) {
      const bool is_down = down[static_cast<size_t>(s)];
      if (is_down && seen_up) {
        throw InconsistentDiagram("block labels not ordered (down after up)");
      }
      if (!is_down) seen_up = true;
    }
  }
  int64_t total = 0;
  for (const auto& [start, len] : blocks) total += len;
  if (total != strand_count) {
    throw InconsistentDiagram("block lengths do not cover the strands");
  }
}

std::string ArcDiagram::str() const {
  std::string out = "S=" + total_spin().str() + " arcs=";
  for (const auto& [i, j] : arcs) {
    out += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  }
  out += " unpaired=";
  std::vector<std::pair<int64_t, bool>> free_strands;  // (strand, is_down)
  for (int64_t s : unpaired_down) free_strands.emplace_back(s, true);
  for (int64_t s : unpaired_up()) free_strands.emplace_back(s, false);
  std::sort(free_strands.begin(), free_strands.end());
  bool first = true;
  for (const auto& [s, is_down] : free_strands) {
    if (!first) out += " ";
    first = false;
    out += std::to_string(s + 1) + (is_down ? "↓" : "↑");
  }
  return out;
}

ArcDiagram pair_arcs(const OrderedIsingConfig& config, const SpinChainSpec& chain) {
  const auto blocks = blocks_of(chain);
  if (config.downs_per_site.size() != blocks.size()) {
    throw InconsistentDiagram("configuration length does not match the chain");
  }
  ArcDiagram d;
  d.strand_count = chain.strand_count();
  d.blocks = blocks;

  // Left-to-right scan; a stack of open up-strands realizes "connect this
  // down to the rightmost unpaired up on its left".
  std::vector<int64_t> open_ups;
  for (size_t x = 0; x < blocks.size(); ++x) {
    const int64_t k = config.downs_per_site[x];
    if (k < 0 || k > blocks[x].second) {
      throw InconsistentDiagram("down count out of range at site " +
                                std::to_string(x + 1));
    }
    for (int64_t s = blocks[x].first; s < blocks[x].first + blocks[x].second; ++s) {
      const bool is_down = (s - blocks[x].first) < k;
      if (!is_down) {
        open_ups.push_back(s);
      } else if (open_ups.empty()) {
        d.unpaired_down.push_back(s);
      } else {
        d.arcs.emplace_back(open_ups.back(), s);
        open_ups.pop_back();
      }
    }
  }
  std::sort(d.arcs.begin(), d.arcs.end());
  return d;
}

std::vector<ArcDiagram> enumerate_hw_basis(const SpinChainSpec& chain,
                                           HalfInteger S) {
  const int64_t d_expected = multiplicity(chain, S);
  if (d_expected == 0) throw NotAdmissible("S = " + S.str() + " is not admissible");
  const int64_t total_down = (max_total_spin(chain) - S).doubled() / 2;

  // Down-capacity of the tail, for pruning the descending-lex generation.
  const int64_t sites = chain.length();
  std::vector<int64_t> tail_capacity(static_cast<size_t>(sites) + 1, 0);
  for (int64_t x = sites; x-- > 0;) {
    tail_capacity[static_cast<size_t>(x)] =
        tail_capacity[static_cast<size_t>(x) + 1] + chain.spin(x).doubled();
  }

  std::vector<ArcDiagram> basis;
  OrderedIsingConfig cfg;
  cfg.downs_per_site.assign(static_cast<size_t>(sites), 0);
  auto recurse = [&](auto&& self, int64_t site, int64_t remaining) -> void {
    if (site == sites) {
      ArcDiagram d = pair_arcs(cfg, chain);
      if (d.unpaired_down.empty()) basis.push_back(std::move(d));
      return;
    }
    const int64_t cap = chain.spin(site).doubled();
    const int64_t hi = std::min(cap, remaining);
    const int64_t lo = std::max<int64_t>(0, remaining - tail_capacity[static_cast<size_t>(site) + 1]);
    for (int64_t k = hi; k >= lo; --k) {
      cfg.downs_per_site[static_cast<size_t>(site)] = k;
      self(self, site + 1, remaining - k);
    }
  };
  recurse(recurse, 0, total_down);

  if (static_cast<int64_t>(basis.size()) != d_expected) {
    throw Error("highest-weight enumeration count " + std::to_string(basis.size()) +
                " does not match multiplicity " + std::to_string(d_expected));
  }
  return basis;
}

Eigen::VectorXd TensorVector::to_dense() const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  for (const auto& [idx, amp] : amplitudes) v(idx) += amp;
  return v;
}

TensorVector expand_to_tensor(const ArcDiagram& diagram, const SpinChainSpec& chain,
                              int64_t dense_limit) {
  check_diagram_matches_chain(diagram, chain);
  diagram.validate();
  const int64_t dim = chain.hilbert_dim();
  if (dim > dense_limit) {
    throw DimensionTooLarge("expansion dimension " + std::to_string(dim) +
                            " exceeds the dense limit");
  }

  const int64_t sites = chain.length();
  std::vector<int64_t> stride(static_cast<size_t>(sites), 1);
  for (int64_t x = sites - 1; x-- > 0;) {
    stride[static_cast<size_t>(x)] =
        stride[static_cast<size_t>(x) + 1] * multiplet_dim(chain.spin(x + 1));
  }

  // Base down counts from unpaired strands; arcs toggle one down between
  // their two endpoints.
  std::vector<int64_t> base_downs(static_cast<size_t>(sites), 0);
  for (int64_t s : diagram.unpaired_down) {
    base_downs[static_cast<size_t>(diagram.site_of_strand(s))]++;
  }
  struct ArcSites {
    int64_t left_site, right_site;
  };
  std::vector<ArcSites> arc_sites;
  for (const auto& [i, j] : diagram.arcs) {
    arc_sites.push_back({diagram.site_of_strand(i), diagram.site_of_strand(j)});
  }

  // Per-site symmetrization: a block arrangement with k downs maps onto the
  // site state |s, s-k> with weight 1/sqrt(C(2s, k)).
  std::vector<std::vector<double>> symm_weight(static_cast<size_t>(sites));
  for (int64_t x = 0; x < sites; ++x) {
    const int64_t n = chain.spin(x).doubled();
    for (int64_t k = 0; k <= n; ++k) {
      symm_weight[static_cast<size_t>(x)].push_back(1.0 / std::sqrt(binomial(n, k)));
    }
  }

  std::map<int64_t, double> amps;
  const size_t n_arcs = diagram.arcs.size();
  std::vector<int64_t> downs(static_cast<size_t>(sites));
  for (uint64_t mask = 0; mask < (uint64_t{1} << n_arcs); ++mask) {
    downs = base_downs;
    int sign = 1;
    for (size_t a = 0; a < n_arcs; ++a) {
      if (mask & (uint64_t{1} << a)) {
        downs[static_cast<size_t>(arc_sites[a].left_site)]++;  // down-up order
        sign = -sign;
      } else {
        downs[static_cast<size_t>(arc_sites[a].right_site)]++;  // up-down order
      }
    }
    double coeff = sign;
    int64_t index = 0;
    for (int64_t x = 0; x < sites; ++x) {
      coeff *= symm_weight[static_cast<size_t>(x)][static_cast<size_t>(downs[static_cast<size_t>(x)])];
      index += downs[static_cast<size_t>(x)] * stride[static_cast<size_t>(x)];
    }
    amps[index] += coeff;
  }

  TensorVector v;
  v.dim = dim;
  for (const auto& [idx, amp] : amps) {
    if (amp != 0.0) v.amplitudes.emplace_back(idx, amp);
  }
  return v;
}

Eigen::MatrixXd gram_matrix(const std::vector<ArcDiagram>& diagrams,
                            const SpinChainSpec& chain, int64_t dense_limit) {
  if (diagrams.empty()) return Eigen::MatrixXd::Zero(0, 0);
  const HalfInteger sector = diagrams.front().total_spin();
  for (const auto& d : diagrams) {
    if (d.total_spin() != sector) {
      throw InconsistentDiagram("diagrams belong to different sectors");
    }
  }
  const int64_t n = static_cast<int64_t>(diagrams.size());
  Eigen::MatrixXd w(chain.hilbert_dim(), n);
  for (int64_t a = 0; a < n; ++a) {
    w.col(a) = expand_to_tensor(diagrams[static_cast<size_t>(a)], chain, dense_limit)
                   .to_dense();
  }
  return w.transpose() * w;
}

ArcDiagram embed_next(const ArcDiagram& diagram, const IncrementStep& step) {
  const auto target_blocks = [&] {
    std::vector<std::pair<int64_t, int64_t>> blocks;
    int64_t start = 0;
    for (HalfInteger s : step.chain.spins()) {
      blocks.emplace_back(start, s.doubled());
      start += s.doubled();
    }
    return blocks;
  }();

  ArcDiagram out = diagram;
  switch (step.kind) {
    case IncrementStep::Kind::CaseI:
      out.blocks.emplace_back(out.strand_count, 1);
      out.strand_count += 1;
      break;
    case IncrementStep::Kind::CaseII:
      if (out.blocks.empty()) throw InvalidStep("no block to grow");
      out.blocks.back().second += 1;
      out.strand_count += 1;
      break;
    case IncrementStep::Kind::Start:
      throw InvalidStep("cannot embed across the start of a sequence");
  }
  if (out.blocks != target_blocks) {
    throw InvalidStep("diagram does not match the step's source chain");
  }
  return out;
}

std::vector<int64_t> embedding_indices(const SpinChainSpec& small_chain,
                                       HalfInteger S, const IncrementStep& step) {
  const auto small_basis = enumerate_hw_basis(small_chain, S);
  const auto large_basis = enumerate_hw_basis(step.chain, S + kSpinHalf);
  std::map<ArcDiagram, int64_t> index;
  for (size_t i = 0; i < large_basis.size(); ++i) {
    index.emplace(large_basis[i], static_cast<int64_t>(i));
  }
  std::vector<int64_t> out;
  out.reserve(small_basis.size());
  for (const auto& d : small_basis) {
    const auto it = index.find(embed_next(d, step));
    if (it == index.end()) {
      throw Error("embedded diagram missing from the grown chain's basis");
    }
    out.push_back(it->second);
  }
  return out;
}

}  // namespace foel
