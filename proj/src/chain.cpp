#include "foelkit/chain.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace foel {

namespace {

constexpr int64_t kCountMax = std::numeric_limits<int64_t>::max();

int64_t saturating_add(int64_t a, int64_t b) {
  if (a > kCountMax - b) return kCountMax;
  return a + b;
}

// Multiplicity of every total spin, indexed by doubled value, obtained by
// reducing the product representation site by site.
std::vector<int64_t> clebsch_gordan_counts(const SpinChainSpec& chain) {
  std::vector<int64_t> counts{1};  // single S=0 "vacuum" before any site
  for (HalfInteger s : chain.spins()) {
    const int64_t ds = s.doubled();
    std::vector<int64_t> next(counts.size() + static_cast<size_t>(ds), 0);
    for (size_t dj = 0; dj < counts.size(); ++dj) {
      if (counts[dj] == 0) continue;
      const int64_t j2 = static_cast<int64_t>(dj);
      const int64_t lo = std::abs(j2 - ds);
      const int64_t hi = j2 + ds;
      for (int64_t k = lo; k <= hi; k += 2) {
        next[static_cast<size_t>(k)] =
            saturating_add(next[static_cast<size_t>(k)], counts[dj]);
      }
    }
    counts = std::move(next);
  }
  return counts;
}

}  // namespace

SpinChainSpec::SpinChainSpec(std::vector<HalfInteger> spins,
                             std::vector<double> couplings, Model model)
    : spins_(std::move(spins)), couplings_(std::move(couplings)), model_(model) {
  if (spins_.empty()) throw std::invalid_argument("chain needs at least one site");
  for (const HalfInteger s : spins_) {
    if (s.doubled() < 1) throw std::invalid_argument("site spins must be >= 1/2");
  }
  if (couplings_.size() + 1 != spins_.size()) {
    throw std::invalid_argument("need exactly one coupling per bond");
  }
  for (const double j : couplings_) {
    if (!(j > 0.0)) throw std::invalid_argument("couplings must be positive");
  }
  if (model_.kind == ModelKind::BilinearBiquadratic) {
    for (const HalfInteger s : spins_) {
      if (s.doubled() != 2) {
        throw std::invalid_argument(
            "bilinear-biquadratic model requires spin-1 sites");
      }
    }
  }
}

int64_t SpinChainSpec::strand_count() const {
  int64_t n = 0;
  for (const HalfInteger s : spins_) n += s.doubled();
  return n;
}

int64_t SpinChainSpec::hilbert_dim() const {
  int64_t dim = 1;
  for (const HalfInteger s : spins_) {
    const int64_t d = multiplet_dim(s);
    if (dim > std::numeric_limits<int64_t>::max() / d) {
      return std::numeric_limits<int64_t>::max();
    }
    dim *= d;
  }
  return dim;
}

bool SpinChainSpec::all_spin_half() const {
  return std::all_of(spins_.begin(), spins_.end(),
                     [](HalfInteger s) { return s.doubled() == 1; });
}

HalfInteger max_total_spin(const SpinChainSpec& chain) {
  return HalfInteger::from_doubled(chain.strand_count());
}

int64_t multiplicity(const SpinChainSpec& chain, HalfInteger S) {
  if (S.doubled() < 0) return 0;
  const auto counts = clebsch_gordan_counts(chain);
  const auto idx = static_cast<size_t>(S.doubled());
  if (idx >= counts.size()) return 0;
  return counts[idx];
}

std::vector<HalfInteger> admissible_spins(const SpinChainSpec& chain) {
  const auto counts = clebsch_gordan_counts(chain);
  std::vector<HalfInteger> out;
  for (size_t dj = counts.size(); dj-- > 0;) {
    if (counts[dj] > 0) out.push_back(HalfInteger::from_doubled(static_cast<int64_t>(dj)));
  }
  return out;
}

std::vector<IncrementStep> build_sequence(const SpinChainSpec& chain) {
  if (chain.model().kind != ModelKind::Heisenberg) {
    throw std::invalid_argument(
        "the incremental construction is defined for Heisenberg chains");
  }
  std::vector<IncrementStep> steps;
  const auto& spins = chain.spins();
  const auto& couplings = chain.couplings();

  std::vector<HalfInteger> cur_spins;
  std::vector<double> cur_couplings;
  auto emit = [&](IncrementStep::Kind kind) {
    steps.push_back(IncrementStep{
        kind, SpinChainSpec(cur_spins, cur_couplings, chain.model())});
  };

  for (size_t site = 0; site < spins.size(); ++site) {
    if (site == 0) {
      cur_spins.push_back(kSpinHalf);
      emit(IncrementStep::Kind::Start);
    } else {
      cur_spins.push_back(kSpinHalf);
      cur_couplings.push_back(couplings[site - 1]);
      emit(IncrementStep::Kind::CaseI);
    }
    while (cur_spins.back() < spins[site]) {
      cur_spins.back() = cur_spins.back() + kSpinHalf;
      emit(IncrementStep::Kind::CaseII);
    }
  }
  return steps;
}

}  // namespace foel
