#include <doctest.h>

#include <random>

#include "foelkit/chain.hpp"
#include "foelkit/errors.hpp"
#include "foelkit/half_integer.hpp"

using namespace foel;

namespace {

SpinChainSpec chain_of(std::initializer_list<const char*> spins, double j = 1.0) {
  std::vector<HalfInteger> parsed;
  for (const char* s : spins) parsed.push_back(HalfInteger::parse(s));
  return SpinChainSpec(parsed, std::vector<double>(parsed.size() - 1, j));
}

SpinChainSpec random_chain(std::mt19937& rng, int max_sites) {
  std::uniform_int_distribution<int> length(1, max_sites);
  std::uniform_int_distribution<int> spin(1, 3);  // doubled: 1/2, 1, 3/2
  std::uniform_real_distribution<double> coupling(0.1, 2.0);
  const int sites = length(rng);
  std::vector<HalfInteger> spins;
  std::vector<double> couplings;
  for (int i = 0; i < sites; ++i) spins.push_back(HalfInteger::from_doubled(spin(rng)));
  for (int i = 0; i + 1 < sites; ++i) couplings.push_back(coupling(rng));
  return SpinChainSpec(spins, couplings);
}

}  // namespace

TEST_CASE("half integer parsing and formatting") {
  CHECK(HalfInteger::parse("1/2").doubled() == 1);
  CHECK(HalfInteger::parse("3/2").doubled() == 3);
  CHECK(HalfInteger::parse("2").doubled() == 4);
  CHECK(HalfInteger::parse("0").doubled() == 0);
  CHECK(HalfInteger::parse("5/2").str() == "5/2");
  CHECK(HalfInteger::parse("3").str() == "3");
  CHECK_THROWS_AS(HalfInteger::parse("1/3"), ParseError);
  CHECK_THROWS_AS(HalfInteger::parse("a"), ParseError);
  CHECK_THROWS_AS(HalfInteger::parse(""), ParseError);
  CHECK(HalfInteger::parse("1/2") + HalfInteger::parse("1") == HalfInteger::parse("3/2"));
}

TEST_CASE("chain validation") {
  CHECK_THROWS_AS(SpinChainSpec({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(SpinChainSpec({HalfInteger::from_int(0)}, {}), std::invalid_argument);
  CHECK_THROWS_AS(SpinChainSpec({kSpinHalf, kSpinHalf}, {}), std::invalid_argument);
  CHECK_THROWS_AS(SpinChainSpec({kSpinHalf, kSpinHalf}, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SpinChainSpec({kSpinHalf, kSpinHalf}, {1.0},
                                Model::bilinear_biquadratic(0.1)),
                  std::invalid_argument);
}

TEST_CASE("max total spin") {
  CHECK(max_total_spin(chain_of({"1/2"})) == HalfInteger::parse("1/2"));
  CHECK(max_total_spin(chain_of({"1/2", "1", "3/2"})) == HalfInteger::parse("3"));
  CHECK(max_total_spin(chain_of({"1/2", "1/2", "1/2", "1/2"})) == HalfInteger::parse("2"));
}

TEST_CASE("multiplicity against small closed forms") {
  const auto two = chain_of({"1/2", "1/2"});
  CHECK(multiplicity(two, HalfInteger::parse("0")) == 1);
  CHECK(multiplicity(two, HalfInteger::parse("1")) == 1);
  CHECK(multiplicity(two, HalfInteger::parse("2")) == 0);
  CHECK(multiplicity(two, HalfInteger::parse("1/2")) == 0);  // parity mismatch

  const auto four = chain_of({"1/2", "1/2", "1/2", "1/2"});
  CHECK(multiplicity(four, HalfInteger::parse("2")) == 1);
  CHECK(multiplicity(four, HalfInteger::parse("1")) == 3);
  CHECK(multiplicity(four, HalfInteger::parse("0")) == 2);

  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto chain = random_chain(rng, 5);
    CHECK(multiplicity(chain, max_total_spin(chain)) == 1);
  }
}

TEST_CASE("admissible spins") {
  const auto two = chain_of({"1/2", "1/2"});
  const auto spins = admissible_spins(two);
  REQUIRE(spins.size() == 2);
  CHECK(spins[0] == HalfInteger::parse("1"));
  CHECK(spins[1] == HalfInteger::parse("0"));

  const auto mixed = admissible_spins(chain_of({"1/2", "1"}));
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0] == HalfInteger::parse("3/2"));
  CHECK(mixed[1] == HalfInteger::parse("1/2"));

  const auto single = admissible_spins(chain_of({"1"}));
  REQUIRE(single.size() == 1);
  CHECK(single[0] == HalfInteger::parse("1"));
}

TEST_CASE("completeness of the Clebsch-Gordan counts") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto chain = random_chain(rng, 6);
    int64_t total = 0;
    for (HalfInteger s : admissible_spins(chain)) {
      total += multiplicity(chain, s) * multiplet_dim(s);
    }
    CHECK(total == chain.hilbert_dim());
  }
}

TEST_CASE("build sequence golden cases") {
  SUBCASE("two spin-1/2 sites") {
    const auto seq = build_sequence(chain_of({"1/2", "1/2"}));
    REQUIRE(seq.size() == 2);
    CHECK(seq[0].kind == IncrementStep::Kind::Start);
    CHECK(seq[0].chain.length() == 1);
    CHECK(seq[1].kind == IncrementStep::Kind::CaseI);
    CHECK(seq[1].chain == chain_of({"1/2", "1/2"}));
  }
  SUBCASE("spin-1/2 then spin-1") {
    const auto seq = build_sequence(chain_of({"1/2", "1"}));
    REQUIRE(seq.size() == 3);
    CHECK(seq[1].kind == IncrementStep::Kind::CaseI);
    CHECK(seq[2].kind == IncrementStep::Kind::CaseII);
    CHECK(seq[2].chain == chain_of({"1/2", "1"}));
  }
  SUBCASE("single spin-1 site") {
    const auto seq = build_sequence(chain_of({"1"}));
    REQUIRE(seq.size() == 2);
    CHECK(seq[0].kind == IncrementStep::Kind::Start);
    CHECK(seq[1].kind == IncrementStep::Kind::CaseII);
    CHECK(seq[1].chain == chain_of({"1"}));
  }
}

TEST_CASE("build sequence properties on random chains") {
  std::mt19937 rng(23);
  for (int i = 0; i < 60; ++i) {
    const auto chain = random_chain(rng, 5);
    const auto seq = build_sequence(chain);
    REQUIRE(static_cast<int64_t>(seq.size()) == max_total_spin(chain).doubled());
    CHECK(seq.front().kind == IncrementStep::Kind::Start);
    CHECK(seq.front().chain.spins() == std::vector<HalfInteger>{kSpinHalf});
    CHECK(seq.back().chain == chain);
    for (size_t k = 1; k < seq.size(); ++k) {
      const auto& prev = seq[k - 1].chain;
      const auto& cur = seq[k].chain;
      CHECK((max_total_spin(cur) - max_total_spin(prev)).doubled() == 1);
      if (seq[k].kind == IncrementStep::Kind::CaseI) {
        CHECK(cur.length() == prev.length() + 1);
        CHECK(cur.spins().back() == kSpinHalf);
      } else {
        CHECK(seq[k].kind == IncrementStep::Kind::CaseII);
        CHECK(cur.length() == prev.length());
        CHECK((cur.spins().back() - prev.spins().back()).doubled() == 1);
      }
      // couplings are inherited from the final chain on existing bonds
      for (size_t b = 0; b < cur.couplings().size(); ++b) {
        CHECK(cur.couplings()[b] == chain.couplings()[b]);
      }
      // monotone multiplicity along the sequence
      for (HalfInteger s : admissible_spins(prev)) {
        CHECK(multiplicity(prev, s) <= multiplicity(cur, s + kSpinHalf));
      }
    }
  }
}
