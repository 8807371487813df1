#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "foelkit/chain_io.hpp"
#include "foelkit/errors.hpp"

using namespace foel;
using nlohmann::json;

TEST_CASE("chain files parse with exact spin fractions") {
  const json j = {{"spins", {"1/2", "1", "3/2"}}, {"couplings", {1.0, 0.5}}};
  const SpinChainSpec chain = parse_chain_json(j);
  CHECK(chain.length() == 3);
  CHECK(chain.spin(2) == HalfInteger::parse("3/2"));
  CHECK(chain.couplings()[1] == 0.5);
  CHECK(chain.model().kind == ModelKind::Heisenberg);
}

TEST_CASE("chain parse errors carry field locations") {
  CHECK_THROWS_WITH_AS(parse_chain_json(json{{"spins", {"1/2", 1.0}}, {"couplings", {1.0}}}),
                       doctest::Contains("spins[1]"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_chain_json(json{{"spins", {"1/2", "1/2"}}, {"couplings", {-1.0}}}),
      doctest::Contains("couplings[0]"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_chain_json(json{{"spins", {"1/2"}}, {"model", {{"type", "xyz"}}}}),
      doctest::Contains("model.type"), ParseError);
  CHECK_THROWS_AS(parse_chain_json(json::array()), ParseError);
}

TEST_CASE("biquadratic model round-trips") {
  const json j = {{"spins", {"1", "1"}},
                  {"couplings", {1.0}},
                  {"model", {{"type", "bilinear-biquadratic"}, {"t", 0.25}}}};
  const SpinChainSpec chain = parse_chain_json(j);
  CHECK(chain.model().kind == ModelKind::BilinearBiquadratic);
  CHECK(chain.model().biquadratic_t == 0.25);
  CHECK(parse_chain_json(chain_to_json(chain)) == chain);
}

TEST_CASE("sector matrix file format round-trips bit-exactly") {
  const SpinChainSpec chain(std::vector<HalfInteger>(4, kSpinHalf), {1.0, 0.3, 0.7});
  const auto m = sector_hamiltonian(chain, HalfInteger::parse("1"));

  std::ostringstream first;
  write_sector_matrix(first, m);
  std::istringstream in(first.str());
  const auto reloaded = read_sector_matrix(in, m.chain_fingerprint);
  CHECK(reloaded.dim == m.dim);
  CHECK(reloaded.sector == m.sector);
  REQUIRE(reloaded.triplets.size() == m.triplets.size());
  for (size_t i = 0; i < m.triplets.size(); ++i) {
    CHECK(reloaded.triplets[i] == m.triplets[i]);
  }
  std::ostringstream second;
  write_sector_matrix(second, reloaded);
  CHECK(first.str() == second.str());

  const std::string header = first.str().substr(0, first.str().find('\n'));
  CHECK(header == std::to_string(m.dim) + " " + std::to_string(m.triplets.size()) + " 2");
}

TEST_CASE("malformed sector matrix files are rejected") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_sector_matrix(empty, 0), ParseError);
  std::istringstream truncated("2 2 0\n0 0 1.5\n");
  CHECK_THROWS_AS(read_sector_matrix(truncated, 0), ParseError);
  std::istringstream out_of_range("1 1 0\n3 0 1.0\n");
  CHECK_THROWS_AS(read_sector_matrix(out_of_range, 0), ParseError);
}

TEST_CASE("sector cache stores and reloads assembled matrices") {
  const auto dir = std::filesystem::temp_directory_path() / "foelkit-cache-test";
  std::filesystem::remove_all(dir);
  const SectorCache cache(true, dir);
  const SpinChainSpec chain(std::vector<HalfInteger>(3, kSpinHalf), {1.0, 2.0});

  const auto first = cache.get(chain, HalfInteger::parse("1/2"), {});
  REQUIRE(std::filesystem::exists(dir));
  size_t files = 0;
  for ([[maybe_unused]] const auto& entry : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);

  const auto second = cache.get(chain, HalfInteger::parse("1/2"), {});
  CHECK(second.dim == first.dim);
  REQUIRE(second.triplets.size() == first.triplets.size());
  for (size_t i = 0; i < first.triplets.size(); ++i) {
    CHECK(second.triplets[i] == first.triplets[i]);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("spectrum csv lists the full eigenspace dimension") {
  EnergyTable table;
  table.entries.push_back({HalfInteger::parse("1"), 1, 0.0, SolveMethod::Dense});
  table.entries.push_back({HalfInteger::parse("0"), 1, 4.0, SolveMethod::Dense});
  std::ostringstream os;
  write_spectrum_csv(os, table);
  CHECK(os.str() ==
        "S_doubled,dimension,energy,method\n"
        "2,3,0,dense\n"
        "0,1,4,dense\n");
}

TEST_CASE("report json carries chain, table, status and violations") {
  const SpinChainSpec chain(std::vector<HalfInteger>(2, kSpinHalf), {1.0});
  const FoelReport report = foel_check(chain);
  const json j = foel_report_to_json(chain, report);
  CHECK(j["status"] == "holds_strict");
  CHECK(j["violations"].empty());
  REQUIRE(j["table"].size() == 2);
  CHECK(j["table"][0]["S_doubled"] == 2);
  CHECK(j["table"][0]["dim"] == 1);
  CHECK(j["chain"]["spins"][0] == "1/2");
}
