#include "foelkit/chain_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "foelkit/errors.hpp"
#include "foelkit/sparse_matrix.hpp"

namespace foel {

namespace {

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

SpinChainSpec parse_chain_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("chain spec: expected a JSON object");
  if (!j.contains("spins") || !j["spins"].is_array() || j["spins"].empty()) {
    throw ParseError("spins: expected a non-empty array of fraction strings");
  }
  std::vector<HalfInteger> spins;
  for (size_t i = 0; i < j["spins"].size(); ++i) {
    const auto& entry = j["spins"][i];
    if (!entry.is_string()) {
      throw ParseError("spins[" + std::to_string(i) +
                       "]: expected a string like \"3/2\"");
    }
    try {
      spins.push_back(HalfInteger::parse(entry.get<std::string>()));
    } catch (const ParseError& e) {
      throw ParseError("spins[" + std::to_string(i) + "]: " + e.what());
    }
  }

  std::vector<double> couplings;
  if (j.contains("couplings")) {
    if (!j["couplings"].is_array()) {
      throw ParseError("couplings: expected an array of positive numbers");
    }
    for (size_t i = 0; i < j["couplings"].size(); ++i) {
      const auto& entry = j["couplings"][i];
      if (!entry.is_number()) {
        throw ParseError("couplings[" + std::to_string(i) + "]: expected a number");
      }
      couplings.push_back(entry.get<double>());
      if (!(couplings.back() > 0.0)) {
        throw ParseError("couplings[" + std::to_string(i) + "]: must be positive");
      }
    }
  }

  Model model = Model::heisenberg();
  if (j.contains("model")) {
    const auto& m = j["model"];
    if (!m.is_object() || !m.contains("type") || !m["type"].is_string()) {
      throw ParseError("model.type: expected \"heisenberg\" or \"bilinear-biquadratic\"");
    }
    const std::string type = m["type"].get<std::string>();
    if (type == "heisenberg") {
      model = Model::heisenberg();
    } else if (type == "bilinear-biquadratic") {
      if (!m.contains("t") || !m["t"].is_number()) {
        throw ParseError("model.t: the bilinear-biquadratic model needs a numeric t");
      }
      model = Model::bilinear_biquadratic(m["t"].get<double>());
    } else {
      throw ParseError("model.type: unknown model \"" + type + "\"");
    }
  }

  try {
    return SpinChainSpec(std::move(spins), std::move(couplings), model);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("chain spec: ") + e.what());
  }
}

SpinChainSpec parse_chain_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open chain file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return parse_chain_json(j);
}

nlohmann::json chain_to_json(const SpinChainSpec& chain) {
  nlohmann::json j;
  j["spins"] = nlohmann::json::array();
  for (HalfInteger s : chain.spins()) j["spins"].push_back(s.str());
  j["couplings"] = chain.couplings();
  if (chain.model().kind == ModelKind::Heisenberg) {
    j["model"] = {{"type", "heisenberg"}};
  } else {
    j["model"] = {{"type", "bilinear-biquadratic"}, {"t", chain.model().biquadratic_t}};
  }
  return j;
}

nlohmann::json energy_table_to_json(const EnergyTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : table.entries) {
    rows.push_back({{"S_doubled", e.S.doubled()},
                    {"dim", e.dimension},
                    {"energy", e.energy},
                    {"method", to_string(e.method)}});
  }
  return rows;
}

nlohmann::json foel_report_to_json(const SpinChainSpec& chain, const FoelReport& report) {
  nlohmann::json j;
  j["chain"] = chain_to_json(chain);
  j["table"] = energy_table_to_json(report.table);
  j["status"] = to_string(report.status);
  j["violations"] = nlohmann::json::array();
  for (const auto& v : report.violations) {
    j["violations"].push_back({{"S_low_doubled", v.S_low.doubled()},
                               {"S_high_doubled", v.S_high.doubled()},
                               {"e_low", v.e_low},
                               {"e_high", v.e_high}});
  }
  return j;
}

nlohmann::json verdict_to_json(const ComparisonVerdict& verdict) {
  nlohmann::json j;
  j["status"] = to_string(verdict.status);
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : verdict.witnesses) {
    j["witnesses"].push_back({{"location", w.location}, {"value", w.value}});
  }
  if (std::isfinite(verdict.e_small)) j["e_small"] = verdict.e_small;
  if (std::isfinite(verdict.e_large)) j["e_large"] = verdict.e_large;
  return j;
}

void write_spectrum_csv(std::ostream& os, const EnergyTable& table) {
  os << "S_doubled,dimension,energy,method\n";
  for (const auto& e : table.entries) {
    os << e.S.doubled() << "," << e.dimension * multiplet_dim(e.S) << ","
       << format_double(e.energy) << "," << to_string(e.method) << "\n";
  }
}

void write_sector_matrix(std::ostream& os, const SparseSectorMatrix& m) {
  os << m.dim << " " << m.triplets.size() << " " << m.sector.doubled() << "\n";
  for (const auto& t : m.triplets) {
    os << t.row << " " << t.col << " " << format_double(t.value) << "\n";
  }
}

SparseSectorMatrix read_sector_matrix(std::istream& is, uint64_t fingerprint) {
  SparseSectorMatrix m;
  int64_t nnz = 0;
  int64_t sector_doubled = 0;
  if (!(is >> m.dim >> nnz >> sector_doubled)) {
    throw ParseError("sector matrix: malformed header");
  }
  m.sector = HalfInteger::from_doubled(sector_doubled);
  m.chain_fingerprint = fingerprint;
  m.triplets.reserve(static_cast<size_t>(nnz));
  for (int64_t i = 0; i < nnz; ++i) {
    SparseSectorMatrix::Triplet t;
    if (!(is >> t.row >> t.col >> t.value)) {
      throw ParseError("sector matrix: truncated triplet list");
    }
    if (t.row < 0 || t.row >= m.dim || t.col < 0 || t.col >= m.dim) {
      throw ParseError("sector matrix: triplet index out of range");
    }
    m.triplets.push_back(t);
  }
  return m;
}

SectorCache::SectorCache(bool enabled, std::filesystem::path dir)
    : enabled_(enabled), dir_(std::move(dir)) {}

std::filesystem::path SectorCache::default_dir() {
  if (const char* env = std::getenv("FOEL_CACHE_DIR")) {
    return std::filesystem::path(env);
  }
  return std::filesystem::path(".foel-cache");
}

SparseSectorMatrix SectorCache::get(const SpinChainSpec& chain, HalfInteger S,
                                    SectorOptions options) const {
  if (!enabled_) return sector_hamiltonian(chain, S, options);

  const uint64_t fp = sector_fingerprint(chain, S);
  char name[32];
  std::snprintf(name, sizeof(name), "%016" PRIx64 ".mat", fp);
  const std::filesystem::path file = dir_ / name;

  if (std::filesystem::exists(file)) {
    std::ifstream in(file);
    if (in) return read_sector_matrix(in, fp);
  }

  SparseSectorMatrix m = sector_hamiltonian(chain, S, options);
  std::filesystem::create_directories(dir_);
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    write_sector_matrix(out, m);
  }
  std::filesystem::rename(tmp, file);
  return m;
}

SectorProvider SectorCache::provider() const {
  return [cache = *this](const SpinChainSpec& chain, HalfInteger S,
                         SectorOptions options) { return cache.get(chain, S, options); };
}

}  // namespace foel
