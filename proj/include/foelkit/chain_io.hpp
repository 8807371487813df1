#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include <json.hpp>

#include "foelkit/chain.hpp"
#include "foelkit/comparison.hpp"
#include "foelkit/energy_table.hpp"
#include "foelkit/spectra.hpp"

namespace foel {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Chain-spec files are JSON:
///   {"spins": ["1/2", "1"], "couplings": [1.0],
///    "model": {"type": "heisenberg"}}
/// with spins as exact fraction strings and an optional model object
/// ({"type": "bilinear-biquadratic", "t": 0.25} for the spin-1 family).
/// Parse errors carry the offending field in their message.
SpinChainSpec parse_chain_json(const nlohmann::json& j);
SpinChainSpec parse_chain_file(const std::filesystem::path& path);
nlohmann::json chain_to_json(const SpinChainSpec& chain);

nlohmann::json energy_table_to_json(const EnergyTable& table);
nlohmann::json foel_report_to_json(const SpinChainSpec& chain, const FoelReport& report);
nlohmann::json verdict_to_json(const ComparisonVerdict& verdict);

/// CSV rows S_doubled, dimension, energy, method where dimension is the full
/// total-spin-S eigenspace size d(S) * (2S+1).
void write_spectrum_csv(std::ostream& os, const EnergyTable& table);

/// Sector-matrix cache format: header "dim nnz sector_doubled", then one
/// "row col value" triplet per line, 0-based, 17 significant digits.
void write_sector_matrix(std::ostream& os, const SparseSectorMatrix& m);
SparseSectorMatrix read_sector_matrix(std::istream& is, uint64_t fingerprint);

/// Disk cache of assembled sector matrices, keyed by the chain/sector
/// fingerprint. Writes are atomic (temp file + rename).
class SectorCache {
 public:
  SectorCache(bool enabled, std::filesystem::path dir);

  /// FOEL_CACHE_DIR environment override, else ".foel-cache".
  static std::filesystem::path default_dir();

  SparseSectorMatrix get(const SpinChainSpec& chain, HalfInteger S,
                         SectorOptions options) const;
  SectorProvider provider() const;

  bool enabled() const { return enabled_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  bool enabled_ = false;
  std::filesystem::path dir_;
};

}  // namespace foel
