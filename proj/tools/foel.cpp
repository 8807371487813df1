// Command-line front end: chain-spec ingestion, spectrum/ordering reports,
// basis dumps and the sector-matrix disk cache.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "foelkit/chain_io.hpp"
#include "foelkit/errors.hpp"
#include "foelkit/spectra.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 2;
constexpr int kExitNonStrict = 3;
constexpr int kExitViolated = 4;

struct CommonArgs {
  std::string chain_path;
  std::string method = "auto";
  std::string cache = "off";
};

foel::SpectraOptions make_options(const CommonArgs& args) {
  foel::SpectraOptions options;
  if (args.method == "dense") {
    options.method = foel::MethodChoice::Dense;
  } else if (args.method == "sector") {
    options.method = foel::MethodChoice::Sector;
  } else if (args.method == "auto") {
    options.method = foel::MethodChoice::Auto;
  } else {
    throw foel::ParseError("--method must be auto, dense or sector");
  }
  if (args.cache == "on") {
    foel::SectorCache cache(true, foel::SectorCache::default_dir());
    options.sector_provider = cache.provider();
  } else if (args.cache != "off") {
    throw foel::ParseError("--cache must be on or off");
  }
  return options;
}

json run_report(const std::string& command, const foel::SpinChainSpec* chain,
                double total_ms, json results) {
  json report;
  report["command"] = command;
  if (chain != nullptr) {
    char fp[32];
    std::snprintf(fp, sizeof(fp), "%016llx",
                  static_cast<unsigned long long>(foel::chain_fingerprint(*chain)));
    report["chain_fingerprint"] = fp;
  }
  report["tool_version"] = std::string(foel::kToolVersion);
  report["timings"] = {{"total_ms", total_ms}};
  report["results"] = std::move(results);
  return report;
}

int status_exit_code(foel::CompareStatus status) {
  switch (status) {
    case foel::CompareStatus::HoldsStrict:
      return kExitOk;
    case foel::CompareStatus::HoldsNonStrict:
      return kExitNonStrict;
    default:
      return kExitViolated;
  }
}

foel::CompareStatus worst_status(const std::vector<foel::ComparisonVerdict>& verdicts) {
  foel::CompareStatus worst = foel::CompareStatus::HoldsStrict;
  for (const auto& v : verdicts) {
    if (v.status == foel::CompareStatus::Violated ||
        v.status == foel::CompareStatus::PreconditionFailed) {
      return foel::CompareStatus::Violated;
    }
    if (v.status == foel::CompareStatus::HoldsNonStrict) {
      worst = foel::CompareStatus::HoldsNonStrict;
    }
  }
  return worst;
}

class Timer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral toolkit for ferromagnetic Heisenberg spin chains"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string sector = "all";
  std::string out_format = "json";
  double energy = 0.0;
  std::string extension_path;
  int64_t sweep_length = 2;
  double t_min = 0.0, t_max = 1.0 / 3.0;
  int64_t steps = 2;

  auto add_common = [&](CLI::App* cmd, bool with_method = true) {
    cmd->add_option("--chain", args.chain_path, "chain spec file (JSON)")->required();
    if (with_method) {
      cmd->add_option("--method", args.method, "auto|dense|sector");
    }
    cmd->add_option("--cache", args.cache, "on|off sector-matrix disk cache");
  };

  CLI::App* cmd_spectrum = app.add_subcommand("spectrum", "minimum energy per total-spin sector");
  add_common(cmd_spectrum);
  cmd_spectrum->add_option("--sector", sector, "all or a spin like 3/2");
  cmd_spectrum->add_option("--out", out_format, "json|csv");

  CLI::App* cmd_foel = app.add_subcommand("foel", "certify ordering of sector energies");
  add_common(cmd_foel);

  CLI::App* cmd_gap = app.add_subcommand("gap", "energy gap above the ground multiplet");
  add_common(cmd_gap);

  CLI::App* cmd_below = app.add_subcommand("below", "all eigenvalues below an energy");
  add_common(cmd_below);
  cmd_below->add_option("--energy", energy, "energy threshold")->required();

  CLI::App* cmd_mono = app.add_subcommand("mono", "extension monotonicity checks");
  add_common(cmd_mono);
  cmd_mono->add_option("--extension", extension_path,
                       "extended chain file; default checks every prefix of --chain");

  CLI::App* cmd_basis = app.add_subcommand("basis", "dump the arc-diagram sector basis");
  cmd_basis->add_option("--chain", args.chain_path, "chain spec file (JSON)")->required();
  cmd_basis->add_option("--sector", sector, "total spin like 3/2")->required();

  CLI::App* cmd_sweep = app.add_subcommand("sweep-t", "spin-1 biquadratic ordering sweep");
  cmd_sweep->add_option("--L", sweep_length, "chain length (2..6)")->required();
  cmd_sweep->add_option("--t-min", t_min, "first biquadratic coefficient");
  cmd_sweep->add_option("--t-max", t_max, "last biquadratic coefficient");
  cmd_sweep->add_option("--steps", steps, "number of grid points")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << json{{"error", {{"message", e.what()}}}}.dump(2) << "\n";
    return kExitError;
  }

  Timer timer;
  try {
    if (cmd_spectrum->parsed()) {
      const foel::SpinChainSpec chain = foel::parse_chain_file(args.chain_path);
      const foel::SpectraOptions options = make_options(args);
      foel::EnergyTable table;
      if (sector == "all") {
        table = foel::energy_table(chain, options);
      } else {
        const foel::HalfInteger s = foel::HalfInteger::parse(sector);
        const foel::SectorEnergy e = foel::min_energy_sector(chain, s, options);
        table.entries.push_back({s, e.dimension, e.energy, e.method});
      }
      if (out_format == "csv") {
        foel::write_spectrum_csv(std::cout, table);
      } else if (out_format == "json") {
        json results;
        results["chain"] = foel::chain_to_json(chain);
        results["table"] = foel::energy_table_to_json(table);
        std::cout << run_report("spectrum", &chain, timer.elapsed_ms(), results).dump(2)
                  << "\n";
      } else {
        throw foel::ParseError("--out must be json or csv");
      }
      return kExitOk;
    }

    if (cmd_foel->parsed()) {
      const foel::SpinChainSpec chain = foel::parse_chain_file(args.chain_path);
      const foel::FoelReport report = foel::foel_check(chain, make_options(args));
      std::cout << run_report("foel", &chain, timer.elapsed_ms(),
                              foel::foel_report_to_json(chain, report))
                       .dump(2)
                << "\n";
      return status_exit_code(report.status);
    }

    if (cmd_gap->parsed()) {
      const foel::SpinChainSpec chain = foel::parse_chain_file(args.chain_path);
      const double gap = foel::spectral_gap(chain, make_options(args));
      json results;
      results["gap"] = gap;
      results["S_doubled"] = (foel::max_total_spin(chain) - foel::HalfInteger::from_int(1)).doubled();
      std::cout << run_report("gap", &chain, timer.elapsed_ms(), results).dump(2) << "\n";
      return kExitOk;
    }

    if (cmd_below->parsed()) {
      const foel::SpinChainSpec chain = foel::parse_chain_file(args.chain_path);
      const auto entries = foel::eigenvalues_below(chain, energy, make_options(args));
      json rows = json::array();
      for (const auto& [s, e] : entries) {
        rows.push_back({{"S_doubled", s.doubled()}, {"eigenvalue", e}});
      }
      json results;
      results["energy"] = energy;
      results["entries"] = rows;
      std::cout << run_report("below", &chain, timer.elapsed_ms(), results).dump(2) << "\n";
      return kExitOk;
    }

    if (cmd_mono->parsed()) {
      const foel::SpinChainSpec chain = foel::parse_chain_file(args.chain_path);
      const foel::SpectraOptions options = make_options(args);
      json checks = json::array();
      std::vector<foel::ComparisonVerdict> all;
      if (!extension_path.empty()) {
        const foel::SpinChainSpec extension = foel::parse_chain_file(extension_path);
        const auto verdicts = foel::extension_mono_check(chain, extension, options);
        json list = json::array();
        for (const auto& v : verdicts) list.push_back(foel::verdict_to_json(v));
        checks.push_back({{"extension", foel::chain_to_json(extension)}, {"verdicts", list}});
        all = verdicts;
      } else {
        for (int64_t m = 1; m < chain.length(); ++m) {
          const foel::SpinChainSpec prefix(
              {chain.spins().begin(), chain.spins().begin() + m},
              {chain.couplings().begin(), chain.couplings().begin() + (m - 1)},
              chain.model());
          const auto verdicts = foel::extension_mono_check(prefix, chain, options);
          json list = json::array();
          for (const auto& v : verdicts) list.push_back(foel::verdict_to_json(v));
          checks.push_back({{"prefix_length", m}, {"verdicts", list}});
          all.insert(all.end(), verdicts.begin(), verdicts.end());
        }
      }
      json results;
      results["checks"] = checks;
      std::cout << run_report("mono", &chain, timer.elapsed_ms(), results).dump(2) << "\n";
      return status_exit_code(worst_status(all));
    }

    if (cmd_basis->parsed()) {
      const foel::SpinChainSpec chain = foel::parse_chain_file(args.chain_path);
      const foel::HalfInteger s = foel::HalfInteger::parse(sector);
      for (const auto& diagram : foel::enumerate_hw_basis(chain, s)) {
        std::cout << diagram.str() << "\n";
      }
      return kExitOk;
    }

    if (cmd_sweep->parsed()) {
      if (steps < 1) throw foel::ParseError("--steps must be at least 1");
      std::vector<double> ts;
      for (int64_t i = 0; i < steps; ++i) {
        ts.push_back(steps == 1 ? t_min
                                : t_min + static_cast<double>(i) * (t_max - t_min) /
                                              static_cast<double>(steps - 1));
      }
      const auto sweep = foel::biquadratic_sweep(sweep_length, ts);
      json rows = json::array();
      for (const auto& [t, report] : sweep) {
        rows.push_back({{"t", t},
                        {"status", foel::to_string(report.status)},
                        {"table", foel::energy_table_to_json(report.table)}});
      }
      json results;
      results["L"] = sweep_length;
      results["sweep"] = rows;
      std::cout << run_report("sweep-t", nullptr, timer.elapsed_ms(), results).dump(2)
                << "\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"message", e.what()}}}}.dump(2) << "\n";
    return kExitError;
  }
  return kExitError;
}
