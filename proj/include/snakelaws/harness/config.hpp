#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace snakelaws::harness {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything a run depends on. Serializes to flat "key = value" lines and
/// can be rebuilt from them.
struct RunConfig {
  std::vector<std::string> groups{"exact"};
  std::uint64_t seed = 42;
  std::string out_dir = "reports";
  bool timing = true;
  unsigned threads = 0;  // 0: hardware concurrency

  std::size_t mc_samples = 1'000'000;
  std::size_t snake_edges = 5000;
  std::size_t snake_trees = 20000;
  std::size_t levy_paths = 100'000;
  double levy_dt = 1e-4;
  double levy_t_max = 100.0;
  double levy_guard = 10.0;
  std::size_t csbp_paths = 1000;
  std::size_t refinement_paths = 20000;
  std::size_t series_order = 40;

  std::map<std::string, double> tolerance_overrides;  // keyed by test_id

  /// Applies one "key=value" assignment.
  void set(const std::string& key, const std::string& value) {
    try {
      if (key == "group" || key == "groups") {
        groups.clear();
        std::stringstream ss(value);
        std::string g;
        while (std::getline(ss, g, ',')) {
          if (!g.empty()) groups.push_back(g);
        }
      } else if (key == "seed") seed = std::stoull(value);
      else if (key == "out") out_dir = value;
      else if (key == "timing") timing = (value == "1" || value == "true");
      else if (key == "threads") threads = static_cast<unsigned>(std::stoul(value));
      else if (key == "mc_samples") mc_samples = std::stoull(value);
      else if (key == "snake_edges") snake_edges = std::stoull(value);
      else if (key == "snake_trees") snake_trees = std::stoull(value);
      else if (key == "levy_paths") levy_paths = std::stoull(value);
      else if (key == "levy_dt") levy_dt = std::stod(value);
      else if (key == "levy_t_max") levy_t_max = std::stod(value);
      else if (key == "levy_guard") levy_guard = std::stod(value);
      else if (key == "csbp_paths") csbp_paths = std::stoull(value);
      else if (key == "refinement_paths") refinement_paths = std::stoull(value);
      else if (key == "series_order") series_order = std::stoull(value);
      else if (key.rfind("tol.", 0) == 0) tolerance_overrides[key.substr(4)] = std::stod(value);
      else throw ConfigError("unknown config key '" + key + "'");
    } catch (const std::logic_error&) {
      throw ConfigError("bad value '" + value + "' for config key '" + key + "'");
    }
  }

  /// Applies "key=value" (or "key = value").
  void set_assignment(const std::string& line) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + line + "'");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }

  /// Reads a flat key-value file; '#' starts a comment.
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (trim(line).empty()) continue;
      set_assignment(line);
    }
  }

  /// The only environment input: SNAKELAWS_OUT_DIR overrides out_dir.
  void apply_environment() {
    if (const char* env = std::getenv("SNAKELAWS_OUT_DIR"); env && *env) out_dir = env;
  }

  double tolerance(const std::string& test_id, double fallback) const {
    const auto it = tolerance_overrides.find(test_id);
    return it == tolerance_overrides.end() ? fallback : it->second;
  }

  std::string serialize() const {
    std::ostringstream os;
    os.precision(17);
    os << "groups = ";
    for (std::size_t i = 0; i < groups.size(); ++i) os << (i ? "," : "") << groups[i];
    os << "\nseed = " << seed << "\nout = " << out_dir << "\ntiming = " << (timing ? 1 : 0) << "\nthreads = " << threads
       << "\nmc_samples = " << mc_samples << "\nsnake_edges = " << snake_edges << "\nsnake_trees = " << snake_trees
       << "\nlevy_paths = " << levy_paths << "\nlevy_dt = " << levy_dt << "\nlevy_t_max = " << levy_t_max
       << "\nlevy_guard = " << levy_guard << "\ncsbp_paths = " << csbp_paths << "\nrefinement_paths = " << refinement_paths << "\nseries_order = " << series_order << '\n';
    for (const auto& [k, v] : tolerance_overrides) os << "tol." << k << " = " << v << '\n';
    return os.str();
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }
};

}  // namespace snakelaws::harness
