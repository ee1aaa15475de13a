#pragma once

#include <map>
#include <string>
#include <vector>

namespace stdgt {

/// Run description shared by the config file and the command line. The
/// config file holds "key = value" lines under [section] headers; section
/// and key join as "section.key". '#' and ';' start comments.
struct RunConfig {
  std::string scenario = "plane-wave";   // plane-wave | cylindrical | cylindrical-ref
  int p = 3;                             // basis order, 0..5
  double h = 1.0;                        // target element size
  double tau = 0.0;                      // slab length; 0 means h/2
  double T = 24.0;                       // final time, multiple of tau
  std::string bc = "transparent";        // transparent | sm | pec | pmc | pec-exact
  std::map<std::string, std::string> bc_per_tag;  // left/right/bottom/top
  double beta_inflow = 1.0;              // plane-wave inflow penalty
  bool adapt = true;                     // scenario-adapted fan rotation
  double theta0 = 0.0;                   // fan rotation when adapt = false
  double epsilon = 1.0;
  double mu = 1.0;
  std::string out = "out";               // output directory
  int threads = 0;                       // 0: all hardware threads
  std::string solver = "auto";           // auto | direct | iterative
  int quad_degree = 0;                   // 0: matched to basis order
  int snapshot_every = 0;                // write every k-th slab end; 0: off
  int raster = 101;                      // snapshot grid resolution
  std::string checkpoint = "off";        // off | text | binary
  bool dump_matrix = false;              // write the slab matrix in triplet form
  std::vector<double> h_list;            // convergence sweeps
  std::vector<int> p_list;

  /// Throws std::invalid_argument for out-of-range or inconsistent values.
  void validate() const;
};

/// Applies one "section.key" assignment; throws for unknown keys or
/// malformed values.
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

/// Reads a config file on top of the defaults.
RunConfig parse_config_file(const std::string& path);

}  // namespace stdgt
