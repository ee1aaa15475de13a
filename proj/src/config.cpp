#include "stdgt/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stdgt {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw std::invalid_argument("config: bad value '" + value + "' for key '" +
                              key + "'");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) bad_value(key, value);
    return v;
  } catch (const std::invalid_argument&) {
    bad_value(key, value);
  } catch (const std::out_of_range&) {
    bad_value(key, value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) bad_value(key, value);
    return v;
  } catch (const std::invalid_argument&) {
    bad_value(key, value);
  } catch (const std::out_of_range&) {
    bad_value(key, value);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") {
    return true;
  }
  if (value == "false" || value == "0" || value == "off" || value == "no") {
    return false;
  }
  bad_value(key, value);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

const std::set<std::string> kBcNames = {"transparent", "sm", "pec", "pmc",
                                        "pec-exact"};

}  // namespace

void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "run.scenario") {
    config.scenario = value;
  } else if (key == "run.p") {
    config.p = parse_int(key, value);
  } else if (key == "run.h") {
    config.h = parse_double(key, value);
  } else if (key == "run.tau") {
    config.tau = parse_double(key, value);
  } else if (key == "run.T") {
    config.T = parse_double(key, value);
  } else if (key == "run.out") {
    config.out = value;
  } else if (key == "run.threads") {
    config.threads = parse_int(key, value);
  } else if (key == "run.solver") {
    config.solver = value;
  } else if (key == "run.quad_degree") {
    config.quad_degree = parse_int(key, value);
  } else if (key == "run.snapshot_every") {
    config.snapshot_every = parse_int(key, value);
  } else if (key == "run.raster") {
    config.raster = parse_int(key, value);
  } else if (key == "run.checkpoint") {
    config.checkpoint = value;
  } else if (key == "run.dump_matrix") {
    config.dump_matrix = parse_bool(key, value);
  } else if (key == "boundary.bc") {
    config.bc = value;
  } else if (key == "boundary.left" || key == "boundary.right" ||
             key == "boundary.bottom" || key == "boundary.top") {
    config.bc_per_tag[key.substr(9)] = value;
  } else if (key == "boundary.beta_inflow") {
    config.beta_inflow = parse_double(key, value);
  } else if (key == "basis.adapt") {
    config.adapt = parse_bool(key, value);
  } else if (key == "basis.theta0") {
    config.theta0 = parse_double(key, value);
  } else if (key == "material.epsilon") {
    config.epsilon = parse_double(key, value);
  } else if (key == "material.mu") {
    config.mu = parse_double(key, value);
  } else if (key == "convergence.h") {
    config.h_list.clear();
    for (const auto& item : split_list(value)) {
      config.h_list.push_back(parse_double(key, item));
    }
  } else if (key == "convergence.p") {
    config.p_list.clear();
    for (const auto& item : split_list(value)) {
      config.p_list.push_back(parse_int(key, item));
    }
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config: cannot open file '" + path + "'");
  RunConfig config;
  std::string line, section;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("config: malformed section at line " +
                                    std::to_string(line_no));
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: expected key = value at line " +
                                  std::to_string(line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || section.empty()) {
      throw std::invalid_argument("config: key outside a section at line " +
                                  std::to_string(line_no));
    }
    apply_config_entry(config, section + "." + key, value);
  }
  return config;
}

void RunConfig::validate() const {
  if (scenario != "plane-wave" && scenario != "cylindrical" &&
      scenario != "cylindrical-ref") {
    throw std::invalid_argument("config: unknown scenario '" + scenario + "'");
  }
  if (p < 0 || p > 5) {
    throw std::invalid_argument("config: basis order must be in [0, 5]");
  }
  if (!(h > 0.0)) throw std::invalid_argument("config: h must be positive");
  if (tau < 0.0) throw std::invalid_argument("config: tau must be non-negative");
  if (T < 0.0) throw std::invalid_argument("config: T must be non-negative");
  auto check_bc = [](const std::string& name) {
    if (kBcNames.find(name) == kBcNames.end()) {
      throw std::invalid_argument("config: unknown boundary condition '" +
                                  name + "'");
    }
  };
  check_bc(bc);
  for (const auto& [tag, name] : bc_per_tag) check_bc(name);
  if ((bc == "pec-exact" && scenario != "plane-wave")) {
    throw std::invalid_argument(
        "config: pec-exact data exists only for the plane-wave scenario");
  }
  if (beta_inflow < 0.0) {
    throw std::invalid_argument("config: beta_inflow must be non-negative");
  }
  if (!(epsilon > 0.0) || !(mu > 0.0)) {
    throw std::invalid_argument("config: material parameters must be positive");
  }
  if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
  if (solver != "auto" && solver != "direct" && solver != "iterative") {
    throw std::invalid_argument("config: unknown solver '" + solver + "'");
  }
  if (quad_degree < 0) {
    throw std::invalid_argument("config: quad_degree must be >= 0");
  }
  if (snapshot_every < 0 || raster < 1) {
    throw std::invalid_argument("config: bad snapshot settings");
  }
  if (checkpoint != "off" && checkpoint != "text" && checkpoint != "binary") {
    throw std::invalid_argument("config: checkpoint must be off, text or binary");
  }
  for (double hv : h_list) {
    if (!(hv > 0.0)) throw std::invalid_argument("config: h list must be positive");
  }
  for (int pv : p_list) {
    if (pv < 0 || pv > 5) {
      throw std::invalid_argument("config: p list entries must be in [0, 5]");
    }
  }
}

}  // namespace stdgt
