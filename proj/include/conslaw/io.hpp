#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "conslaw/grid.hpp"

namespace conslaw {

/// Round-trip-safe formatting of binary64 (17 significant digits).
inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV export, one row per node per recorded layer: n, t, m, x, U.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "n,t,m,x,U\n";
  for (long n = 0; n < tr.layer_count(); ++n)
    for (int m = 0; m < tr.grid.M; ++m)
      os << n << "," << format_g17(tr.time_of(n)) << "," << m << ","
         << format_g17(tr.grid.node_x(m)) << ","
         << format_g17(tr.layers[n][m]) << "\n";
}

inline void write_trajectory_csv(const std::string& path,
                                 const Trajectory& tr) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_trajectory_csv(os, tr);
}

/// Compact binary layout: u64 M, f64 tau, f64 h, u64 layer count, then the
/// layers row-major as binary64. Little-endian host order.
inline void write_trajectory_binary(const std::string& path,
                                    const Trajectory& tr) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  const std::uint64_t M = static_cast<std::uint64_t>(tr.grid.M);
  const std::uint64_t count = static_cast<std::uint64_t>(tr.layer_count());
  os.write(reinterpret_cast<const char*>(&M), sizeof M);
  os.write(reinterpret_cast<const char*>(&tr.grid.tau), sizeof(double));
  os.write(reinterpret_cast<const char*>(&tr.grid.h), sizeof(double));
  os.write(reinterpret_cast<const char*>(&count), sizeof count);
  for (const auto& layer : tr.layers)
    os.write(reinterpret_cast<const char*>(layer.data()),
             static_cast<std::streamsize>(layer.size() * sizeof(double)));
}

struct BinaryTrajectory {
  std::uint64_t M = 0;
  double tau = 0.0, h = 0.0;
  std::vector<std::vector<double>> layers;
};

inline BinaryTrajectory read_trajectory_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open '" + path + "'");
  BinaryTrajectory b;
  std::uint64_t count = 0;
  is.read(reinterpret_cast<char*>(&b.M), sizeof b.M);
  is.read(reinterpret_cast<char*>(&b.tau), sizeof(double));
  is.read(reinterpret_cast<char*>(&b.h), sizeof(double));
  is.read(reinterpret_cast<char*>(&count), sizeof count);
  if (!is) throw Error("truncated trajectory header in '" + path + "'");
  b.layers.assign(count, std::vector<double>(b.M));
  for (auto& layer : b.layers) {
    is.read(reinterpret_cast<char*>(layer.data()),
            static_cast<std::streamsize>(b.M * sizeof(double)));
    if (!is) throw Error("truncated trajectory payload in '" + path + "'");
  }
  return b;
}

/// Declarative run configuration (key=value file and/or CLI flags).
struct RunConfig {
  std::string scheme = "LinearCross";
  int M = 128;
  double h = 1.0 / 128;
  double tau = 1.0 / 256;
  double x0 = 0.0;
  std::string bc = "periodic";
  std::string ic = "sine(1,1)";
  long steps = 128;
  std::string out;       // CSV path
  std::string out_bin;   // binary path
  std::string out_json;  // JSON report path
  double drift_tol = 1e-10;
};

namespace detail {

/// Parses "name" or "name(a,b,...)" into name + numeric arguments.
inline std::pair<std::string, std::vector<double>> parse_call(
    const std::string& s) {
  const auto open = s.find('(');
  if (open == std::string::npos) return {s, {}};
  if (s.back() != ')') throw Error("malformed argument list in '" + s + "'");
  std::pair<std::string, std::vector<double>> r;
  r.first = s.substr(0, open);
  std::string args = s.substr(open + 1, s.size() - open - 2);
  std::stringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ','))
    try {
      r.second.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error("bad numeric argument '" + item + "' in '" + s + "'");
    }
  return r;
}

}  // namespace detail

inline Bc make_bc(const std::string& spec) {
  auto [name, args] = detail::parse_call(spec);
  if (name == "periodic") {
    if (!args.empty()) throw Error("periodic takes no arguments");
    return Bc::periodic();
  }
  if (name == "dirichlet") {
    if (args.size() != 2)
      throw Error("dirichlet needs (left_value,right_value)");
    return Bc::dirichlet(args[0], args[1]);
  }
  throw Error("unknown boundary condition '" + spec + "'");
}

/// Builds the named initial-condition preset for the given grid. Presets:
/// zero, affine(a,b), sine(k,amplitude), gaussian(center,width),
/// random_smooth(seed).
inline InitialCondition make_ic(const std::string& spec, const Grid1D& grid) {
  auto [name, args] = detail::parse_call(spec);
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw Error("ic '" + name + "' needs " + std::to_string(n) +
                  " argument(s)");
  };
  if (name == "zero") {
    need(0);
    return ic_zero();
  }
  if (name == "affine") {
    need(2);
    return ic_affine(args[0], args[1]);
  }
  if (name == "sine") {
    need(2);
    return ic_sine(args[0], args[1], grid.length());
  }
  if (name == "gaussian") {
    need(2);
    return ic_gaussian(args[0], args[1]);
  }
  if (name == "random_smooth") {
    need(1);
    return ic_random_smooth(static_cast<unsigned>(args[0]), grid.length(),
                            grid.x0);
  }
  throw Error("unknown ic preset '" + spec + "'");
}

inline unsigned ic_seed(const std::string& spec) {
  auto [name, args] = detail::parse_call(spec);
  return name == "random_smooth" && !args.empty()
             ? static_cast<unsigned>(args[0])
             : 0u;
}

/// key=value configuration file; '#' starts a comment, unknown keys are
/// rejected.
inline void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open config '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(lineno) +
                  ": expected key=value");
    const std::string key = trimmed.substr(0, eq);
    const std::string val = trimmed.substr(eq + 1);
    try {
      if (key == "scheme") cfg.scheme = val;
      else if (key == "M") cfg.M = std::stoi(val);
      else if (key == "h") cfg.h = std::stod(val);
      else if (key == "tau") cfg.tau = std::stod(val);
      else if (key == "x0") cfg.x0 = std::stod(val);
      else if (key == "bc") cfg.bc = val;
      else if (key == "ic") cfg.ic = val;
      else if (key == "steps") cfg.steps = std::stol(val);
      else if (key == "out") cfg.out = val;
      else if (key == "out_bin") cfg.out_bin = val;
      else if (key == "out_json") cfg.out_json = val;
      else if (key == "drift_tol") cfg.drift_tol = std::stod(val);
      else
        throw Error("config line " + std::to_string(lineno) +
                    ": unknown key '" + key + "'");
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error("config line " + std::to_string(lineno) +
                  ": bad value for '" + key + "'");
    }
  }
}

inline Grid1D make_grid(const RunConfig& cfg) {
  Grid1D g;
  g.M = cfg.M;
  g.h = cfg.h;
  g.tau = cfg.tau;
  g.x0 = cfg.x0;
  g.bc = make_bc(cfg.bc);
  g.validate();
  return g;
}

}  // namespace conslaw
