#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

// Scratch directory under the test runner's working directory.
inline std::string scratch_path(const std::string& name) {
  std::filesystem::path dir = std::filesystem::current_path() / "unit_tmp";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

inline std::string write_scratch(const std::string& name, const std::string& content) {
  std::string path = scratch_path(name);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  return path;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string data_file(const std::string& name) {
  return std::string(LAH_DATA_DIR) + "/" + name;
}

// Deterministic helpers; all test randomness flows through explicit seeds.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline std::vector<double> random_column(std::mt19937_64& rng, std::size_t n, double lo,
                                         double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform(rng, lo, hi);
  return v;
}

}  // namespace testutil
