#pragma once

#include <cstdint>
#include <sstream>
#include <string>

namespace lah {

/// Hierarchy construction mode: self-organised LAH or a single flat LDT
/// over the full attribute set.
enum class HierarchyMode { Solah, Flat };

/// Encoding of the goal column when computing its distance correlation
/// to attributes.
enum class GoalEncoding { ClassCode, OneHot };

/// Class distribution assigned to branches that receive no training mass.
enum class ZeroMassFallback { Parent, Uniform };

/// How a slot's output becomes the intermediate attribute consumed above
/// it: the full class-mass vector passed through unchanged, or (binary
/// goals only) the positive-class mass re-described as a fuzzy value on
/// [0,1] with the goal's label count.
enum class IntermediateMode { MassVector, Refuzzified };

/// Full configuration of a run. Every artifact file embeds this verbatim
/// so any report can be reproduced from its own header.
struct RunConfig {
  std::string dataset_path;
  std::string dataset_name;
  int labels = 3;        // linguistic labels per continuous attribute
  int preset_k = 4;      // preset cluster count fed to DCC
  double theta = 0.02;   // same-level threshold for hierarchy levels
  double purity = 1.0;   // LID3 stop threshold on max P(C|B)
  int folds = 10;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  HierarchyMode mode = HierarchyMode::Solah;
  GoalEncoding goal_encoding = GoalEncoding::ClassCode;
  ZeroMassFallback fallback = ZeroMassFallback::Parent;
  IntermediateMode intermediate = IntermediateMode::MassVector;
  bool stratified = true;
  int jobs = 1;
};

inline const char* to_string(HierarchyMode m) {
  return m == HierarchyMode::Solah ? "solah" : "flat";
}
inline const char* to_string(GoalEncoding e) {
  return e == GoalEncoding::ClassCode ? "class-code" : "one-hot";
}
inline const char* to_string(ZeroMassFallback f) {
  return f == ZeroMassFallback::Parent ? "parent" : "uniform";
}
inline const char* to_string(IntermediateMode m) {
  return m == IntermediateMode::MassVector ? "mass-vector" : "refuzzified";
}

/// key=value echo block, one entry per line.
inline std::string echo_config(const RunConfig& c) {
  std::ostringstream os;
  os << "dataset=" << c.dataset_path << '\n'
     << "labels=" << c.labels << '\n'
     << "k=" << c.preset_k << '\n'
     << "theta=" << c.theta << '\n'
     << "purity=" << c.purity << '\n'
     << "folds=" << c.folds << '\n'
     << "seed=" << c.seed << '\n'
     << "mode=" << to_string(c.mode) << '\n'
     << "goal-encoding=" << to_string(c.goal_encoding) << '\n'
     << "zero-mass=" << to_string(c.fallback) << '\n'
     << "intermediate=" << to_string(c.intermediate) << '\n'
     << "stratified=" << (c.stratified ? "true" : "false") << '\n'
     << "jobs=" << c.jobs << '\n';
  return os.str();
}

}  // namespace lah
