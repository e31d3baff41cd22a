#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lah/pipeline.hpp"

namespace lah {

namespace io {

using nlohmann::json;

inline json config_to_json(const RunConfig& c) {
  return json{{"dataset_path", c.dataset_path},
              {"dataset_name", c.dataset_name},
              {"labels", c.labels},
              {"k", c.preset_k},
              {"theta", c.theta},
              {"purity", c.purity},
              {"folds", c.folds},
              {"seed", c.seed},
              {"out_dir", c.out_dir},
              {"mode", to_string(c.mode)},
              {"goal_encoding", to_string(c.goal_encoding)},
              {"zero_mass", to_string(c.fallback)},
              {"intermediate", to_string(c.intermediate)},
              {"stratified", c.stratified},
              {"jobs", c.jobs}};
}

inline RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.dataset_path = j.at("dataset_path").get<std::string>();
  c.dataset_name = j.at("dataset_name").get<std::string>();
  c.labels = j.at("labels").get<int>();
  c.preset_k = j.at("k").get<int>();
  c.theta = j.at("theta").get<double>();
  c.purity = j.at("purity").get<double>();
  c.folds = j.at("folds").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.out_dir = j.at("out_dir").get<std::string>();
  std::string s = j.at("mode").get<std::string>();
  if (s == "solah")
    c.mode = HierarchyMode::Solah;
  else if (s == "flat")
    c.mode = HierarchyMode::Flat;
  else
    throw std::runtime_error("unknown mode '" + s + "'");
  s = j.at("goal_encoding").get<std::string>();
  if (s == "class-code")
    c.goal_encoding = GoalEncoding::ClassCode;
  else if (s == "one-hot")
    c.goal_encoding = GoalEncoding::OneHot;
  else
    throw std::runtime_error("unknown goal encoding '" + s + "'");
  s = j.at("zero_mass").get<std::string>();
  if (s == "parent")
    c.fallback = ZeroMassFallback::Parent;
  else if (s == "uniform")
    c.fallback = ZeroMassFallback::Uniform;
  else
    throw std::runtime_error("unknown zero-mass fallback '" + s + "'");
  s = j.at("intermediate").get<std::string>();
  if (s == "mass-vector")
    c.intermediate = IntermediateMode::MassVector;
  else if (s == "refuzzified")
    c.intermediate = IntermediateMode::Refuzzified;
  else
    throw std::runtime_error("unknown intermediate mode '" + s + "'");
  c.stratified = j.at("stratified").get<bool>();
  c.jobs = j.at("jobs").get<int>();
  return c;
}

inline json partition_to_json(const Partition& p) {
  json j{{"kind", p.kind == AttributeKind::Continuous ? "continuous" : "discrete"},
         {"degenerate", p.degenerate},
         {"labels", p.label_names}};
  if (p.kind == AttributeKind::Continuous) {
    j["lo"] = p.lo;
    j["hi"] = p.hi;
    j["anchors"] = p.anchors;
  }
  return j;
}

inline Partition partition_from_json(const json& j) {
  Partition p;
  std::string kind = j.at("kind").get<std::string>();
  p.degenerate = j.at("degenerate").get<bool>();
  p.label_names = j.at("labels").get<std::vector<std::string>>();
  if (p.label_names.empty()) throw std::runtime_error("partition with no labels");
  if (kind == "discrete") {
    p.kind = AttributeKind::Discrete;
    for (int v = 0; v < static_cast<int>(p.label_names.size()); ++v)
      p.focal_sets.push_back(FocalSet{{v}});
    return p;
  }
  if (kind != "continuous") throw std::runtime_error("unknown partition kind '" + kind + "'");
  p.kind = AttributeKind::Continuous;
  p.lo = j.at("lo").get<double>();
  p.hi = j.at("hi").get<double>();
  p.anchors = j.at("anchors").get<std::vector<double>>();
  const int n_labels = static_cast<int>(p.label_names.size());
  const int n_focal = p.degenerate ? 1 : 2 * n_labels - 1;
  if (static_cast<int>(p.anchors.size()) != n_focal)
    throw std::runtime_error("partition anchor count does not match label count");
  if (p.degenerate) {
    p.focal_sets = {FocalSet{{0}}};
    return p;
  }
  for (int j2 = 0; j2 < n_focal; ++j2) {
    if (j2 % 2 == 0)
      p.focal_sets.push_back(FocalSet{{j2 / 2}});
    else
      p.focal_sets.push_back(FocalSet{{j2 / 2, j2 / 2 + 1}});
  }
  return p;
}

inline json slot_to_json(const Slot& s) {
  json branches = json::array();
  for (const auto& b : s.tree.branches) {
    json terms = json::array();
    for (const auto& t : b.terms) terms.push_back(json::array({t.attr, t.focal}));
    branches.push_back(json{{"terms", terms}, {"mass", b.class_mass}});
  }
  return json{{"id", s.id},       {"level", s.level},   {"top", s.is_top},
              {"inputs", s.inputs}, {"cluster", s.cluster}, {"branches", branches}};
}

}  // namespace io

inline nlohmann::json model_to_json(const Model& m) {
  using nlohmann::json;
  json attrs = json::array();
  for (std::size_t a = 0; a < m.attributes.size(); ++a) {
    const auto& at = m.attributes[a];
    json ja{{"name", m.attribute_names[a]},
            {"kind", at.kind == AttributeKind::Continuous ? "continuous" : "discrete"},
            {"fill", m.impute_fill[a]}};
    if (at.kind == AttributeKind::Continuous) {
      ja["lo"] = at.lo;
      ja["hi"] = at.hi;
    } else {
      ja["values"] = at.values;
    }
    attrs.push_back(ja);
  }

  json parts = json::array();
  for (const auto& p : m.base_partitions) parts.push_back(io::partition_to_json(p));

  json slots = json::array();
  for (const auto& s : m.hierarchy.slots) slots.push_back(io::slot_to_json(s));

  return json{{"format", "lah-model"},
              {"version", 1},
              {"config", io::config_to_json(m.cfg)},
              {"goal", json{{"name", m.goal_name}, {"classes", m.class_labels}}},
              {"attributes", attrs},
              {"partitions", parts},
              {"hierarchy", json{{"intermediate", to_string(m.hierarchy.intermediate)},
                                 {"theta", m.hierarchy.theta},
                                 {"levels", m.hierarchy.levels},
                                 {"clusters", m.hierarchy.clusters},
                                 {"relevance", m.hierarchy.relevance},
                                 {"slots", slots}}}};
}

inline Model model_from_json(const nlohmann::json& j) {
  using nlohmann::json;
  if (j.value("format", "") != "lah-model")
    throw std::runtime_error("not a model file (missing format tag)");
  if (j.value("version", 0) != 1)
    throw std::runtime_error("unsupported model version");

  Model m;
  m.cfg = io::config_from_json(j.at("config"));
  m.goal_name = j.at("goal").at("name").get<std::string>();
  m.class_labels = j.at("goal").at("classes").get<std::vector<std::string>>();
  if (m.class_labels.size() < 2) throw std::runtime_error("model has fewer than 2 classes");

  for (const auto& ja : j.at("attributes")) {
    AttributeMeta at;
    at.index = static_cast<int>(m.attributes.size());
    std::string kind = ja.at("kind").get<std::string>();
    if (kind == "continuous") {
      at.kind = AttributeKind::Continuous;
      at.lo = ja.at("lo").get<double>();
      at.hi = ja.at("hi").get<double>();
    } else if (kind == "discrete") {
      at.kind = AttributeKind::Discrete;
      at.values = ja.at("values").get<std::vector<std::string>>();
    } else {
      throw std::runtime_error("unknown attribute kind '" + kind + "'");
    }
    m.attribute_names.push_back(ja.at("name").get<std::string>());
    m.attributes.push_back(at);
    m.impute_fill.push_back(ja.at("fill").get<double>());
  }
  if (m.attributes.empty()) throw std::runtime_error("model has no attributes");

  for (const auto& jp : j.at("partitions"))
    m.base_partitions.push_back(io::partition_from_json(jp));
  if (m.base_partitions.size() != m.attributes.size())
    throw std::runtime_error("partition count does not match attribute count");

  const auto& jh = j.at("hierarchy");
  Hierarchy& h = m.hierarchy;
  h.n_base = static_cast<int>(m.attributes.size());
  h.n_classes = static_cast<int>(m.class_labels.size());
  h.class_labels = m.class_labels;
  std::string imode = jh.at("intermediate").get<std::string>();
  if (imode == "mass-vector")
    h.intermediate = IntermediateMode::MassVector;
  else if (imode == "refuzzified")
    h.intermediate = IntermediateMode::Refuzzified;
  else
    throw std::runtime_error("unknown intermediate mode '" + imode + "'");
  h.theta = jh.at("theta").get<double>();
  h.levels = jh.at("levels").get<int>();
  h.clusters = jh.at("clusters").get<std::vector<std::vector<int>>>();
  h.relevance = jh.at("relevance").get<std::vector<double>>();

  for (const auto& js : jh.at("slots")) {
    Slot s;
    s.id = js.at("id").get<int>();
    s.level = js.at("level").get<int>();
    s.is_top = js.at("top").get<bool>();
    s.inputs = js.at("inputs").get<std::vector<int>>();
    s.cluster = js.at("cluster").get<std::vector<int>>();
    s.tree.n_classes = h.n_classes;
    for (const auto& jb : js.at("branches")) {
      Branch b;
      for (const auto& jt : jb.at("terms")) {
        if (!jt.is_array() || jt.size() != 2)
          throw std::runtime_error("malformed branch term");
        b.terms.push_back({jt[0].get<int>(), jt[1].get<int>()});
      }
      b.class_mass = jb.at("mass").get<std::vector<double>>();
      s.tree.branches.push_back(std::move(b));
    }
    if (s.tree.branches.empty()) throw std::runtime_error("slot with no branches");
    h.slots.push_back(std::move(s));
  }

  validate_structure(h);

  // Rebuild the inference index of every tree; this also validates that
  // each branch list forms a complete tree.
  std::vector<Partition> all = m.base_partitions;
  all.resize(h.n_base + h.slots.size(), h.intermediate_partition());
  for (auto& s : h.slots) s.tree.build_index(all);
  return m;
}

inline void save_model(const Model& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << model_to_json(m).dump(1) << '\n';
}

inline Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": invalid JSON: " + e.what());
  }
  try {
    return model_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": malformed model: " + e.what());
  }
}

}  // namespace lah
