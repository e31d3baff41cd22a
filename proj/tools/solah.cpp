// Command-line front end for the fuzzy-hierarchy classifier library.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error (bad flags,
// missing files, malformed input rows).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lah/lah.hpp"

namespace {

using lah::RunConfig;

void require_file(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw std::invalid_argument("no such file: " + path);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string artifact_path(const RunConfig& cfg, const std::string& suffix) {
  return (std::filesystem::path(cfg.out_dir) / (cfg.dataset_name + suffix)).string();
}

// Registers the options shared by the pipeline subcommands.
void add_pipeline_options(CLI::App* cmd, RunConfig& cfg, bool with_folds = true) {
  cmd->add_option("dataset", cfg.dataset_path, "dataset CSV (goal column last)")->required();
  cmd->add_option("--labels", cfg.labels, "linguistic labels per continuous attribute")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  cmd->add_option("--k", cfg.preset_k, "preset cluster count")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  cmd->add_option("--theta", cfg.theta, "same-level threshold")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--purity", cfg.purity, "stop threshold on max class probability")
      ->check(CLI::Range(std::nextafter(0.5, 1.0), 1.0))
      ->capture_default_str();
  if (with_folds)
    cmd->add_option("--folds", cfg.folds, "cross-validation folds")
        ->check(CLI::Range(2, 1000))
        ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "fold-shuffle seed")->capture_default_str();
  cmd->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--mode", cfg.mode, "hierarchy mode")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, lah::HierarchyMode>{{"solah", lah::HierarchyMode::Solah},
                                                    {"flat", lah::HierarchyMode::Flat}}))
      ->default_str("solah");
  cmd->add_option("--goal-encoding", cfg.goal_encoding, "goal encoding for correlations")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, lah::GoalEncoding>{{"class-code", lah::GoalEncoding::ClassCode},
                                                   {"one-hot", lah::GoalEncoding::OneHot}}))
      ->default_str("class-code");
  cmd->add_option("--zero-mass", cfg.fallback, "distribution for unsupported branches")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, lah::ZeroMassFallback>{{"parent", lah::ZeroMassFallback::Parent},
                                                       {"uniform", lah::ZeroMassFallback::Uniform}}))
      ->default_str("parent");
  cmd->add_option("--intermediate", cfg.intermediate, "intermediate attribute representation")
      ->transform(CLI::CheckedTransformer(std::map<std::string, lah::IntermediateMode>{
          {"mass-vector", lah::IntermediateMode::MassVector},
          {"refuzzified", lah::IntermediateMode::Refuzzified}}))
      ->default_str("mass-vector");
  cmd->add_flag("--no-stratify", [&cfg](std::int64_t) { cfg.stratified = false; },
                "plain shuffled folds instead of stratified ones");
  cmd->add_option("--jobs", cfg.jobs, "fold-level worker threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  cmd->set_config("--config", "", "key=value config file merged under flags");
}

lah::Dataset load_for(RunConfig& cfg) {
  require_file(cfg.dataset_path);
  lah::Dataset d = lah::load_csv(cfg.dataset_path);
  cfg.dataset_name = d.name;
  return d;
}

// Imputed full-dataset columns plus goal codes, for dcorr/cluster views.
std::pair<std::vector<std::vector<double>>, std::vector<int>> full_columns(
    const lah::Dataset& d) {
  lah::Dataset imp = lah::impute_missing(d);
  std::vector<std::vector<double>> cols(d.n_attributes(),
                                        std::vector<double>(d.n_samples()));
  for (std::size_t a = 0; a < d.n_attributes(); ++a)
    for (std::size_t r = 0; r < d.n_samples(); ++r) cols[a][r] = imp.rows[r][a];
  return {std::move(cols), imp.goal};
}

std::vector<std::size_t> all_rows(const lah::Dataset& d) {
  std::vector<std::size_t> rows(d.n_samples());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return rows;
}

int cmd_inspect(RunConfig& cfg) {
  lah::Dataset d = load_for(cfg);
  std::cout << "# dataset summary\n" << lah::echo_config(cfg);
  std::cout << "name=" << d.name << "\nsamples=" << d.n_samples()
            << "\nattributes=" << d.n_attributes() << "\nclasses=" << d.n_classes() << '\n';
  std::vector<std::size_t> per_class(d.n_classes(), 0);
  for (int g : d.goal) ++per_class[g];
  for (int c = 0; c < d.n_classes(); ++c)
    std::cout << "class " << c << " (" << d.class_labels[c] << "): " << per_class[c]
              << " samples\n";
  for (std::size_t a = 0; a < d.n_attributes(); ++a) {
    std::size_t missing = 0;
    for (const auto& row : d.rows)
      if (std::isnan(row[a])) ++missing;
    lah::Partition p = lah::make_partition(d.attributes[a], cfg.labels);
    std::cout << lah::partition_text(p, static_cast<int>(a), d.attribute_names[a]);
    if (missing) std::cout << "  missing cells " << missing << '\n';
  }
  return 0;
}

int cmd_dcorr(RunConfig& cfg) {
  lah::Dataset d = load_for(cfg);
  auto [cols, goal] = full_columns(d);
  lah::DCorrProfile prof = lah::dcorr_profile(cols, goal, cfg.goal_encoding);

  std::ostringstream os;
  os << "# attribute-attribute distance correlation\n";
  std::istringstream cfg_lines(lah::echo_config(cfg));
  for (std::string l; std::getline(cfg_lines, l);) os << "# " << l << '\n';
  os.precision(17);
  os << "attribute";
  for (const auto& n : d.attribute_names) os << ',' << n;
  os << ",goal\n";
  for (std::size_t a = 0; a < d.n_attributes(); ++a) {
    os << d.attribute_names[a];
    for (std::size_t b = 0; b < d.n_attributes(); ++b) os << ',' << prof.attr[a][b];
    os << ',' << prof.goal[a];
    if (prof.degenerate[a]) os << ",degenerate";
    os << '\n';
  }
  std::string path = artifact_path(cfg, ".dcorr.csv");
  write_file(path, os.str());
  std::cout << os.str() << "wrote " << path << '\n';
  return 0;
}

int cmd_cluster(RunConfig& cfg) {
  lah::Dataset d = load_for(cfg);
  auto [cols, goal] = full_columns(d);
  lah::DCorrProfile prof = lah::dcorr_profile(cols, goal, cfg.goal_encoding);
  lah::ClusterResult cr = lah::cluster_attributes(prof.attr, cfg.preset_k);

  // Present clusters in the order the hierarchy builder will consume them.
  lah::Hierarchy h = lah::build_solah(cr, prof.goal, cfg.theta,
                                      static_cast<int>(d.n_attributes()), d.class_labels,
                                      cfg.intermediate);
  std::ostringstream os;
  os << "# attribute clusters (ascending goal relevance)\n" << lah::echo_config(cfg);
  os << "realized_K=" << cr.realized_k() << '\n';
  for (std::size_t c = 0; c < h.clusters.size(); ++c) {
    os << 'S' << (c + 1) << " relevance=" << h.relevance[c] << " members={";
    for (std::size_t i = 0; i < h.clusters[c].size(); ++i) {
      if (i) os << ',';
      os << d.attribute_names[h.clusters[c][i]];
    }
    os << "}\n";
  }
  std::string path = artifact_path(cfg, ".clusters.txt");
  write_file(path, os.str());
  std::cout << os.str() << "wrote " << path << '\n';
  return 0;
}

int cmd_build(RunConfig& cfg) {
  lah::Dataset d = load_for(cfg);
  auto [cols, goal] = full_columns(d);
  lah::Hierarchy h;
  if (cfg.mode == lah::HierarchyMode::Solah) {
    lah::DCorrProfile prof = lah::dcorr_profile(cols, goal, cfg.goal_encoding);
    lah::ClusterResult cr = lah::cluster_attributes(prof.attr, cfg.preset_k);
    h = lah::build_solah(cr, prof.goal, cfg.theta, static_cast<int>(d.n_attributes()),
                         d.class_labels, cfg.intermediate);
  } else {
    h = lah::build_flat(static_cast<int>(d.n_attributes()), d.class_labels, cfg.intermediate);
  }
  std::ostringstream os;
  os << "# hierarchy structure\n" << lah::echo_config(cfg)
     << lah::hierarchy_text(h, d.attribute_names);
  std::string path = artifact_path(cfg, ".hierarchy.txt");
  write_file(path, os.str());
  std::cout << os.str() << "wrote " << path << '\n';
  return 0;
}

int cmd_train(RunConfig& cfg, std::string& model_out) {
  lah::Dataset d = load_for(cfg);
  lah::Model m = lah::fit_model(d, all_rows(d), cfg);
  if (model_out.empty()) model_out = artifact_path(cfg, ".model.json");
  lah::save_model(m, model_out);
  std::cout << "# trained model\n" << lah::echo_config(cfg)
            << lah::hierarchy_text(m.hierarchy, d.attribute_names)
            << "branches_total=" << m.hierarchy.total_branches() << '\n'
            << "wrote " << model_out << '\n';
  return 0;
}

int cmd_crossval(RunConfig& cfg) {
  lah::Dataset d = load_for(cfg);
  lah::EvalReport rep = lah::crossval(d, cfg, &std::cerr);
  std::string text = lah::report_text(rep);
  write_file(artifact_path(cfg, ".report.txt"), text);
  std::ostringstream csv;
  csv << lah::sweep_csv_header() << '\n' << lah::sweep_csv_row(cfg.preset_k, rep) << '\n';
  write_file(artifact_path(cfg, ".report.csv"), csv.str());
  std::cout << text << "wrote " << artifact_path(cfg, ".report.txt") << '\n'
            << "wrote " << artifact_path(cfg, ".report.csv") << '\n';
  return 0;
}

int cmd_ksweep(RunConfig& cfg, int kmin, int kmax) {
  if (kmin > kmax) throw std::invalid_argument("empty k range");
  lah::Dataset d = load_for(cfg);
  std::ostringstream os;
  std::istringstream cfg_lines(lah::echo_config(cfg));
  os << "# preset-k sweep\n";
  for (std::string l; std::getline(cfg_lines, l);) os << "# " << l << '\n';
  os << lah::sweep_csv_header() << '\n';
  for (int k = kmin; k <= kmax; ++k) {
    RunConfig c = cfg;
    c.preset_k = k;
    lah::EvalReport rep = lah::crossval(d, c, &std::cerr);
    os << lah::sweep_csv_row(k, rep) << '\n';
    std::cerr << "k=" << k << " done: A=" << lah::format_metric(rep.mean_accuracy)
              << " K=" << rep.modal_k << '\n';
  }
  std::string path = artifact_path(cfg, ".ksweep.csv");
  write_file(path, os.str());
  std::cout << os.str() << "wrote " << path << '\n';
  return 0;
}

// Raw cell rows from a CSV of attribute values only. A leading line that
// repeats the model's attribute names is treated as a header.
std::vector<std::vector<std::string>> read_raw_rows(const lah::Model& m,
                                                    const std::string& path,
                                                    bool with_goal) {
  require_file(path);
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (lah::detail::trim(line).empty()) continue;
    auto cells = lah::detail::split_csv_line(line);
    if (first) {
      first = false;
      std::size_t nh = m.n_attributes() + (with_goal ? 1 : 0);
      if (cells.size() == nh) {
        bool header = true;
        for (std::size_t a = 0; a < m.n_attributes() && header; ++a)
          header = cells[a] == m.attribute_names[a];
        if (header) continue;
      }
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw std::invalid_argument(path + ": no data rows");
  return rows;
}

int cmd_predict(const std::string& model_path, const std::string& rows_path) {
  require_file(model_path);
  lah::Model m = lah::load_model(model_path);
  auto rows = read_raw_rows(m, rows_path, false);
  std::cout.precision(17);
  for (const auto& cells : rows) {
    std::vector<double> mass = lah::predict_masses(m, lah::encode_cells(m, cells));
    int cls = lah::argmax_class(mass);
    std::cout << m.class_labels[cls];
    for (double v : mass) std::cout << ',' << v;
    std::cout << '\n';
  }
  return 0;
}

int cmd_export_rules(const std::string& model_path, std::string out_path) {
  require_file(model_path);
  lah::Model m = lah::load_model(model_path);
  std::string text = lah::export_rules_text(m);
  if (out_path.empty())
    out_path = (std::filesystem::path(m.cfg.out_dir) / (m.cfg.dataset_name + ".rules.txt"))
                   .string();
  write_file(out_path, text);
  std::cout << text << "wrote " << out_path << '\n';
  return 0;
}

int cmd_roc(const std::string& model_path, const std::string& rows_path,
            std::string positive, std::string out_path) {
  require_file(model_path);
  lah::Model m = lah::load_model(model_path);
  auto rows = read_raw_rows(m, rows_path, true);

  if (positive.empty()) positive = m.class_labels.size() == 2 ? m.class_labels[1] : "";
  auto pit = std::find(m.class_labels.begin(), m.class_labels.end(), positive);
  if (pit == m.class_labels.end())
    throw std::invalid_argument("--positive must name one of the model's classes");
  int pos = static_cast<int>(pit - m.class_labels.begin());

  std::vector<double> score;
  std::vector<int> truth;
  for (const auto& cells : rows) {
    if (cells.size() != m.n_attributes() + 1)
      throw std::invalid_argument("expected " + std::to_string(m.n_attributes() + 1) +
                                  " cells (attributes plus goal), got " +
                                  std::to_string(cells.size()));
    std::vector<std::string> attrs(cells.begin(), cells.end() - 1);
    auto git = std::find(m.class_labels.begin(), m.class_labels.end(), cells.back());
    if (git == m.class_labels.end())
      throw std::invalid_argument("unknown class label '" + cells.back() + "'");
    std::vector<double> mass = lah::predict_masses(m, lah::encode_cells(m, attrs));
    score.push_back(mass[pos]);
    truth.push_back(git - m.class_labels.begin() == pos ? 1 : 0);
  }
  auto curve = lah::roc_curve(score, truth);
  std::ostringstream os;
  std::istringstream cfg_lines(lah::echo_config(m.cfg));
  os << "# ROC, positive class '" << positive << "'\n";
  for (std::string l; std::getline(cfg_lines, l);) os << "# " << l << '\n';
  os << lah::roc_csv(curve);
  if (out_path.empty())
    out_path = (std::filesystem::path(m.cfg.out_dir) / (m.cfg.dataset_name + ".roc.csv"))
                   .string();
  write_file(out_path, os.str());
  std::cout << "auc=" << lah::format_metric(lah::auc_trapezoid(curve)) << '\n'
            << "wrote " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-organising fuzzy attribute hierarchy classifier"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string model_out, model_path, rows_path, positive, out_path;
  int kmin = 2, kmax = 10;

  auto* c_inspect = app.add_subcommand("inspect", "dataset and partition summary");
  add_pipeline_options(c_inspect, cfg, false);

  auto* c_dcorr = app.add_subcommand("dcorr", "distance-correlation matrix and goal vector");
  add_pipeline_options(c_dcorr, cfg, false);

  auto* c_cluster = app.add_subcommand("cluster", "attribute clusters in consumption order");
  add_pipeline_options(c_cluster, cfg, false);

  auto* c_build = app.add_subcommand("build", "hierarchy structure without training");
  add_pipeline_options(c_build, cfg, false);

  auto* c_train = app.add_subcommand("train", "train on the full dataset, write model JSON");
  add_pipeline_options(c_train, cfg, false);
  c_train->add_option("--model-out", model_out, "model file path");

  auto* c_crossval = app.add_subcommand("crossval", "stratified k-fold cross-validation");
  add_pipeline_options(c_crossval, cfg);

  auto* c_ksweep = app.add_subcommand("ksweep", "cross-validation per preset k");
  add_pipeline_options(c_ksweep, cfg);
  c_ksweep->add_option("--kmin", kmin, "first preset k")->check(CLI::Range(1, 1024))
      ->capture_default_str();
  c_ksweep->add_option("--kmax", kmax, "last preset k")->check(CLI::Range(1, 1024))
      ->capture_default_str();

  auto* c_predict = app.add_subcommand("predict", "classify raw attribute rows");
  c_predict->add_option("--model", model_path, "model JSON")->required();
  c_predict->add_option("--rows", rows_path, "CSV of attribute rows")->required();

  auto* c_rules = app.add_subcommand("export-rules", "human-readable rule document");
  c_rules->add_option("--model", model_path, "model JSON")->required();
  c_rules->add_option("--out", out_path, "output path");

  auto* c_roc = app.add_subcommand("roc", "ROC curve of a model on labeled rows");
  c_roc->add_option("--model", model_path, "model JSON")->required();
  c_roc->add_option("--rows", rows_path, "labeled CSV (goal column last)")->required();
  c_roc->add_option("--positive", positive, "positive class label");
  c_roc->add_option("--out", out_path, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_inspect)) return cmd_inspect(cfg);
    if (app.got_subcommand(c_dcorr)) return cmd_dcorr(cfg);
    if (app.got_subcommand(c_cluster)) return cmd_cluster(cfg);
    if (app.got_subcommand(c_build)) return cmd_build(cfg);
    if (app.got_subcommand(c_train)) return cmd_train(cfg, model_out);
    if (app.got_subcommand(c_crossval)) return cmd_crossval(cfg);
    if (app.got_subcommand(c_ksweep)) return cmd_ksweep(cfg, kmin, kmax);
    if (app.got_subcommand(c_predict)) return cmd_predict(model_path, rows_path);
    if (app.got_subcommand(c_rules)) return cmd_export_rules(model_path, out_path);
    if (app.got_subcommand(c_roc)) return cmd_roc(model_path, rows_path, positive, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
