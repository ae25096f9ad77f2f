// YAML loader for experiment descriptions.

#include <yaml-cpp/yaml.h>

#include <cstdlib>
#include <filesystem>
#include <stdexcept>

#include "toxspan/harness.hpp"
#include "toxspan/io.hpp"

namespace toxspan {

namespace fs = std::filesystem;

namespace {

class PathResolver {
 public:
  PathResolver(const fs::path& config_path, const YAML::Node& root) {
    fs::path config_dir = config_path.parent_path();
    if (config_dir.empty()) config_dir = ".";
    if (root["data_root"]) {
      fs::path dr = root["data_root"].as<std::string>();
      base_ = dr.is_absolute() ? dr : config_dir / dr;
    } else if (const char* env = std::getenv("TOXSPAN_DATA"); env && *env) {
      base_ = env;
    } else {
      base_ = config_dir;
    }
  }

  std::string operator()(const std::string& p) {
    fs::path path(p);
    std::string out = (path.is_absolute() ? path : base_ / path).lexically_normal().string();
    files.push_back(out);
    return out;
  }

  std::vector<std::string> files;

 private:
  fs::path base_;
};

template <typename T>
std::vector<T> as_list(const YAML::Node& node) {
  std::vector<T> out;
  if (!node) return out;
  if (node.IsSequence()) {
    for (const auto& v : node) out.push_back(v.as<T>());
  } else {
    out.push_back(node.as<T>());
  }
  return out;
}

GridSpec parse_grid(const YAML::Node& node, const GridSpec& fallback) {
  GridSpec g = fallback;
  if (!node) return g;
  if (node["fill_chars"]) g.fill_chars = as_list<Offset>(node["fill_chars"]);
  if (node["theta"]) g.theta = as_list<double>(node["theta"]);
  if (node["min_occ"]) g.min_occ = as_list<std::size_t>(node["min_occ"]);
  if (node["tau"]) g.tau = as_list<double>(node["tau"]);
  return g;
}

// {train: {eval: path}} -> loaded objects.
template <typename T, typename Loader>
DomainPairMap<T> load_pairs(const YAML::Node& node, PathResolver& resolve,
                            const ExperimentConfig& cfg, Loader load) {
  DomainPairMap<T> out;
  if (!node) return out;
  for (const auto& train : node) {
    auto train_name = train.first.as<std::string>();
    for (const auto& eval : train.second) {
      auto eval_name = eval.first.as<std::string>();
      auto it = cfg.datasets.find(eval_name);
      if (it == cfg.datasets.end()) {
        throw std::invalid_argument("file map names unknown dataset '" + eval_name + "'");
      }
      out[train_name][eval_name] = load(resolve(eval.second.as<std::string>()), it->second);
    }
  }
  return out;
}

}  // namespace

LoadedExperiment load_experiment(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw FormatError(path, 0, std::string("invalid YAML: ") + e.what());
  }
  try {
    LoadedExperiment out;
    PathResolver resolve(path, root);
    resolve.files.push_back(path);
    ExperimentConfig& cfg = out.config;

    cfg.name = root["name"] ? root["name"].as<std::string>() : fs::path(path).stem().string();
    cfg.setting = parse_setting(root["setting"] ? root["setting"].as<std::string>() : "oracle");
    cfg.objective = root["objective"] ? parse_objective(root["objective"].as<std::string>())
                                      : default_objective(cfg.setting);
    cfg.seed = root["seed"] ? root["seed"].as<std::uint64_t>() : 0;
    cfg.jobs = root["jobs"] ? root["jobs"].as<std::size_t>() : 1;
    if (root["match_mode"]) cfg.match_mode.kind = parse_match_kind(root["match_mode"].as<std::string>());
    if (root["case_fold"]) cfg.match_mode.case_fold = root["case_fold"].as<bool>();
    cfg.grid = parse_grid(root["grid"], GridSpec::defaults());

    if (!root["datasets"] || !root["datasets"].IsMap()) {
      throw std::invalid_argument("config needs a 'datasets' table");
    }
    for (const auto& d : root["datasets"]) {
      auto name = d.first.as<std::string>();
      Dataset ds = read_canonical(resolve(d.second.as<std::string>()));
      ds.name = name;
      cfg.datasets.emplace(name, std::move(ds));
    }

    if (!root["runs"] || !root["runs"].IsSequence()) {
      throw std::invalid_argument("config needs a 'runs' list");
    }
    for (const auto& r : root["runs"]) {
      ExperimentRun run;
      run.train = r["train"].as<std::string>();
      run.eval = r["eval"] ? as_list<std::string>(r["eval"]) : std::vector<std::string>{run.train};
      for (const auto& name : run.eval) {
        if (!cfg.datasets.contains(name)) throw std::invalid_argument("unknown dataset '" + name + "'");
      }
      if (!cfg.datasets.contains(run.train)) {
        throw std::invalid_argument("unknown dataset '" + run.train + "'");
      }
      cfg.runs.push_back(std::move(run));
    }

    cfg.binary = load_pairs<BinaryMap>(root["binary"], resolve, cfg,
                                       [](const std::string& p, const Dataset&) { return load_binary(p); });

    if (!root["methods"] || !root["methods"].IsSequence()) {
      throw std::invalid_argument("config needs a 'methods' list");
    }
    for (const auto& m : root["methods"]) {
      MethodSpec spec;
      spec.kind = parse_method_kind(m["kind"].as<std::string>());
      spec.name = m["name"] ? m["name"].as<std::string>() : std::string(to_string(spec.kind));
      if (m["in_span_rule"]) spec.in_span_rule = parse_in_span_rule(m["in_span_rule"].as<std::string>());
      if (m["grid"]) spec.grid = parse_grid(m["grid"], cfg.grid);
      switch (spec.kind) {
        case MethodKind::constructed_lexicon:
          break;
        case MethodKind::wordlist_lexicon:
          if (!m["lexicon"]) throw std::invalid_argument("method '" + spec.name + "' needs 'lexicon'");
          spec.lexicon = load_wordlist(resolve(m["lexicon"].as<std::string>()), spec.name);
          break;
        case MethodKind::rationale_file:
          spec.scores = load_pairs<ScoreMap>(
              m["scores"], resolve, cfg,
              [](const std::string& p, const Dataset& d) { return load_scores(p, &d); });
          break;
        case MethodKind::span_file:
          spec.spans = load_pairs<Predictions>(
              m["spans"], resolve, cfg,
              [](const std::string& p, const Dataset& d) { return load_span_predictions(p, &d); });
          break;
      }
      out.methods.push_back(std::move(spec));
    }
    out.input_files = std::move(resolve.files);
    return out;
  } catch (const YAML::Exception& e) {
    throw FormatError(path, 0, e.what());
  }
}

}  // namespace toxspan
