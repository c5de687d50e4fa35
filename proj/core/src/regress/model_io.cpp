#include "scorecast/model_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scorecast/error.hpp"

namespace scorecast {

using nlohmann::json;

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

namespace {

std::uint64_t parse_hex64(const std::string& text) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v, 16);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw Error(ErrorKind::ModelFormat, "bad fingerprint '" + text + "'");
  }
  return v;
}

json matrix_to_json(const Matrix& m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

Matrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != rows * cols) throw Error(ErrorKind::ModelFormat, "matrix size mismatch");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = data[r * cols + c];
  }
  return m;
}

json spec_to_json(const RegressorSpec& s) {
  json forest{{"n_trees", s.forest.n_trees},
              {"bootstrap", s.forest.bootstrap},
              {"bootstrap_fraction", s.forest.bootstrap_fraction},
              {"max_features", nullptr}};
  if (s.forest.max_features) forest["max_features"] = *s.forest.max_features;
  return json{
      {"technique", to_string(s.technique)},
      {"linear", {{"standardize", s.linear.standardize}, {"ridge_fallback", s.linear.ridge_fallback}}},
      {"knn", {{"k", s.knn.k}}},
      {"tree", {{"max_depth", s.tree.max_depth}, {"min_leaf", s.tree.min_leaf}}},
      {"forest", forest},
      {"svr",
       {{"c", s.svr.c},
        {"epsilon", s.svr.epsilon},
        {"kernel", to_string(s.svr.kernel)},
        {"gamma", s.svr.gamma},
        {"tolerance", s.svr.tolerance},
        {"max_iterations", s.svr.max_iterations}}},
      {"seed", s.seed},
  };
}

Technique technique_from(const json& j) {
  const auto t = parse_technique(j.get<std::string>());
  if (!t) throw Error(ErrorKind::ModelFormat, "unknown technique " + j.dump());
  return *t;
}

RegressorSpec spec_from_json(const json& j) {
  RegressorSpec s;
  s.technique = technique_from(j.at("technique"));
  s.linear.standardize = j.at("linear").at("standardize").get<bool>();
  s.linear.ridge_fallback = j.at("linear").at("ridge_fallback").get<double>();
  s.knn.k = j.at("knn").at("k").get<std::size_t>();
  s.tree.max_depth = j.at("tree").at("max_depth").get<std::size_t>();
  s.tree.min_leaf = j.at("tree").at("min_leaf").get<std::size_t>();
  const auto& f = j.at("forest");
  s.forest.n_trees = f.at("n_trees").get<std::size_t>();
  s.forest.bootstrap = f.at("bootstrap").get<bool>();
  s.forest.bootstrap_fraction = f.at("bootstrap_fraction").get<double>();
  if (!f.at("max_features").is_null()) s.forest.max_features = f.at("max_features").get<std::size_t>();
  const auto& v = j.at("svr");
  s.svr.c = v.at("c").get<double>();
  s.svr.epsilon = v.at("epsilon").get<double>();
  const auto kernel = parse_kernel(v.at("kernel").get<std::string>());
  if (!kernel) throw Error(ErrorKind::ModelFormat, "unknown kernel");
  s.svr.kernel = *kernel;
  s.svr.gamma = v.at("gamma").get<double>();
  s.svr.tolerance = v.at("tolerance").get<double>();
  s.svr.max_iterations = v.at("max_iterations").get<std::size_t>();
  s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

json tree_to_json(const Tree& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes) {
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value, n.samples});
  }
  return nodes;
}

Tree tree_from_json(const json& j) {
  Tree t;
  for (const auto& n : j) {
    TreeNode node;
    node.feature = n.at(0).get<int>();
    node.threshold = n.at(1).get<double>();
    node.left = n.at(2).get<int>();
    node.right = n.at(3).get<int>();
    node.value = n.at(4).get<double>();
    node.samples = n.at(5).get<std::size_t>();
    t.nodes.push_back(node);
  }
  const auto count = static_cast<int>(t.nodes.size());
  for (const auto& n : t.nodes) {
    if (n.feature >= 0 && (n.left <= 0 || n.left >= count || n.right <= 0 || n.right >= count)) {
      throw Error(ErrorKind::ModelFormat, "tree child index out of range");
    }
  }
  if (t.nodes.empty()) throw Error(ErrorKind::ModelFormat, "empty tree");
  return t;
}

struct FitToJson {
  json operator()(const LinearFit& f) const {
    return {{"weights", f.weights}, {"intercept", f.intercept}, {"ridge_fallback", f.ridge_fallback}};
  }
  json operator()(const KnnFit& f) const {
    return {{"k", f.k}, {"train_x", matrix_to_json(f.train_x)}, {"train_y", f.train_y}};
  }
  json operator()(const Tree& t) const { return {{"nodes", tree_to_json(t)}}; }
  json operator()(const ForestFit& f) const {
    json trees = json::array();
    for (const auto& t : f.trees) trees.push_back(tree_to_json(t));
    return {{"trees", trees}};
  }
  json operator()(const SvrFit& f) const {
    return {{"kernel", to_string(f.kernel)},
            {"gamma", f.gamma},
            {"bias", f.bias},
            {"weights", f.weights},
            {"support_vectors", matrix_to_json(f.support_vectors)},
            {"coefficients", f.coefficients}};
  }
};

}  // namespace

std::string serialize_model(const TrainedModel& model) {
  json j;
  j["format"] = "scorecast-model";
  j["version"] = kModelFormatVersion;
  j["technique"] = to_string(model.technique);
  j["n_features"] = model.n_features;
  j["schema_fingerprint"] = hex64(model.schema_fingerprint);
  j["spec"] = spec_to_json(model.spec);
  j["scaler"] = model.scaler ? json{{"mean", model.scaler->mean}, {"scale", model.scaler->scale}}
                             : json(nullptr);
  j["metadata"] = model.metadata;
  j["fit"] = std::visit(FitToJson{}, model.fit);
  return j.dump(1) + "\n";
}

TrainedModel deserialize_model(std::string_view json_text) {
  try {
    const json j = json::parse(json_text);
    if (j.at("format") != "scorecast-model") throw Error(ErrorKind::ModelFormat, "not a model artifact");
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorKind::ModelFormat, "unsupported version " + j.at("version").dump());
    }
    TrainedModel m;
    m.technique = technique_from(j.at("technique"));
    m.n_features = j.at("n_features").get<std::size_t>();
    m.schema_fingerprint = parse_hex64(j.at("schema_fingerprint").get<std::string>());
    m.spec = spec_from_json(j.at("spec"));
    if (!j.at("scaler").is_null()) {
      Scaler s;
      s.mean = j["scaler"].at("mean").get<std::vector<double>>();
      s.scale = j["scaler"].at("scale").get<std::vector<double>>();
      if (s.mean.size() != m.n_features || s.scale.size() != m.n_features) {
        throw Error(ErrorKind::ModelFormat, "scaler width mismatch");
      }
      m.scaler = std::move(s);
    }
    m.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    const json& f = j.at("fit");
    switch (m.technique) {
      case Technique::LR: {
        LinearFit fit;
        fit.weights = f.at("weights").get<std::vector<double>>();
        fit.intercept = f.at("intercept").get<double>();
        fit.ridge_fallback = f.at("ridge_fallback").get<bool>();
        if (fit.weights.size() != m.n_features) throw Error(ErrorKind::ModelFormat, "weight count");
        m.fit = std::move(fit);
        break;
      }
      case Technique::KNN: {
        KnnFit fit;
        fit.k = f.at("k").get<std::size_t>();
        fit.train_x = matrix_from_json(f.at("train_x"));
        fit.train_y = f.at("train_y").get<std::vector<double>>();
        if (fit.train_y.size() != fit.train_x.rows() || fit.k < 1 || fit.k > fit.train_y.size()) {
          throw Error(ErrorKind::ModelFormat, "inconsistent neighbour set");
        }
        m.fit = std::move(fit);
        break;
      }
      case Technique::DTR: m.fit = tree_from_json(f.at("nodes")); break;
      case Technique::RFR: {
        ForestFit fit;
        for (const auto& t : f.at("trees")) fit.trees.push_back(tree_from_json(t));
        if (fit.trees.empty()) throw Error(ErrorKind::ModelFormat, "empty forest");
        m.fit = std::move(fit);
        break;
      }
      case Technique::SVR: {
        SvrFit fit;
        const auto kernel = parse_kernel(f.at("kernel").get<std::string>());
        if (!kernel) throw Error(ErrorKind::ModelFormat, "unknown kernel");
        fit.kernel = *kernel;
        fit.gamma = f.at("gamma").get<double>();
        fit.bias = f.at("bias").get<double>();
        fit.weights = f.at("weights").get<std::vector<double>>();
        fit.support_vectors = matrix_from_json(f.at("support_vectors"));
        fit.coefficients = f.at("coefficients").get<std::vector<double>>();
        m.fit = std::move(fit);
        break;
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ModelFormat, e.what());
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << serialize_model(model);
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingArtifact, path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

}  // namespace scorecast
