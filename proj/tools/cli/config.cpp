#include "config.hpp"

#include <map>
#include <sstream>

#include "scorecast/csv.hpp"
#include "scorecast/model_io.hpp"

namespace scorecast::cli {

std::string RunConfig::canonical() const {
  std::map<std::string, std::string> kv;
  auto num = [](double v) { return csv::format_double(v); };
  kv["command"] = command;
  kv["data_dir"] = data_dir.generic_string();
  kv["test_size"] = std::to_string(test_size);
  kv["approach"] = approach ? std::string(to_string(*approach)) : "";
  kv["technique"] = technique ? std::string(to_string(*technique)) : "";
  kv["heuristic"] = heuristic ? std::string(to_string(*heuristic)) : "";
  kv["all"] = all ? "true" : "false";
  kv["seed"] = std::to_string(seed);
  kv["schema"] = schema_path.generic_string();
  kv["model_dir"] = model_dir ? model_dir->generic_string() : "";
  kv["fixtures"] = fixtures_file ? fixtures_file->generic_string() : "";
  kv["missing_odds"] = std::string(to_string(missing_odds));
  kv["stake"] = num(stake);
  const RegressorSpec& r = regressor;
  kv["lr.standardize"] = r.linear.standardize ? "true" : "false";
  kv["knn.k"] = std::to_string(r.knn.k);
  kv["tree.max_depth"] = std::to_string(r.tree.max_depth);
  kv["tree.min_leaf"] = std::to_string(r.tree.min_leaf);
  kv["forest.n_trees"] = std::to_string(r.forest.n_trees);
  kv["forest.bootstrap_fraction"] = num(r.forest.bootstrap_fraction);
  kv["forest.max_features"] = r.forest.max_features ? std::to_string(*r.forest.max_features) : "";
  kv["svr.c"] = num(r.svr.c);
  kv["svr.epsilon"] = num(r.svr.epsilon);
  kv["svr.kernel"] = std::string(to_string(r.svr.kernel));
  kv["svr.gamma"] = num(r.svr.gamma);
  kv["svr.tolerance"] = num(r.svr.tolerance);
  kv["svr.max_iterations"] = std::to_string(r.svr.max_iterations);
  std::ostringstream os;
  for (const auto& [k, v] : kv) os << k << '=' << v << '\n';
  return os.str();
}

std::string RunConfig::hash() const { return hex64(fnv1a(canonical())); }

std::string RunConfig::provenance_line() const {
  return "# scorecast config_hash=" + hash() + " seed=" + std::to_string(seed);
}

}  // namespace scorecast::cli
