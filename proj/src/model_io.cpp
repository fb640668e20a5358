#include "pinlab/model_io.hpp"

#include "json.hpp"
#include "pinlab/errors.hpp"

namespace pinlab {

using nlohmann::json;

namespace {

json standardizer_to_json(const Standardizer& s) {
  return {{"mean", s.mean}, {"stddev", s.stddev}};
}

Standardizer standardizer_from_json(const json& j) {
  Standardizer s;
  s.mean = j.at("mean").get<std::vector<double>>();
  s.stddev = j.at("stddev").get<std::vector<double>>();
  return s;
}

json forest_to_json(const Forest& f) {
  json trees = json::array();
  for (const Tree& tree : f.trees) {
    json nodes = json::array();
    for (const TreeNode& n : tree.nodes)
      nodes.push_back({n.feature, n.threshold, n.left, n.right, n.leaf_value});
    trees.push_back(std::move(nodes));
  }
  return {{"features_per_node", f.features_per_node},
          {"bootstrap", f.bootstrap},
          {"trees", std::move(trees)}};
}

Forest forest_from_json(const json& j) {
  Forest f;
  f.features_per_node = j.at("features_per_node").get<int>();
  f.bootstrap = j.at("bootstrap").get<bool>();
  for (const json& tree_j : j.at("trees")) {
    Tree tree;
    for (const json& n : tree_j) {
      TreeNode node;
      node.feature = n.at(0).get<int>();
      node.threshold = n.at(1).get<double>();
      node.left = n.at(2).get<int>();
      node.right = n.at(3).get<int>();
      node.leaf_value = n.at(4).get<double>();
      tree.nodes.push_back(node);
    }
    f.trees.push_back(std::move(tree));
  }
  return f;
}

json parse_model(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error("SchemaMismatch", "model JSON is unparsable");
  return j;
}

}  // namespace

std::string classifier_to_json(const ClassifierModel& model, const std::string& schema_digest) {
  json j;
  j["kind"] = classifier_kind_to_string(model.kind);
  j["seed"] = model.seed;
  j["dim"] = model.dim;
  j["schema_digest"] = schema_digest;
  if (model.kind == ClassifierKind::RANDOM_FOREST) {
    j["forest"] = forest_to_json(model.forest);
  } else {
    j["standardizer"] = standardizer_to_json(model.standardizer);
    j["weights"] = model.weights;
    j["bias"] = model.bias;
  }
  return j.dump(2) + "\n";
}

ClassifierModel classifier_from_json(const std::string& text, std::string* schema_digest) {
  const json j = parse_model(text);
  ClassifierModel model;
  try {
    model.kind = classifier_kind_from_string(j.at("kind").get<std::string>());
    model.seed = j.at("seed").get<std::uint64_t>();
    model.dim = j.at("dim").get<std::size_t>();
    if (schema_digest) *schema_digest = j.at("schema_digest").get<std::string>();
    if (model.kind == ClassifierKind::RANDOM_FOREST) {
      model.forest = forest_from_json(j.at("forest"));
    } else {
      model.standardizer = standardizer_from_json(j.at("standardizer"));
      model.weights = j.at("weights").get<std::vector<double>>();
      model.bias = j.at("bias").get<double>();
    }
  } catch (const json::exception& e) {
    throw Error("SchemaMismatch", std::string("model JSON missing fields: ") + e.what());
  }
  return model;
}

std::string regressor_to_json(const RegressorModel& model, const std::string& schema_digest) {
  json j;
  j["omega"] = model.omega;
  j["sigma"] = model.sigma;
  j["lambda"] = model.lambda;
  j["seed"] = model.seed;
  j["schema_digest"] = schema_digest;
  j["standardizer"] = standardizer_to_json(model.standardizer);
  j["support"] = model.support;
  j["alpha"] = model.alpha;
  j["target_mean"] = model.target_mean;
  return j.dump(2) + "\n";
}

RegressorModel regressor_from_json(const std::string& text, std::string* schema_digest) {
  const json j = parse_model(text);
  RegressorModel model;
  try {
    model.omega = j.at("omega").get<double>();
    model.sigma = j.at("sigma").get<double>();
    model.lambda = j.at("lambda").get<double>();
    model.seed = j.at("seed").get<std::uint64_t>();
    if (schema_digest) *schema_digest = j.at("schema_digest").get<std::string>();
    model.standardizer = standardizer_from_json(j.at("standardizer"));
    model.support = j.at("support").get<Matrix>();
    model.alpha = j.at("alpha").get<std::vector<double>>();
    model.target_mean = j.at("target_mean").get<double>();
  } catch (const json::exception& e) {
    throw Error("SchemaMismatch", std::string("model JSON missing fields: ") + e.what());
  }
  return model;
}

}  // namespace pinlab
