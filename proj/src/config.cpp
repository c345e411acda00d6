#include "mcarfima/config.hpp"

#include <algorithm>
#include <fstream>
#include "json.hpp"
#include <set>
#include <sstream>

#include "mcarfima/error.hpp"

namespace mcarfima {
namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<std::string_view> known) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

const json& require_object(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  return j;
}

std::size_t get_count(const json& j, const std::string& field) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                 j.get<std::int64_t>() < 0)) {
    fail(field, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

double get_real(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

std::string component_kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::fractional:
      return "fractional";
    case ComponentKind::ar1:
      return "ar1";
    case ComponentKind::white:
      return "white";
  }
  return "white";
}

ComponentSpec component_from_json(const json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown(j, field, {"kind", "param", "weight", "slot"});
  ComponentSpec c;
  if (!j.contains("kind") || !j["kind"].is_string()) fail(field + ".kind", "expected a string");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "fractional") {
    c.kind = ComponentKind::fractional;
  } else if (kind == "ar1") {
    c.kind = ComponentKind::ar1;
  } else if (kind == "white") {
    c.kind = ComponentKind::white;
  } else {
    fail(field + ".kind", "expected fractional, ar1 or white, got '" + kind + "'");
  }
  if (c.kind != ComponentKind::white) {
    if (!j.contains("param")) fail(field + ".param", "required for " + kind + " components");
    c.parameter = get_real(j["param"], field + ".param");
  } else if (j.contains("param")) {
    c.parameter = get_real(j["param"], field + ".param");
    if (c.parameter != 0.0) fail(field + ".param", "white components take no parameter");
  }
  if (!j.contains("weight")) fail(field + ".weight", "required");
  c.weight = get_real(j["weight"], field + ".weight");
  if (!j.contains("slot")) fail(field + ".slot", "required");
  c.slot = static_cast<int>(get_count(j["slot"], field + ".slot"));
  return c;
}

json component_to_json(const ComponentSpec& c) {
  json j = {{"kind", component_kind_name(c.kind)}, {"weight", c.weight}, {"slot", c.slot}};
  if (c.kind != ComponentKind::white) j["param"] = c.parameter;
  return j;
}

constexpr std::array<std::pair<int, int>, 6> kPairs{
    {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

CovarianceSpec covariance_from_json(const json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown(j, field, {"variances", "covariances"});
  CovarianceSpec cov;
  if (j.contains("variances")) {
    const auto& v = j["variances"];
    if (!v.is_array() || v.size() != 4) fail(field + ".variances", "expected 4 numbers");
    for (int i = 0; i < 4; ++i) {
      cov.variances[i] = get_real(v[i], field + ".variances[" + std::to_string(i) + "]");
    }
  }
  if (j.contains("covariances")) {
    const auto& c = require_object(j["covariances"], field + ".covariances");
    for (const auto& [key, value] : c.items()) {
      const auto it = std::find_if(kPairs.begin(), kPairs.end(), [&](const auto& p) {
        return key == std::to_string(p.first) + std::to_string(p.second);
      });
      if (it == kPairs.end()) {
        fail(field + ".covariances." + key, "expected one of 12, 13, 14, 23, 24, 34");
      }
      cov.set(it->first, it->second, get_real(value, field + ".covariances." + key));
    }
  }
  return cov;
}

json covariance_to_json(const CovarianceSpec& cov) {
  json pairs = json::object();
  for (const auto& [i, j] : kPairs) pairs[std::to_string(i) + std::to_string(j)] = cov(i, j);
  return {{"variances", cov.variances}, {"covariances", pairs}};
}

ModelSpec model_from_json(const json& j, const std::string& field, std::string* name) {
  if (j.is_string()) {
    const auto n = j.get<std::string>();
    auto m = preset(n);
    if (!m) fail(field, "unknown preset '" + n + "' (expected model1, model2 or model3)");
    if (name != nullptr) *name = n;
    return *m;
  }
  require_object(j, field);
  reject_unknown(j, field, {"x", "y", "covariance"});
  ModelSpec m;
  for (const char* series : {"x", "y"}) {
    const std::string f = field + "." + series;
    if (!j.contains(series) || !j[series].is_array() || j[series].size() != 2) {
      fail(f, "expected an array of 2 components");
    }
    auto& target = std::string_view(series) == "x" ? m.x : m.y;
    for (std::size_t i = 0; i < 2; ++i) {
      target[i] = component_from_json(j[series][i], f + "[" + std::to_string(i) + "]");
    }
  }
  if (j.contains("covariance")) m.covariance = covariance_from_json(j["covariance"], field + ".covariance");
  try {
    m.validate();
  } catch (const Error& e) {
    fail(field, e.what());
  }
  if (name != nullptr) *name = "custom";
  return m;
}

json model_to_json(const ModelSpec& m) {
  return {{"x", {component_to_json(m.x[0]), component_to_json(m.x[1])}},
          {"y", {component_to_json(m.y[0]), component_to_json(m.y[1])}},
          {"covariance", covariance_to_json(m.covariance)}};
}

ScaleRange scales_from_json(const json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown(j, field, {"s_min", "s_max", "step"});
  ScaleRange r;
  for (const char* key : {"s_min", "s_max", "step"}) {
    if (!j.contains(key)) fail(field + "." + key, "required");
  }
  r.min = get_count(j["s_min"], field + ".s_min");
  r.max = get_count(j["s_max"], field + ".s_max");
  r.step = get_count(j["step"], field + ".step");
  return r;
}

json scales_to_json(const ScaleRange& r) {
  return {{"s_min", r.min}, {"s_max", r.max}, {"step", r.step}};
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Locate the byte offset reported by the parser.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << "config syntax error at line " << line << ", column " << col << ": " << e.what();
    throw ConfigError(msg.str());
  }
}

void check_scales(const ScaleRange& r, std::size_t length, int order, const std::string& field) {
  if (r.step == 0) fail(field + ".step", "must be positive");
  if (r.min < static_cast<std::size_t>(order) + 2) {
    fail(field + ".s_min", "must be at least detrend_order + 2");
  }
  if (r.max < r.min) fail(field + ".s_max", "must not be below s_min");
  if (r.max > length / 2) fail(field + ".s_max", "must not exceed T/2");
}

}  // namespace

std::string_view to_string(Estimator e) noexcept {
  switch (e) {
    case Estimator::dfa:
      return "dfa";
    case Estimator::dcca:
      return "dcca";
    case Estimator::hxa:
      return "hxa";
    case Estimator::ccf:
      return "ccf";
  }
  return "dfa";
}

Estimator estimator_from_string(std::string_view name) {
  for (auto e : {Estimator::dfa, Estimator::dcca, Estimator::hxa, Estimator::ccf}) {
    if (to_string(e) == name) return e;
  }
  throw ConfigError("unknown estimator '" + std::string(name) +
                    "' (expected dfa, dcca, hxa or ccf)");
}

std::size_t ExperimentConfig::effective_truncation() const noexcept {
  return truncation_m.value_or(default_truncation(length));
}

ScaleRange ExperimentConfig::effective_dfa_scales() const noexcept {
  return dfa_scales.value_or(ScaleRange{10, length / 5, 10});
}

ScaleRange ExperimentConfig::effective_dcca_scales() const noexcept {
  return dcca_scales.value_or(ScaleRange{10, length / 5, 10});
}

bool ExperimentConfig::uses(Estimator e) const noexcept {
  return std::find(estimators.begin(), estimators.end(), e) != estimators.end();
}

void ExperimentConfig::validate() const {
  if (length < 100) fail("T", "must be at least 100, got " + std::to_string(length));
  if (replications < 1) fail("replications", "must be at least 1");
  if (workers < 1) fail("workers", "must be at least 1");
  if (estimators.empty()) fail("estimators", "must name at least one estimator");
  if (std::set(estimators.begin(), estimators.end()).size() != estimators.size()) {
    fail("estimators", "contains duplicates");
  }
  if (detrend_order < 0) fail("detrend_order", "must be non-negative");
  try {
    model.validate();
  } catch (const Error& e) {
    fail("model", e.what());
  }
  if (uses(Estimator::dfa)) check_scales(effective_dfa_scales(), length, detrend_order, "dfa");
  if (uses(Estimator::dcca)) check_scales(effective_dcca_scales(), length, detrend_order, "dcca");
  if (uses(Estimator::hxa)) {
    if (tau_min < 1) fail("hxa.tau_min", "must be at least 1");
    if (tau_max <= tau_min) fail("hxa.tau_max", "must exceed tau_min");
    if (tau_max > length / 10) fail("hxa.tau_max", "must not exceed T/10");
  }
  if (uses(Estimator::ccf) && length <= 2 * ccf_max_lag) fail("ccf.max_lag", "needs T > 2 * max_lag");
  if (effective_truncation() < 1 && truncation_m) fail("truncation.M", "must be positive");
  if (truncation_k < theory_max_lag + 100) fail("truncation.K", "must be at least theory.max_lag + 100");
}

ExperimentConfig parse_config(std::string_view text) {
  const json doc = parse_document(text);
  require_object(doc, "<root>");
  reject_unknown(doc, "",
                 {"model", "T", "replications", "base_seed", "workers", "estimators", "dfa",
                  "dcca", "detrend_order", "hxa", "ccf", "truncation", "theory", "output_dir"});
  ExperimentConfig c;
  if (doc.contains("model")) c.model = model_from_json(doc["model"], "model", &c.model_name);
  if (doc.contains("T")) c.length = get_count(doc["T"], "T");
  if (doc.contains("replications")) c.replications = get_count(doc["replications"], "replications");
  if (doc.contains("base_seed")) {
    if (!doc["base_seed"].is_number_unsigned()) fail("base_seed", "expected a non-negative integer");
    c.base_seed = doc["base_seed"].get<std::uint64_t>();
  }
  if (doc.contains("workers")) c.workers = get_count(doc["workers"], "workers");
  if (doc.contains("estimators")) {
    const auto& e = doc["estimators"];
    if (!e.is_array()) fail("estimators", "expected an array of names");
    c.estimators.clear();
    for (const auto& name : e) {
      if (!name.is_string()) fail("estimators", "expected an array of names");
      try {
        c.estimators.push_back(estimator_from_string(name.get<std::string>()));
      } catch (const ConfigError& err) {
        fail("estimators", err.what());
      }
    }
  }
  if (doc.contains("dfa")) c.dfa_scales = scales_from_json(doc["dfa"], "dfa");
  if (doc.contains("dcca")) c.dcca_scales = scales_from_json(doc["dcca"], "dcca");
  if (doc.contains("detrend_order")) {
    c.detrend_order = static_cast<int>(get_count(doc["detrend_order"], "detrend_order"));
  }
  if (doc.contains("hxa")) {
    const auto& h = require_object(doc["hxa"], "hxa");
    reject_unknown(h, "hxa", {"tau_min", "tau_max"});
    if (h.contains("tau_min")) c.tau_min = get_count(h["tau_min"], "hxa.tau_min");
    if (h.contains("tau_max")) c.tau_max = get_count(h["tau_max"], "hxa.tau_max");
  }
  if (doc.contains("ccf")) {
    const auto& h = require_object(doc["ccf"], "ccf");
    reject_unknown(h, "ccf", {"max_lag"});
    if (h.contains("max_lag")) c.ccf_max_lag = get_count(h["max_lag"], "ccf.max_lag");
  }
  if (doc.contains("truncation")) {
    const auto& h = require_object(doc["truncation"], "truncation");
    reject_unknown(h, "truncation", {"M", "K"});
    if (h.contains("M") && !h["M"].is_null()) c.truncation_m = get_count(h["M"], "truncation.M");
    if (h.contains("K")) c.truncation_k = get_count(h["K"], "truncation.K");
  }
  if (doc.contains("theory")) {
    const auto& h = require_object(doc["theory"], "theory");
    reject_unknown(h, "theory", {"max_lag"});
    if (h.contains("max_lag")) c.theory_max_lag = get_count(h["max_lag"], "theory.max_lag");
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) fail("output_dir", "expected a string");
    c.output_dir = doc["output_dir"].get<std::string>();
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string serialize_config(const ExperimentConfig& c) {
  json doc;
  const auto p = preset(c.model_name);
  doc["model"] = (p && *p == c.model) ? json(c.model_name) : model_to_json(c.model);
  doc["T"] = c.length;
  doc["replications"] = c.replications;
  doc["base_seed"] = c.base_seed;
  doc["workers"] = c.workers;
  json est = json::array();
  for (auto e : c.estimators) est.push_back(std::string(to_string(e)));
  doc["estimators"] = est;
  if (c.dfa_scales) doc["dfa"] = scales_to_json(*c.dfa_scales);
  if (c.dcca_scales) doc["dcca"] = scales_to_json(*c.dcca_scales);
  doc["detrend_order"] = c.detrend_order;
  doc["hxa"] = {{"tau_min", c.tau_min}, {"tau_max", c.tau_max}};
  doc["ccf"] = {{"max_lag", c.ccf_max_lag}};
  json trunc = {{"K", c.truncation_k}};
  if (c.truncation_m) trunc["M"] = *c.truncation_m;
  doc["truncation"] = trunc;
  doc["theory"] = {{"max_lag", c.theory_max_lag}};
  doc["output_dir"] = c.output_dir.string();
  return doc.dump(2) + "\n";
}

ModelSpec parse_model(std::string_view text) {
  return model_from_json(parse_document(text), "model", nullptr);
}

std::string serialize_model(const ModelSpec& model) { return model_to_json(model).dump(2) + "\n"; }

}  // namespace mcarfima
