#include "rulebook/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rulebook/error.hpp"

namespace rulebook {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ParseError, (path.empty() ? "/" : path) + ": " + what);
}

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::ValidationError, what);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

const json& expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) parse_fail(path, "expected an object");
  return j;
}

const json& expect_array(const json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array");
  return j;
}

std::string expect_string(const json& j, const std::string& path) {
  if (!j.is_string()) parse_fail(path, "expected a string");
  return j.get<std::string>();
}

double expect_number(const json& j, const std::string& path) {
  if (!j.is_number()) parse_fail(path, "expected a number");
  return j.get<double>();
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) parse_fail(path, "unexpected key \"" + it.key() + "\"");
  }
}

std::vector<std::string> id_list(const json& j, const std::string& path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  for (const auto& item : expect_array(j, path)) {
    out.push_back(expect_string(item, path + "/" + std::to_string(i++)));
  }
  return out;
}

void require_unique(const std::vector<std::string>& ids, const std::string& what) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) invalid("duplicate " + what + " '" + id + "'");
  }
}

// Every key of `obj` must be one of `ids`.
void require_exact_keys(const json& obj, const std::vector<std::string>& ids,
                        const std::string& context, const std::string& what) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(ids.begin(), ids.end(), it.key()) == ids.end()) {
      invalid(context + ": unknown " + what + " '" + it.key() + "'");
    }
  }
}

RiskConfig parse_risk(const json& j, const std::string& path, const std::string& rule_id) {
  expect_object(j, path);
  reject_unknown_keys(j, path, {"measure", "alpha", "threshold"});
  const std::string keyword = expect_string(member(j, path, "measure"), path + "/measure");
  std::optional<double> alpha;
  if (auto it = j.find("alpha"); it != j.end()) alpha = expect_number(*it, path + "/alpha");
  const double threshold = expect_number(member(j, path, "threshold"), path + "/threshold");

  RiskConfig config;
  try {
    config.measure = measure_from_keyword(keyword, alpha);
  } catch (const Error& e) {
    invalid("rule '" + rule_id + "': " + e.what());
  }
  if (threshold < 0.0) invalid("rule '" + rule_id + "': threshold must be nonnegative");
  config.threshold = threshold;
  return config;
}

}  // namespace

RiskMeasure measure_from_keyword(std::string_view keyword, std::optional<double> alpha) {
  const bool wants_alpha = keyword == "var" || keyword == "cvar";
  if (keyword != "expected" && keyword != "worst_case" && !wants_alpha) {
    invalid("unknown risk measure '" + std::string(keyword) +
            "' (expected one of expected, worst_case, var, cvar)");
  }
  if (wants_alpha && !alpha) invalid("measure '" + std::string(keyword) + "' requires alpha");
  if (!wants_alpha && alpha) {
    invalid("measure '" + std::string(keyword) + "' does not take alpha");
  }
  if (keyword == "expected") return RiskMeasure::expected();
  if (keyword == "worst_case") return RiskMeasure::worst_case();
  try {
    return keyword == "var" ? RiskMeasure::value_at_risk(*alpha)
                            : RiskMeasure::conditional_value_at_risk(*alpha);
  } catch (const Error& e) {
    invalid(e.what());
  }
}

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
  }
  expect_object(doc, "");
  reject_unknown_keys(doc, "", {"description", "scenarios", "system_trajectories",
                                "environment_trajectories", "interaction", "rules", "priority"});

  std::string description;
  if (auto it = doc.find("description"); it != doc.end()) {
    description = expect_string(*it, "/description");
  }

  // scenarios
  std::vector<std::string> scenario_ids;
  std::vector<double> probs;
  {
    const json& arr = expect_array(member(doc, "", "scenarios"), "/scenarios");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "/scenarios/" + std::to_string(i);
      expect_object(arr[i], path);
      reject_unknown_keys(arr[i], path, {"id", "prob"});
      scenario_ids.push_back(expect_string(member(arr[i], path, "id"), path + "/id"));
      probs.push_back(expect_number(member(arr[i], path, "prob"), path + "/prob"));
    }
  }
  require_unique(scenario_ids, "scenario");
  FiniteProbSpace space = [&] {
    try {
      return FiniteProbSpace(scenario_ids, probs);
    } catch (const Error& e) {
      invalid(e.what());
    }
  }();

  const auto trajectories =
      id_list(member(doc, "", "system_trajectories"), "/system_trajectories");
  const auto envs =
      id_list(member(doc, "", "environment_trajectories"), "/environment_trajectories");
  require_unique(trajectories, "system trajectory");
  require_unique(envs, "environment trajectory");
  if (trajectories.empty()) invalid("at least one system trajectory is required");
  if (envs.empty()) invalid("at least one environment trajectory is required");

  // interaction
  std::vector<std::size_t> interaction_cells;
  {
    const json& obj = expect_object(member(doc, "", "interaction"), "/interaction");
    require_exact_keys(obj, trajectories, "interaction", "system trajectory");
    for (const auto& t : trajectories) {
      auto row = obj.find(t);
      if (row == obj.end()) invalid("missing interaction entry for trajectory '" + t + "'");
      const std::string path = "/interaction/" + t;
      expect_object(*row, path);
      require_exact_keys(*row, scenario_ids, "interaction of '" + t + "'", "scenario");
      for (const auto& w : scenario_ids) {
        auto cell = row->find(w);
        if (cell == row->end()) invalid("missing interaction entry (" + t + ", " + w + ")");
        const std::string env = expect_string(*cell, path + "/" + w);
        auto pos = std::find(envs.begin(), envs.end(), env);
        if (pos == envs.end()) {
          invalid("interaction (" + t + ", " + w + ") names unknown environment trajectory '" +
                  env + "'");
        }
        interaction_cells.push_back(static_cast<std::size_t>(pos - envs.begin()));
      }
    }
  }

  // rules
  std::vector<Rule> rules;
  std::vector<RiskConfig> configs;
  {
    const json& arr = expect_array(member(doc, "", "rules"), "/rules");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "/rules/" + std::to_string(i);
      expect_object(arr[i], path);
      reject_unknown_keys(arr[i], path, {"id", "violations", "risk"});
      Rule rule;
      rule.id = expect_string(member(arr[i], path, "id"), path + "/id");
      const json& table = expect_object(member(arr[i], path, "violations"), path + "/violations");
      require_exact_keys(table, trajectories, "violations of '" + rule.id + "'",
                         "system trajectory");
      for (const auto& t : trajectories) {
        auto row = table.find(t);
        if (row == table.end()) {
          invalid("rule '" + rule.id + "' is missing violations for trajectory '" + t + "'");
        }
        const std::string row_path = path + "/violations/" + t;
        expect_object(*row, row_path);
        require_exact_keys(*row, envs, "violations of '" + rule.id + "' at '" + t + "'",
                           "environment trajectory");
        for (const auto& e : envs) {
          auto cell = row->find(e);
          if (cell == row->end()) {
            invalid("rule '" + rule.id + "' is missing the violation (" + t + ", " + e + ")");
          }
          const double v = expect_number(*cell, row_path + "/" + e);
          if (v < 0.0) {
            invalid("rule '" + rule.id + "' has a negative violation at (" + t + ", " + e + ")");
          }
          rule.violations.push_back(v);
        }
      }
      configs.push_back(parse_risk(member(arr[i], path, "risk"), path + "/risk", rule.id));
      rules.push_back(std::move(rule));
    }
  }
  std::vector<std::string> rule_ids;
  for (const auto& r : rules) rule_ids.push_back(r.id);
  require_unique(rule_ids, "rule");
  if (rules.empty()) invalid("at least one rule is required");

  // priority
  std::vector<Edge> edges;
  {
    const json& arr = expect_array(member(doc, "", "priority"), "/priority");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "/priority/" + std::to_string(i);
      if (!arr[i].is_array() || arr[i].size() != 2) {
        parse_fail(path, "expected a [higher, lower] pair");
      }
      edges.emplace_back(expect_string(arr[i][0], path + "/0"),
                         expect_string(arr[i][1], path + "/1"));
    }
  }

  try {
    Preorder priority = Preorder::build(rule_ids, edges);
    Rulebook rulebook(trajectories, envs, std::move(rules), std::move(priority));
    InteractionModel interaction(trajectories.size(), scenario_ids.size(),
                                 std::move(interaction_cells));
    return Instance(std::move(space), std::move(interaction), std::move(rulebook),
                    std::move(configs), std::move(description));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ValidationError) throw;
    invalid(e.what());
  }
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& instance) {
  const auto& space = instance.space();
  const auto& rb = instance.rulebook();
  json doc = json::object();
  if (!instance.description().empty()) doc["description"] = instance.description();

  json scenarios = json::array();
  for (std::size_t w = 0; w < space.size(); ++w) {
    scenarios.push_back({{"id", space.id(w)}, {"prob", space.prob(w)}});
  }
  doc["scenarios"] = std::move(scenarios);
  doc["system_trajectories"] = rb.trajectories();
  doc["environment_trajectories"] = rb.env_trajectories();

  json interaction = json::object();
  for (std::size_t t = 0; t < rb.trajectories().size(); ++t) {
    json row = json::object();
    for (std::size_t w = 0; w < space.size(); ++w) {
      row[space.id(w)] = rb.env_trajectories()[instance.interaction().env(t, w)];
    }
    interaction[rb.trajectories()[t]] = std::move(row);
  }
  doc["interaction"] = std::move(interaction);

  json rules = json::array();
  for (std::size_t r = 0; r < rb.rule_count(); ++r) {
    const RiskConfig& config = instance.risk(r);
    if (config.measure.kind() == MeasureKind::Custom) {
      throw Error(ErrorKind::PreconditionViolated,
                  "custom measure '" + config.measure.name() + "' cannot be serialized");
    }
    json table = json::object();
    for (std::size_t t = 0; t < rb.trajectories().size(); ++t) {
      json row = json::object();
      for (std::size_t e = 0; e < rb.env_trajectories().size(); ++e) {
        row[rb.env_trajectories()[e]] = rb.violation(r, t, e);
      }
      table[rb.trajectories()[t]] = std::move(row);
    }
    json risk = json::object();
    risk["measure"] = config.measure.keyword();
    if (config.measure.alpha()) risk["alpha"] = *config.measure.alpha();
    risk["threshold"] = config.threshold;
    rules.push_back({{"id", rb.rules()[r].id}, {"violations", std::move(table)},
                     {"risk", std::move(risk)}});
  }
  doc["rules"] = std::move(rules);

  // Declaring the full closure keeps the round trip exact.
  json priority = json::array();
  for (const auto& [hi, lo] : rb.priority().relation_pairs()) {
    if (hi != lo) priority.push_back({hi, lo});
  }
  doc["priority"] = std::move(priority);
  return doc.dump(2) + "\n";
}

Instance apply_override(const Instance& instance, const RiskOverride& override) {
  if (override.empty()) return instance;
  const auto& rb = instance.rulebook();
  std::vector<std::size_t> targets;
  if (override.rule) {
    targets.push_back(rb.rule_index(*override.rule));
  } else {
    for (std::size_t r = 0; r < rb.rule_count(); ++r) targets.push_back(r);
  }

  Instance out = instance;
  for (std::size_t r : targets) {
    RiskConfig config = out.risk(r);
    if (override.measure) {
      std::optional<double> alpha = override.alpha;
      const bool wants_alpha = *override.measure == "var" || *override.measure == "cvar";
      if (wants_alpha && !alpha) alpha = config.measure.alpha();
      config.measure = measure_from_keyword(*override.measure, wants_alpha ? alpha : override.alpha);
    } else if (override.alpha) {
      if (!config.measure.alpha()) {
        invalid("rule '" + rb.rules()[r].id + "' uses " + config.measure.keyword() +
                ", which does not take alpha");
      }
      config.measure = measure_from_keyword(config.measure.keyword(), override.alpha);
    }
    if (override.threshold) {
      if (*override.threshold < 0.0) invalid("threshold must be nonnegative");
      config.threshold = *override.threshold;
    }
    out = out.with_risk(r, std::move(config));
  }
  return out;
}

}  // namespace rulebook
