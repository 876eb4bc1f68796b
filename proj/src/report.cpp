#include "rulebook/report.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <sstream>

#include "rulebook/error.hpp"
#include "rulebook/tolerance.hpp"

namespace rulebook {

namespace {

using json = nlohmann::ordered_json;

// Left-aligned text table with two-space gutters.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void render(std::ostream& os, std::string_view indent = "") const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      if (width.size() < row.size()) width.resize(row.size(), 0);
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows_) {
      std::string line(indent);
      for (std::size_t c = 0; c < row.size(); ++c) {
        line += row[c];
        if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
      }
      os << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string join(const std::vector<std::string>& items, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string_view verdict_symbol(Verdict v) {
  switch (v) {
    case Verdict::Lower: return "<";
    case Verdict::Higher: return ">";
    case Verdict::Equal: return "=";
    case Verdict::Incomparable: return "~";
  }
  return "?";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string witness_sentence(const Justification& j) {
  return j.competitor + " is less risky than " + j.star + " on " + j.witness.improving_rule +
         "; compensated by " + j.witness.compensating_rule + " on {" +
         join(j.witness.witness_scenarios) +
         "} with probability " + format_number(j.witness.witness_probability);
}

json witness_json(const Justification& j) {
  json out = json::object();
  out["star"] = j.star;
  out["competitor"] = j.competitor;
  out["improving_rule"] = j.witness.improving_rule;
  out["compensating_rule"] = j.witness.compensating_rule;
  out["witness_scenarios"] = j.witness.witness_scenarios;
  out["witness_probability"] = j.witness.witness_probability;
  return out;
}

std::vector<Justification> justify(const Evaluation& eval, std::size_t star,
                                   std::size_t competitor) {
  std::vector<Justification> out;
  const auto& ids = eval.instance().trajectories();
  for (std::size_t r = 0; r < eval.instance().rule_count(); ++r) {
    if (!definitely_less(eval.risk_aware_violation(r, competitor),
                         eval.risk_aware_violation(r, star))) {
      continue;
    }
    for (auto& w : eval.all_tradeoff_witnesses(star, competitor, r)) {
      out.push_back({ids[star], ids[competitor], std::move(w)});
    }
  }
  return out;
}

std::vector<Disadvantage> disadvantages(const Evaluation& eval, std::size_t worse,
                                        std::size_t better) {
  const auto& rb = eval.instance().rulebook();
  std::vector<Disadvantage> out;
  for (std::size_t r = 0; r < rb.rule_count(); ++r) {
    const double w = eval.risk_aware_violation(r, worse);
    const double b = eval.risk_aware_violation(r, better);
    if (!definitely_greater(w, b)) continue;
    Disadvantage d{rb.rules()[r].id, w, b, {}};
    for (std::size_t s = 0; s < rb.rule_count(); ++s) {
      if (rb.priority().strictly_above(s, r) &&
          definitely_less(eval.risk_aware_violation(s, worse),
                          eval.risk_aware_violation(s, better))) {
        d.compensated_by.push_back(rb.rules()[s].id);
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

json disadvantages_json(const std::vector<Disadvantage>& items) {
  json out = json::array();
  for (const auto& d : items) {
    out.push_back({{"rule", d.rule},
                   {"worse", d.worse},
                   {"better", d.better},
                   {"compensated_by", d.compensated_by}});
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, end);
}

// ---------------------------------------------------------------- rank

RankingReport run_rank(const Instance& instance) {
  const Evaluation eval(instance);
  const auto& rb = instance.rulebook();
  const std::size_t n = instance.trajectory_count();

  RankingReport report;
  for (std::size_t r = 0; r < rb.rule_count(); ++r) {
    report.rules.push_back(rb.rules()[r].id);
    report.measures.push_back(instance.risk(r).measure.describe());
    report.thresholds.push_back(instance.risk(r).threshold);
  }

  const auto optimal = eval.optimal_indices();
  for (std::size_t t = 0; t < n; ++t) {
    TrajectoryAssessment row;
    row.trajectory = instance.trajectories()[t];
    row.safe = eval.is_safe(t);
    row.optimal = std::find(optimal.begin(), optimal.end(), t) != optimal.end();
    for (std::size_t r = 0; r < rb.rule_count(); ++r) {
      row.rules.push_back({rb.rules()[r].id, eval.risk_of(r, t), instance.risk(r).threshold,
                           eval.risk_aware_violation(r, t), eval.is_safe_wrt_rule(r, t)});
    }
    report.trajectories.push_back(std::move(row));
  }

  report.matrix.assign(n, std::vector<Verdict>(n, Verdict::Equal));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) report.matrix[a][b] = eval.compare_trajectories(a, b);
  }

  for (std::size_t star : optimal) {
    report.optimal.push_back(instance.trajectories()[star]);
    for (std::size_t other = 0; other < n; ++other) {
      if (other == star) continue;
      for (auto& j : justify(eval, star, other)) report.explanations.push_back(std::move(j));
    }
  }
  return report;
}

std::string render_text(const RankingReport& report) {
  std::ostringstream os;
  os << "Risk configuration\n";
  TextTable config({"rule", "measure", "threshold"});
  for (std::size_t r = 0; r < report.rules.size(); ++r) {
    config.add({report.rules[r], report.measures[r], format_number(report.thresholds[r])});
  }
  config.render(os, "  ");

  os << "\nRisk-aware violation (risk) per rule\n";
  std::vector<std::string> header = {"trajectory", "safe", "optimal"};
  header.insert(header.end(), report.rules.begin(), report.rules.end());
  TextTable table(header);
  for (const auto& t : report.trajectories) {
    std::vector<std::string> row = {t.trajectory, yes_no(t.safe), yes_no(t.optimal)};
    for (const auto& r : t.rules) {
      row.push_back(format_number(r.violation) + " (" + format_number(r.risk) + ")");
    }
    table.add(std::move(row));
  }
  table.render(os, "  ");

  os << "\nVerdict matrix (row vs column: < less risky, > riskier, = equivalent, ~ incomparable)\n";
  std::vector<std::string> mheader = {""};
  for (const auto& t : report.trajectories) mheader.push_back(t.trajectory);
  TextTable matrix(mheader);
  for (std::size_t a = 0; a < report.matrix.size(); ++a) {
    std::vector<std::string> row = {report.trajectories[a].trajectory};
    for (Verdict v : report.matrix[a]) row.emplace_back(verdict_symbol(v));
    matrix.add(std::move(row));
  }
  matrix.render(os, "  ");

  os << "\nOptimal: " << join(report.optimal) << "\n";
  if (!report.explanations.empty()) {
    os << "\nTradeoffs\n";
    for (const auto& j : report.explanations) os << "  " << witness_sentence(j) << "\n";
  }
  return os.str();
}

json to_json(const RankingReport& report) {
  json out = json::object();
  json rules = json::array();
  for (std::size_t r = 0; r < report.rules.size(); ++r) {
    rules.push_back({{"id", report.rules[r]},
                     {"measure", report.measures[r]},
                     {"threshold", report.thresholds[r]}});
  }
  out["rules"] = std::move(rules);

  json trajectories = json::array();
  for (const auto& t : report.trajectories) {
    json per_rule = json::array();
    for (const auto& r : t.rules) {
      per_rule.push_back({{"rule", r.rule},
                          {"risk", r.risk},
                          {"threshold", r.threshold},
                          {"violation", r.violation},
                          {"safe", r.safe}});
    }
    trajectories.push_back({{"id", t.trajectory},
                            {"safe", t.safe},
                            {"optimal", t.optimal},
                            {"rules", std::move(per_rule)}});
  }
  out["trajectories"] = std::move(trajectories);

  json matrix = json::array();
  for (const auto& row : report.matrix) {
    json cells = json::array();
    for (Verdict v : row) cells.push_back(std::string(to_string(v)));
    matrix.push_back(std::move(cells));
  }
  out["verdicts"] = std::move(matrix);
  out["optimal"] = report.optimal;

  json explanations = json::array();
  for (const auto& j : report.explanations) explanations.push_back(witness_json(j));
  out["explanations"] = std::move(explanations);
  return out;
}

// ---------------------------------------------------------------- risk table

RiskTable run_risk_table(const Instance& instance, std::string_view rule_id,
                         const std::vector<double>& alphas) {
  const auto& rb = instance.rulebook();
  const std::size_t rule = rb.rule_index(rule_id);
  const RiskConfig& config = instance.risk(rule);
  const Evaluation eval(instance);

  RiskTable table;
  table.rule = rb.rules()[rule].id;
  table.measure = config.measure.describe();
  table.threshold = config.threshold;
  table.alphas = alphas;
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw Error(ErrorKind::InvalidAlpha, "alpha " + format_number(a) + " is outside [0, 1]");
    }
  }

  const auto& space = instance.space();
  for (std::size_t t = 0; t < instance.trajectory_count(); ++t) {
    const RandomCost f = induced_random_cost(instance, rule, t);
    RiskTableRow row;
    row.trajectory = instance.trajectories()[t];
    row.distribution = distribution(space, f);
    row.configured = eval.risk_of(rule, t);
    row.violation = eval.risk_aware_violation(rule, t);
    row.expected = expectation(space, f);
    row.worst_case = assess(RiskMeasure::worst_case(), space, f);
    for (double a : alphas) {
      row.var.push_back(assess(RiskMeasure::value_at_risk(a), space, f));
      row.cvar.push_back(assess(RiskMeasure::conditional_value_at_risk(a), space, f));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string render_text(const RiskTable& table) {
  std::ostringstream os;
  os << "Rule " << table.rule << ": " << table.measure << ", threshold "
     << format_number(table.threshold) << "\n\n";

  TextTable summary({"trajectory", "risk", "violation", "expected", "worst_case"});
  for (const auto& row : table.rows) {
    summary.add({row.trajectory, format_number(row.configured), format_number(row.violation),
                 format_number(row.expected), format_number(row.worst_case)});
  }
  summary.render(os, "  ");

  for (const char* which : {"var", "cvar"}) {
    os << "\n";
    std::vector<std::string> header = {std::string(which) + " @ alpha"};
    for (double a : table.alphas) header.push_back(format_number(a));
    TextTable t(header);
    for (const auto& row : table.rows) {
      std::vector<std::string> cells = {row.trajectory};
      const auto& values = std::string_view(which) == "var" ? row.var : row.cvar;
      for (double v : values) cells.push_back(format_number(v));
      t.add(std::move(cells));
    }
    t.render(os, "  ");
  }

  os << "\nDistribution (value: probability)\n";
  for (const auto& row : table.rows) {
    std::vector<std::string> atoms;
    for (const auto& a : row.distribution) {
      atoms.push_back(format_number(a.value) + ": " + format_number(a.prob));
    }
    os << "  " << row.trajectory << "  " << join(atoms) << "\n";
  }
  return os.str();
}

json to_json(const RiskTable& table) {
  json out = json::object();
  out["rule"] = table.rule;
  out["measure"] = table.measure;
  out["threshold"] = table.threshold;
  out["alphas"] = table.alphas;
  json rows = json::array();
  for (const auto& row : table.rows) {
    json dist = json::array();
    for (const auto& a : row.distribution) dist.push_back({{"value", a.value}, {"prob", a.prob}});
    rows.push_back({{"trajectory", row.trajectory},
                    {"risk", row.configured},
                    {"violation", row.violation},
                    {"expected", row.expected},
                    {"worst_case", row.worst_case},
                    {"var", row.var},
                    {"cvar", row.cvar},
                    {"distribution", std::move(dist)}});
  }
  out["rows"] = std::move(rows);
  return out;
}

// ---------------------------------------------------------------- explain

Explanation run_explain(const Instance& instance, std::string_view a, std::string_view b) {
  const Evaluation eval(instance);
  const auto& rb = instance.rulebook();
  const std::size_t ta = rb.trajectory_index(a);
  const std::size_t tb = rb.trajectory_index(b);

  Explanation out;
  out.a = std::string(a);
  out.b = std::string(b);
  out.verdict = eval.compare_trajectories(ta, tb);
  switch (out.verdict) {
    case Verdict::Lower: out.summary = out.a + " strictly less risky than " + out.b; break;
    case Verdict::Higher: out.summary = out.b + " strictly less risky than " + out.a; break;
    case Verdict::Equal: out.summary = out.a + " and " + out.b + " equally risky"; break;
    case Verdict::Incomparable: out.summary = out.a + " and " + out.b + " incomparable"; break;
  }
  out.a_worse = disadvantages(eval, ta, tb);
  out.b_worse = disadvantages(eval, tb, ta);
  out.a_optimal = eval.is_optimal(ta);
  out.b_optimal = eval.is_optimal(tb);
  if (ta != tb) {
    if (out.a_optimal) out.witnesses = justify(eval, ta, tb);
    if (out.b_optimal) {
      for (auto& j : justify(eval, tb, ta)) out.witnesses.push_back(std::move(j));
    }
  }
  return out;
}

std::string render_text(const Explanation& e) {
  std::ostringstream os;
  os << e.a << " vs " << e.b << ": " << e.summary << "\n";
  auto side = [&os](const std::string& who, const std::vector<Disadvantage>& items) {
    if (items.empty()) {
      os << "\n" << who << " is worse on no rule\n";
      return;
    }
    os << "\n" << who << " is worse on\n";
    for (const auto& d : items) {
      os << "  " << d.rule << " (" << format_number(d.worse) << " vs "
         << format_number(d.better) << "): "
         << (d.compensated_by.empty() ? "uncompensated"
                                      : "compensated by " + join(d.compensated_by))
         << "\n";
    }
  };
  side(e.a, e.a_worse);
  side(e.b, e.b_worse);
  os << "\noptimal: " << e.a << " " << yes_no(e.a_optimal) << ", " << e.b << " "
     << yes_no(e.b_optimal) << "\n";
  if (!e.witnesses.empty()) {
    os << "\nTradeoff witnesses\n";
    for (const auto& j : e.witnesses) os << "  " << witness_sentence(j) << "\n";
  }
  return os.str();
}

json to_json(const Explanation& e) {
  json out = json::object();
  out["a"] = e.a;
  out["b"] = e.b;
  out["verdict"] = std::string(to_string(e.verdict));
  out["summary"] = e.summary;
  out["a_worse"] = disadvantages_json(e.a_worse);
  out["b_worse"] = disadvantages_json(e.b_worse);
  out["a_optimal"] = e.a_optimal;
  out["b_optimal"] = e.b_optimal;
  json witnesses = json::array();
  for (const auto& j : e.witnesses) witnesses.push_back(witness_json(j));
  out["witnesses"] = std::move(witnesses);
  return out;
}

// ---------------------------------------------------------------- check

bool CheckReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.passed; });
}

CheckReport run_check(const Instance& instance, std::uint64_t seed, int spot_checks) {
  CheckReport report;
  const auto& space = instance.space();
  const auto& rb = instance.rulebook();
  const auto& ids = instance.trajectories();
  const std::size_t n = instance.trajectory_count();

  double total = 0.0;
  for (double p : space.probs()) total += p;
  report.items.push_back({"probabilities", approx_equal(total, 1.0),
                          std::to_string(space.size()) + " scenarios, sum " +
                              format_number(total)});

  {
    const Preorder& p = rb.priority();
    const auto pairs = p.relation_pairs();
    const bool closed = Preorder::build(p.elements(), pairs) == p;
    report.items.push_back({"priority closure", closed,
                            std::to_string(pairs.size()) + " related pairs over " +
                                std::to_string(p.size()) + " rules"});
  }

  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> value(0.0, 100.0);
    std::bernoulli_distribution bump(0.5);
    bool ok = true;
    std::vector<std::string> notes;
    for (std::size_t r = 0; r < rb.rule_count(); ++r) {
      const RiskMeasure& m = instance.risk(r).measure;
      if (m.kind() != MeasureKind::Custom) continue;
      int violations = 0;
      for (int i = 0; i < spot_checks; ++i) {
        std::vector<double> lo(space.size()), hi(space.size());
        for (std::size_t w = 0; w < space.size(); ++w) {
          lo[w] = value(rng);
          hi[w] = lo[w] + (bump(rng) ? value(rng) : 0.0);
        }
        if (definitely_greater(assess(m, space, RandomCost(space, lo)),
                               assess(m, space, RandomCost(space, hi)))) {
          ++violations;
        }
      }
      ok = ok && violations == 0;
      notes.push_back(rb.rules()[r].id + ": custom '" + m.name() + "' unverified, " +
                      std::to_string(spot_checks) + " dominated pairs spot-checked, " +
                      std::to_string(violations) + " violations");
    }
    report.items.push_back({"measure monotonicity", ok,
                            notes.empty() ? "all measures are built-in" : join(notes, "; ")});
  }

  const Evaluation eval(instance);
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) le[a][b] = eval.no_riskier(a, b);
  }

  {
    bool ok = true;
    for (std::size_t a = 0; a < n; ++a) ok = ok && eval.compare_trajectories(a, a) == Verdict::Equal;
    report.items.push_back({"trajectory preorder reflexive", ok, ""});
  }
  {
    std::string broken;
    for (std::size_t a = 0; a < n && broken.empty(); ++a) {
      for (std::size_t b = 0; b < n && broken.empty(); ++b) {
        for (std::size_t c = 0; c < n && broken.empty(); ++c) {
          if (le[a][b] && le[b][c] && !le[a][c]) {
            broken = ids[a] + ", " + ids[b] + ", " + ids[c];
          }
        }
      }
    }
    report.items.push_back({"trajectory preorder transitive", broken.empty(),
                            broken.empty() ? "" : "fails on " + broken});
  }

  const auto optimal = eval.optimal_indices();
  std::vector<std::size_t> safe;
  for (std::size_t t = 0; t < n; ++t) {
    if (eval.is_safe(t)) safe.push_back(t);
  }
  auto names = [&ids](const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    for (std::size_t i : idx) out.push_back(ids[i]);
    return "{" + join(out) + "}";
  };
  {
    bool ok = std::all_of(safe.begin(), safe.end(), [&](std::size_t t) {
      return std::find(optimal.begin(), optimal.end(), t) != optimal.end();
    });
    report.items.push_back({"safe trajectories are optimal", ok,
                            "safe " + names(safe) + ", optimal " + names(optimal)});
  }
  {
    bool ok = true;
    for (std::size_t t : safe) {
      for (std::size_t o = 0; o < n; ++o) {
        if (le[o][t] && !eval.is_safe(o)) ok = false;
      }
    }
    report.items.push_back({"no riskier than safe implies safe", ok, ""});
  }
  {
    const bool ok = safe.empty() || safe == optimal;
    report.items.push_back({"safe set equals optimal set when nonempty", ok,
                            safe.empty() ? "no safe trajectory" : ""});
  }
  {
    const Preorder traj = eval.trajectory_preorder();
    const auto minimal = traj.minimal_elements(ids);
    std::vector<std::string> opt;
    for (std::size_t t : optimal) opt.push_back(ids[t]);
    report.items.push_back({"optimal set equals minimal elements", minimal == opt, ""});
  }
  {
    int triples = 0;
    std::string missing;
    for (std::size_t star : optimal) {
      for (std::size_t other = 0; other < n; ++other) {
        for (std::size_t r = 0; r < rb.rule_count(); ++r) {
          if (!definitely_less(eval.risk_aware_violation(r, other),
                               eval.risk_aware_violation(r, star))) {
            continue;
          }
          ++triples;
          if (eval.all_tradeoff_witnesses(star, other, r).empty() && missing.empty()) {
            missing = "(" + ids[star] + ", " + ids[other] + ", " + rb.rules()[r].id + ")";
          }
        }
      }
    }
    report.items.push_back({"tradeoff witnesses", missing.empty(),
                            std::to_string(triples) + " triples" +
                                (missing.empty() ? "" : ", none for " + missing)});
  }
  return report;
}

std::string render_text(const CheckReport& report) {
  std::ostringstream os;
  for (const auto& item : report.items) {
    os << (item.passed ? "[ok]   " : "[FAIL] ") << item.name;
    if (!item.detail.empty()) os << ": " << item.detail;
    os << "\n";
  }
  os << (report.passed() ? "check passed\n" : "check FAILED\n");
  return os.str();
}

json to_json(const CheckReport& report) {
  json out = json::object();
  out["passed"] = report.passed();
  json items = json::array();
  for (const auto& i : report.items) {
    items.push_back({{"name", i.name}, {"passed", i.passed}, {"detail", i.detail}});
  }
  out["items"] = std::move(items);
  return out;
}

}  // namespace rulebook
