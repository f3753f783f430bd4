#include "markt/report.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

namespace markt {

using nlohmann::json;

std::string digest_of(std::string_view contents) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : contents) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

bool operator==(const ReportParams& a, const ReportParams& b) {
  auto eps_eq = [](const std::optional<EpsilonSpec>& x, const std::optional<EpsilonSpec>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->is_scalar() == y->is_scalar() && x->values() == y->values());
  };
  return eps_eq(a.epsilon, b.epsilon) && a.nu == b.nu && a.precision == b.precision && a.recall == b.recall &&
         a.max_len == b.max_len && a.mode == b.mode && a.two_sided == b.two_sided;
}

namespace {

json q(const Rational& r) { return to_fraction_string(r); }
Rational unq(const json& j) { return parse_rational(j.get<std::string>(), true); }

json theta_json(const Theta& theta) {
  json a = json::array();
  for (const auto& x : theta) a.push_back(q(x));
  return a;
}

template <class T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

void put_opt(json& j, const char* key, const std::optional<Rational>& v) {
  if (v) j[key] = q(*v);
}

std::optional<Rational> get_rat(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return unq(j.at(key));
}

}  // namespace

json to_json(const Report& r) {
  json j;
  j["tool"] = r.tool;
  j["version"] = r.version;
  j["inputs"] = json::array();
  for (const auto& in : r.inputs) j["inputs"].push_back({{"path", in.path}, {"digest", in.digest}});
  j["relation"] = r.relation;

  json p = json::object();
  if (r.params.epsilon) {
    const auto& e = *r.params.epsilon;
    p["epsilon"] = e.is_scalar() ? q(e.at(0)) : theta_json(e.values());
  }
  put_opt(p, "nu", r.params.nu);
  put_opt(p, "precision", r.params.precision);
  put_opt(p, "recall", r.params.recall);
  put_opt(p, "max_len", r.params.max_len);
  put_opt(p, "mode", r.params.mode);
  p["two_sided"] = r.params.two_sided;
  j["params"] = p;

  const auto& v = r.verdict;
  j["holds"] = v.holds;
  j["witnesses"] = json::array();
  for (const auto& w : v.witnesses) {
    json wj{{"test", w.test},
            {"theta", theta_json(w.theta)},
            {"prob_left", q(w.prob_left)},
            {"prob_right", q(w.prob_right)}};
    wj["matched"] = w.matched ? json(*w.matched) : json(nullptr);
    j["witnesses"].push_back(std::move(wj));
  }
  j["matches"] = json::array();
  for (const auto& [t, tp] : v.matches) j["matches"].push_back({t, tp});
  json mins = json::object();
  put_opt(mins, "epsilon", v.minimal_epsilon);
  put_opt(mins, "nu", v.minimal_nu);
  j["minimal_thresholds"] = mins;
  j["warnings"] = v.warnings;
  j["timing_ms"] = r.timing_ms;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.tool = j.at("tool").get<std::string>();
  r.version = j.at("version").get<std::string>();
  for (const auto& in : j.at("inputs")) r.inputs.push_back({in.at("path"), in.at("digest")});
  r.relation = j.at("relation").get<std::string>();

  const auto& p = j.at("params");
  if (p.contains("epsilon")) {
    const auto& e = p.at("epsilon");
    if (e.is_array()) {
      std::vector<Rational> vals;
      for (const auto& x : e) vals.push_back(unq(x));
      r.params.epsilon = EpsilonSpec(std::move(vals));
    } else {
      r.params.epsilon = EpsilonSpec(unq(e));
    }
  }
  r.params.nu = get_rat(p, "nu");
  r.params.precision = get_rat(p, "precision");
  r.params.recall = get_rat(p, "recall");
  if (p.contains("max_len")) r.params.max_len = p.at("max_len").get<std::size_t>();
  if (p.contains("mode")) r.params.mode = p.at("mode").get<std::string>();
  r.params.two_sided = p.value("two_sided", false);

  auto& v = r.verdict;
  v.holds = j.at("holds").get<bool>();
  for (const auto& wj : j.at("witnesses")) {
    Witness w;
    w.test = wj.at("test").get<std::string>();
    if (!wj.at("matched").is_null()) w.matched = wj.at("matched").get<std::string>();
    for (const auto& x : wj.at("theta")) w.theta.push_back(unq(x));
    w.prob_left = unq(wj.at("prob_left"));
    w.prob_right = unq(wj.at("prob_right"));
    v.witnesses.push_back(std::move(w));
  }
  for (const auto& m : j.at("matches")) v.matches.emplace_back(m.at(0), m.at(1));
  const auto& mins = j.at("minimal_thresholds");
  v.minimal_epsilon = get_rat(mins, "epsilon");
  v.minimal_nu = get_rat(mins, "nu");
  v.warnings = j.at("warnings").get<std::vector<std::string>>();
  r.timing_ms = j.at("timing_ms").get<double>();
  return r;
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  const auto& v = r.verdict;
  out << r.relation << ": " << (v.holds ? "holds" : "does not hold") << '\n';
  if (r.params.epsilon) {
    out << "  epsilon";
    const auto& e = *r.params.epsilon;
    if (e.is_scalar()) {
      out << ' ' << to_string(e.at(0));
    } else {
      for (const auto& x : e.values()) out << ' ' << to_string(x);
    }
    out << '\n';
  }
  if (r.params.nu) out << "  nu " << to_string(*r.params.nu) << '\n';
  if (r.params.precision) out << "  precision floor " << to_string(*r.params.precision) << '\n';
  if (r.params.recall) out << "  recall floor " << to_string(*r.params.recall) << '\n';
  for (const auto& [t, tp] : v.matches) out << "  " << t << " matched by " << tp << '\n';
  for (const auto& w : v.witnesses) {
    out << "  witness " << w.test;
    if (w.matched) out << " vs " << *w.matched;
    out << " theta (";
    for (std::size_t i = 0; i < w.theta.size(); ++i) out << (i ? ", " : "") << to_string(w.theta[i]);
    out << "): " << to_string(w.prob_left) << " vs " << to_string(w.prob_right) << '\n';
  }
  if (v.minimal_epsilon) out << "  minimal epsilon " << to_string(*v.minimal_epsilon) << '\n';
  if (v.minimal_nu) out << "  largest difference " << to_string(*v.minimal_nu) << '\n';
  for (const auto& w : v.warnings) out << "  warning: " << w << '\n';
  return out.str();
}

}  // namespace markt
