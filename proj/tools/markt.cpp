// markt: command-line front end for the checker library.
//
//   markt <check> <model1> <model2> [--suite file|pattern:"..."] [options]
//   markt prec-rec <test1> <test2>
//   markt info <model>
//
// Exit status: 0 relation holds, 1 it does not, 2 usage or input error.

#include "markt/error.hpp"
#include "markt/interaction.hpp"
#include "markt/lts.hpp"
#include "markt/parser.hpp"
#include "markt/report.hpp"
#include "markt/similarity.hpp"
#include "markt/suite.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace markt;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  std::string command;
  std::vector<std::string> files;
  std::vector<std::string> suites;
  std::string alphabet;
  std::string eps;
  std::string eps_vec;
  std::string nu;
  std::string prec;
  std::string rec;
  std::optional<std::size_t> max_len;
  std::size_t cap = kDefaultStateCap;
  std::string format = "text";
  bool two_sided = false;
  std::string fail_sets = "maximal";
  std::string mode = "slow";
  bool serial = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Prefixes parse errors with the file they came from.
template <class F>
auto in_file(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw Usage(path + ":" + e.what());
  } catch (const ValidationError& e) {
    throw Usage(path + ": " + e.what());
  }
}

Rational rational_arg(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw Usage(std::string("--") + what + ": " + e.what());
  }
}

std::optional<Rational> opt_rational(const std::string& text, const char* what) {
  if (text.empty()) return std::nullopt;
  return rational_arg(text, what);
}

std::optional<EpsilonSpec> epsilon_arg(const Args& a) {
  if (!a.eps.empty() && !a.eps_vec.empty()) throw Usage("--eps and --eps-vec are mutually exclusive");
  if (!a.eps.empty()) return EpsilonSpec(rational_arg(a.eps, "eps"));
  if (!a.eps_vec.empty()) {
    try {
      return EpsilonSpec(parse_rational_list(a.eps_vec));
    } catch (const std::invalid_argument& e) {
      throw Usage(std::string("--eps-vec: ") + e.what());
    }
  }
  return std::nullopt;
}

void check_floor(const std::optional<Rational>& v, const char* what) {
  if (v && (*v < 0 || *v > 1)) throw Usage(std::string("--") + what + " must lie in [0,1]");
}

std::set<ActionName> visible_actions(const Lts& lts) {
  std::set<ActionName> out;
  for (const auto& e : lts.edges())
    if (e.action.visible()) out.insert(e.action);
  return out;
}

int emit(const Args& a, const Report& r) {
  if (a.format == "json")
    std::cout << to_json(r).dump(2) << '\n';
  else
    std::cout << render_text(r);
  return r.verdict.holds ? 0 : 1;
}

int run_prec_rec(const Args& a) {
  if (a.files.size() != 2) throw Usage("prec-rec expects two test files");
  auto t1 = in_file(a.files[0], [&] { return parse_test(read_file(a.files[0])); });
  auto t2 = in_file(a.files[1], [&] { return parse_test(read_file(a.files[1])); });
  Rational p = precision(t1, t2);
  Rational r = recall(t1, t2);
  if (a.format == "json") {
    nlohmann::json j{{"precision", to_fraction_string(p)}, {"recall", to_fraction_string(r)}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "precision " << to_string(p) << "\nrecall " << to_string(r) << '\n';
  }
  return 0;
}

int run_info(const Args& a) {
  if (a.files.size() != 1) throw Usage("info expects one model file");
  auto model = in_file(a.files[0], [&] { return parse_model(read_file(a.files[0])); });
  Lts lts = derive_lts(model.main, model.env, a.cap);
  Ctmc ctmc = to_ctmc(lts);
  if (a.format == "json") {
    nlohmann::json j;
    j["states"] = nlohmann::json::array();
    for (StateId s = 0; s < lts.num_states(); ++s)
      j["states"].push_back({{"id", s}, {"term", lts.label(s)}, {"rate_total", to_fraction_string(rate_total(lts, s))}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : lts.edges())
      j["edges"].push_back({{"source", e.source},
                            {"action", e.action.str()},
                            {"rate", to_fraction_string(e.rate)},
                            {"derivation", e.derivation},
                            {"target", e.target}});
    j["ctmc"] = nlohmann::json::array();
    for (const auto& t : ctmc.transitions)
      j["ctmc"].push_back({{"source", t.source}, {"target", t.target}, {"rate", to_fraction_string(t.rate)}});
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << lts.num_states() << " states, " << lts.edges().size() << " transitions\n";
  for (StateId s = 0; s < lts.num_states(); ++s) {
    std::cout << "  [" << s << "] " << lts.label(s) << "  (total rate " << to_string(rate_total(lts, s)) << ")\n";
    for (EdgeId id : lts.outgoing(s)) {
      const auto& e = lts.edge(id);
      std::cout << "      -" << e.action.str() << "," << to_string(e.rate) << "-> [" << e.target << "]  "
                << e.derivation << '\n';
    }
  }
  return 0;
}

int run_check(const Args& a) {
  if (a.files.size() != 2) throw Usage(a.command + " expects two model files");
  if (a.suites.empty()) throw Usage("--suite is required");
  auto start = std::chrono::steady_clock::now();

  Report report;
  report.relation = a.command;
  std::vector<Lts> lts;
  for (const auto& f : a.files) {
    std::string text = read_file(f);
    report.inputs.push_back({f, digest_of(text)});
    auto model = in_file(f, [&] { return parse_model(text); });
    lts.push_back(derive_lts(model.main, model.env, a.cap));
  }

  std::set<ActionName> alphabet;
  if (!a.alphabet.empty()) {
    alphabet = in_file("--alphabet", [&] { return parse_alphabet(a.alphabet); });
  } else {
    alphabet = visible_actions(lts[0]);
    for (const auto& x : visible_actions(lts[1])) alphabet.insert(x);
  }
  FailSets fs = a.fail_sets == "minimal" ? FailSets::minimal : FailSets::maximal;
  Suite suite;
  for (const auto& src : a.suites) {
    Suite part;
    if (src.rfind("pattern:", 0) == 0) {
      std::string text = src.substr(8);
      report.inputs.push_back({src, digest_of(text)});
      part = in_file(src, [&] { return gen_suite(parse_pattern(text, alphabet), fs); });
    } else {
      std::string text = read_file(src);
      report.inputs.push_back({src, digest_of(text)});
      part = in_file(src, [&] { return parse_suite(text, alphabet, fs); });
    }
    for (auto& t : part) suite.push_back(std::move(t));
  }

  auto eps = epsilon_arg(a);
  auto nu = opt_rational(a.nu, "nu");
  auto prec = opt_rational(a.prec, "prec");
  auto rec = opt_rational(a.rec, "rec");
  check_floor(prec, "prec");
  check_floor(rec, "rec");

  CheckOptions options;
  options.cap = a.cap;
  options.max_len = a.max_len;
  options.execution = a.serial ? Execution::serial : Execution::parallel;
  Comparison cmp(std::move(lts[0]), std::move(lts[1]), std::move(suite), options);

  auto& params = report.params;
  params.max_len = a.max_len;
  const std::string& c = a.command;
  EpsilonSpec e = eps.value_or(EpsilonSpec{});
  if (c == "equiv") {
    report.verdict = check_mt_equiv(cmp);
  } else if (c == "slow" || c == "slow-simple" || c == "fast") {
    params.epsilon = e;
    report.verdict = c == "slow"          ? check_slow(cmp, e)
                     : c == "slow-simple" ? check_slow_simple(cmp, e)
                                          : check_fast(cmp, e);
  } else if (c == "temporal" || c == "temporal-pm") {
    params.epsilon = e;
    params.two_sided = c == "temporal-pm" || a.two_sided;
    report.verdict = check_temporal(cmp, e, params.two_sided);
  } else if (c == "prob") {
    params.nu = nu.value_or(0);
    report.verdict = check_prob(cmp, *params.nu);
  } else if (c == "behavioral" || c == "behavioral-timed") {
    params.precision = prec.value_or(1);
    params.recall = rec.value_or(1);
    report.verdict = check_behavioral(cmp, *params.precision, *params.recall, c == "behavioral-timed");
  } else if (c == "unified") {
    SimilarityParams sp{prec.value_or(1), rec.value_or(1), e, nu.value_or(0)};
    params.precision = sp.precision;
    params.recall = sp.recall;
    params.epsilon = e;
    params.nu = sp.nu;
    params.two_sided = true;
    report.verdict = check_unified(cmp, sp);
  } else if (c == "min-epsilon") {
    static const std::map<std::string, TimeRelation> modes{{"slow", TimeRelation::slow},
                                                           {"slow-simple", TimeRelation::slow_simple},
                                                           {"fast", TimeRelation::fast},
                                                           {"temporal", TimeRelation::temporal},
                                                           {"temporal-pm", TimeRelation::temporal_pm}};
    params.mode = a.mode;
    auto found = min_epsilon(cmp, modes.at(a.mode));
    report.verdict = found ? check_time_relation(cmp, modes.at(a.mode), *found)
                           : SimilarityVerdict{false, {}, {}, std::nullopt, std::nullopt, cmp.warnings()};
    report.verdict.minimal_epsilon = found;
    if (!found) report.verdict.warnings.push_back("no candidate tolerance makes the relation hold");
  }

  report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return emit(a, report);
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{"Markovian testing equivalence and similarity checker"};
  app.add_option("command", a.command, "Check to run")
      ->required()
      ->check(CLI::IsMember({"equiv", "slow", "slow-simple", "fast", "temporal", "temporal-pm", "prob",
                             "behavioral", "behavioral-timed", "unified", "min-epsilon", "prec-rec", "info"}));
  app.add_option("files", a.files, "Model files (test files for prec-rec)")->required();
  app.add_option("--suite", a.suites, "Suite file or pattern:\"g.a.*\" (repeatable)");
  app.add_option("--alphabet", a.alphabet, "Alphabet for patterns, e.g. g,a,b (default: visible actions of the models)");
  app.add_option("--eps", a.eps, "Time tolerance");
  app.add_option("--eps-vec", a.eps_vec, "Per-step time tolerances, e.g. 1/2,1/4");
  app.add_option("--nu", a.nu, "Probability threshold");
  app.add_option("--prec", a.prec, "Precision floor");
  app.add_option("--rec", a.rec, "Recall floor");
  app.add_option("--max-len", a.max_len, "Longest computation explored");
  app.add_option("--cap", a.cap, "State exploration cap");
  app.add_option("--format", a.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--two-sided", a.two_sided, "Two-sided band for temporal");
  app.add_option("--fail-sets", a.fail_sets, "Failure sets of generated tests")
      ->check(CLI::IsMember({"maximal", "minimal"}));
  app.add_option("--mode", a.mode, "Relation for min-epsilon")
      ->check(CLI::IsMember({"slow", "slow-simple", "fast", "temporal", "temporal-pm"}));
  app.add_flag("--serial", a.serial, "Run per-test work on one thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int status = app.exit(e);
    return status == 0 ? 0 : 2;
  }

  try {
    if (a.command == "prec-rec") return run_prec_rec(a);
    if (a.command == "info") return run_info(a);
    return run_check(a);
  } catch (const Usage& e) {
    std::cerr << "markt: " << e.what() << '\n';
  } catch (const ParseError& e) {
    std::cerr << "markt: " << e.what() << '\n';
  } catch (const ValidationError& e) {
    std::cerr << "markt: " << e.what() << '\n';
  } catch (const CapExceeded& e) {
    std::cerr << "markt: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "markt: " << e.what() << '\n';
  }
  return 2;
}
