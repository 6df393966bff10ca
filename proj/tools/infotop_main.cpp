#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "infotop/convergence.hpp"
#include "infotop/decision.hpp"
#include "infotop/errors.hpp"
#include "infotop/fixtures.hpp"
#include "infotop/json_io.hpp"
#include "infotop/lift.hpp"
#include "infotop/measure.hpp"
#include "infotop/metrics.hpp"

namespace {

using namespace infotop;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << text;
}

// Default consistency tolerance for the joining commands; INFOTOP_TOL
// overrides it process-wide.
double default_tol() {
  const char* s = std::getenv("INFOTOP_TOL");
  if (!s) return 1e-9;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !(v >= 0.0))
    throw ValidationError("INFOTOP_TOL must be a non-negative number");
  return v;
}

GroundMetric ground_from(const std::string& name) {
  GroundMetric g;
  g.mode = name == "raw" ? GroundMode::RawSum : GroundMode::Truncated;
  return g;
}

InnerMetricKind base_from(const std::string& name) {
  return name == "prohorov" ? InnerMetricKind::Prohorov
                            : InnerMetricKind::W1Truncated;
}

std::vector<MetricId> metrics_from(const std::string& list) {
  std::vector<MetricId> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "tv") {
      out.push_back(MetricId::Tv);
    } else if (item == "setwise") {
      out.push_back(MetricId::Setwise);
    } else if (item == "w1") {
      out.push_back(MetricId::W1);
    } else if (item == "prohorov") {
      out.push_back(MetricId::Prohorov);
    } else if (item == "info") {
      out.push_back(MetricId::Info);
    } else {
      throw ValidationError("unknown metric '" + item + "'");
    }
  }
  if (out.empty()) throw ValidationError("--metrics must name at least one metric");
  return out;
}

std::vector<int> range_from(const std::string& text) {
  int lo = 0, hi = 0;
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, colon));
      hi = std::stoi(text.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw ValidationError("--n expects N or LO:HI, got '" + text + "'");
  }
  if (lo < 1 || hi < lo)
    throw ValidationError("--n expects 1 <= LO <= HI, got '" + text + "'");
  if (hi - lo >= 4096)
    throw ValidationError("--n range is limited to 4096 indices");
  std::vector<int> out;
  for (int k = lo; k <= hi; ++k) out.push_back(k);
  return out;
}

struct FixtureSequence {
  MeasureSequence seq;
  std::optional<std::vector<std::string>> info_axes;
};

FixtureSequence fixture_sequence(const std::string& name,
                                 const std::vector<int>& indices, int K,
                                 int cap) {
  if (name == "sgn") {
    return {MeasureSequence{indices,
                            [](int n) { return fixture_sgn(n).first; },
                            fixture_sgn(1).second},
            std::vector<std::string>{"A", "B"}};
  }
  if (name == "discrete-pair") {
    // The joined measures: perfectly correlated at every finite index, the
    // independent coupling in the limit.
    auto fx = fixture_discrete_pair(1);
    return {MeasureSequence{indices,
                            [](int n) {
                              auto f = fixture_discrete_pair(n);
                              return phi(f.mu_n, f.nu_n);
                            },
                            phi(fx.mu, fx.nu)},
            std::nullopt};
  }
  if (name == "rademacher") {
    return {MeasureSequence{indices,
                            [K](int n) { return fixture_rademacher(n, K).first; },
                            fixture_rademacher(1, K).second},
            std::nullopt};
  }
  if (name == "jordan") {
    return {MeasureSequence{indices,
                            [cap](int n) { return fixture_jordan(n, cap).first; },
                            fixture_jordan(1, cap).second},
            std::nullopt};
  }
  throw ValidationError("fixture '" + name + "' has no sequence form");
}

int run_fixture_verify(const std::string& name) {
  const FixtureRecord rec = verify_fixture(name);
  bool all_pass = true;
  for (const auto& c : rec.checks) {
    all_pass = all_pass && c.pass;
    std::cout << (c.pass ? "ok   " : "FAIL ") << rec.name << "/" << c.name
              << " expected" << (c.is_upper_bound ? "<=" : "=")
              << format_scalar(c.expected) << " actual=" << format_scalar(c.actual)
              << " tol=" << format_scalar(c.tol) << " origin=" << c.origin
              << "\n";
  }
  std::cout << (all_pass ? "ok" : "FAIL") << " " << rec.name << ": "
            << rec.checks.size() << " checks\n";
  return all_pass ? 0 : 1;
}

void print_fixture_summary(const std::string& name, int n, int K, int cap) {
  if (name == "sgn") {
    auto [mu_n, mu_0] = fixture_sgn(n);
    std::cout << "cond_indep_gap(mu_n) = "
              << format_scalar(cond_indep_gap(mu_n, "A", "B", "C")) << "\n"
              << "cond_indep_gap(mu_0) = "
              << format_scalar(cond_indep_gap(mu_0, "A", "B", "C")) << "\n"
              << "w1_trunc(mu_n, mu_0) = "
              << format_scalar(wasserstein1(mu_n, mu_0, {}).first) << "\n";
  } else if (name == "discrete-pair") {
    auto fx = fixture_discrete_pair(n);
    std::cout << "phi(mu_n, nu_n) atoms = " << phi(fx.mu_n, fx.nu_n).size()
              << "\n"
              << "phi(mu, nu) atoms = " << phi(fx.mu, fx.nu).size() << "\n";
  } else if (name == "rademacher") {
    auto [mu_n, mu] = fixture_rademacher(n, K);
    std::cout << "tv(mu_n, mu) = " << format_scalar(tv_distance(mu_n, mu))
              << "\n"
              << "setwise_gap(mu_n, mu) = "
              << format_scalar(
                     setwise_gap(mu_n, mu, default_set_family(mu.space())))
              << "\n";
  } else if (name == "hellwig") {
    auto fx = fixture_hellwig();
    std::cout << "lhs = " << format_scalar(fx.lhs) << "\n"
              << "rhs = " << format_scalar(fx.rhs) << "\n";
  } else if (name == "jordan") {
    auto [nu_n, nu] = fixture_jordan(n, cap);
    std::cout << "w1_trunc(nu_n, nu) = "
              << format_scalar(wasserstein1(nu_n, nu, {}).first) << "\n"
              << "info(nu_n, nu) = " << format_scalar(info_distance(nu_n, nu))
              << "\n";
  } else {
    throw ValidationError("unknown fixture '" + name + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"infotop: joining, lifting and comparing finite measures"};
  app.require_subcommand(1);

  // dist
  auto* dist = app.add_subcommand("dist", "Distance between two measures");
  std::string dist_metric = "tv", dist_ground = "trunc", dist_base = "w1";
  std::string dist_sets, dist_left, dist_right;
  dist->add_option("left", dist_left, "Left measure document")->required();
  dist->add_option("right", dist_right, "Right measure document")->required();
  dist->add_option("--metric", dist_metric, "tv|setwise|w1|prohorov|info")
      ->check(CLI::IsMember({"tv", "setwise", "w1", "prohorov", "info"}));
  dist->add_option("--ground", dist_ground, "Ground metric for w1: raw|trunc")
      ->check(CLI::IsMember({"raw", "trunc"}));
  dist->add_option("--base", dist_base, "Base metric for info: w1|prohorov")
      ->check(CLI::IsMember({"w1", "prohorov"}));
  dist->add_option("--sets", dist_sets, "Set family document for setwise");

  // lift
  auto* lift = app.add_subcommand("lift", "Canonical lift of a measure");
  std::string lift_in, lift_out, lift_base = "w1";
  lift->add_option("input", lift_in, "Measure document")->required();
  lift->add_option("-o,--output", lift_out, "Output path (stdout if absent)");
  lift->add_option("--base", lift_base, "Inner metric: w1|prohorov")
      ->check(CLI::IsMember({"w1", "prohorov"}));

  // glue
  auto* glue = app.add_subcommand("glue", "Glue two measures over a shared axis");
  std::string glue_mu, glue_nu, glue_shared, glue_out;
  glue->add_option("mu", glue_mu, "Kernel-side measure document")->required();
  glue->add_option("nu", glue_nu, "Joint-side measure document")->required();
  glue->add_option("--shared", glue_shared, "Shared axis name")->required();
  glue->add_option("-o,--output", glue_out, "Output path (stdout if absent)");

  // phi
  auto* phi_cmd = app.add_subcommand("phi", "Join two measures over their shared axis");
  std::string phi_mu, phi_nu, phi_out;
  phi_cmd->add_option("mu", phi_mu, "Measure over (A, B)")->required();
  phi_cmd->add_option("nu", phi_nu, "Measure over (A, C)")->required();
  phi_cmd->add_option("-o,--output", phi_out, "Output path (stdout if absent)");

  // condind
  auto* condind = app.add_subcommand("condind", "Conditional-independence gap");
  std::string ci_in, ci_given, ci_b, ci_c;
  condind->add_option("input", ci_in, "Measure document")->required();
  condind->add_option("--given", ci_given, "Conditioning axis")->required();
  condind->add_option("--b", ci_b, "First dependent axis")->required();
  condind->add_option("--c", ci_c, "Second dependent axis")->required();

  // converge
  auto* conv = app.add_subcommand("converge", "Distance traces against a limit");
  std::string conv_fixture, conv_seq, conv_n = "1:10", conv_metrics = "w1";
  std::string conv_base = "w1", conv_ground = "trunc", conv_sets;
  int conv_K = 12, conv_cap = 128, conv_window = 5;
  double conv_tol_conv = 1e-2, conv_tol_sep = 1e-1;
  conv->add_option("--fixture", conv_fixture,
                   "Built-in sequence: sgn|discrete-pair|rademacher|jordan");
  conv->add_option("--seq", conv_seq, "Sequence document");
  auto* conv_n_opt =
      conv->add_option("--n", conv_n, "Index range N or LO:HI (default 1:10)");
  conv->add_option("--metrics", conv_metrics,
                   "Comma list of tv,setwise,w1,prohorov,info");
  conv->add_option("--base", conv_base, "Base metric for info: w1|prohorov")
      ->check(CLI::IsMember({"w1", "prohorov"}));
  conv->add_option("--ground", conv_ground, "Ground metric for w1: raw|trunc")
      ->check(CLI::IsMember({"raw", "trunc"}));
  conv->add_option("--sets", conv_sets, "Set family document for setwise");
  conv->add_option("--K", conv_K, "Grid depth for the rademacher fixture");
  conv->add_option("--cap", conv_cap, "Support cap for the jordan fixture");
  conv->add_option("--tol-conv", conv_tol_conv, "Converging-evidence threshold");
  conv->add_option("--tol-sep", conv_tol_sep, "Non-converging threshold");
  conv->add_option("--window", conv_window, "Trailing window length");

  // solve
  auto* solve = app.add_subcommand("solve", "Optimal strategies for a decision problem");
  std::string solve_in, solve_method = "decompose";
  solve->add_option("input", solve_in, "Problem document")->required();
  solve->add_option("--method", solve_method, "decompose|lp")
      ->check(CLI::IsMember({"decompose", "lp"}));

  // fixture
  auto* fix = app.add_subcommand("fixture", "Generate or verify a named fixture");
  std::string fix_first, fix_second, fix_out;
  int fix_n = 1, fix_K = 12, fix_cap = 128;
  fix->add_option("name", fix_first,
                  "Fixture name, or 'verify' followed by a name")
      ->required();
  fix->add_option("arg", fix_second, "Fixture name after 'verify'");
  fix->add_option("--n", fix_n, "Sequence index");
  fix->add_option("--K", fix_K, "Grid depth for rademacher");
  fix->add_option("--cap", fix_cap, "Support cap for jordan");
  fix->add_option("-o,--output", fix_out, "Write the generated objects as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (dist->parsed()) {
      const DiscreteMeasure left = parse_measure(read_file(dist_left));
      const DiscreteMeasure right = parse_measure(read_file(dist_right));
      double value = 0.0;
      if (dist_metric == "tv") {
        value = tv_distance(left, right);
      } else if (dist_metric == "setwise") {
        const SetFamily family = dist_sets.empty()
                                     ? default_set_family(left.space())
                                     : parse_sets(read_file(dist_sets));
        value = setwise_gap(left, right, family);
      } else if (dist_metric == "w1") {
        value = wasserstein1(left, right, ground_from(dist_ground)).first;
      } else if (dist_metric == "prohorov") {
        value = prohorov(left, right);
      } else {
        value = info_distance(left, right, base_from(dist_base));
      }
      std::cout << format_scalar(value) << "\n";
      return 0;
    }

    if (lift->parsed()) {
      const DiscreteMeasure mu = parse_measure(read_file(lift_in));
      write_output(lift_out, serialize_lifted(psi(mu, base_from(lift_base))));
      return 0;
    }

    if (glue->parsed()) {
      const DiscreteMeasure mu = parse_measure(read_file(glue_mu));
      const DiscreteMeasure nu = parse_measure(read_file(glue_nu));
      const DiscreteMeasure glued =
          chi1_glue(mu, nu, {glue_shared}, default_tol());
      write_output(glue_out, serialize_measure(glued));
      return 0;
    }

    if (phi_cmd->parsed()) {
      const DiscreteMeasure mu = parse_measure(read_file(phi_mu));
      const DiscreteMeasure nu = parse_measure(read_file(phi_nu));
      write_output(phi_out, serialize_measure(phi(mu, nu, default_tol())));
      return 0;
    }

    if (condind->parsed()) {
      const DiscreteMeasure mu = parse_measure(read_file(ci_in));
      std::cout << format_scalar(cond_indep_gap(mu, ci_given, ci_b, ci_c))
                << "\n";
      return 0;
    }

    if (conv->parsed()) {
      if (conv_fixture.empty() == conv_seq.empty())
        throw ValidationError("converge needs exactly one of --fixture, --seq");
      AnalyzeParams params;
      params.tol_conv = conv_tol_conv;
      params.tol_sep = conv_tol_sep;
      params.window = conv_window;
      params.ground = ground_from(conv_ground);
      params.info_base = base_from(conv_base);
      if (!conv_sets.empty()) params.family = parse_sets(read_file(conv_sets));
      const std::vector<MetricId> metrics = metrics_from(conv_metrics);
      if (!conv_fixture.empty()) {
        FixtureSequence fs = fixture_sequence(conv_fixture, range_from(conv_n),
                                              conv_K, conv_cap);
        if (!params.info_axes) params.info_axes = fs.info_axes;
        std::cout << serialize_report(analyze(fs.seq, metrics, params));
        return 0;
      }
      SequenceDoc doc = parse_sequence(read_file(conv_seq));
      auto members = std::make_shared<std::map<int, DiscreteMeasure>>();
      for (std::size_t i = 0; i < doc.indices.size(); ++i)
        members->emplace(doc.indices[i], doc.members[i]);
      std::vector<int> indices = doc.indices;
      if (conv_n_opt->count() > 0) {
        const std::vector<int> range = range_from(conv_n);
        std::vector<int> kept;
        for (int k : indices)
          if (k >= range.front() && k <= range.back()) kept.push_back(k);
        if (kept.empty())
          throw ValidationError("--n excludes every sequence index");
        indices = std::move(kept);
      }
      MeasureSequence seq{std::move(indices),
                          [members](int n) {
                            auto it = members->find(n);
                            if (it == members->end())
                              throw ValidationError(
                                  "sequence has no member at index " +
                                  std::to_string(n));
                            return it->second;
                          },
                          doc.limit};
      std::cout << serialize_report(analyze(seq, metrics, params));
      return 0;
    }

    if (solve->parsed()) {
      const DecisionProblem p = parse_problem(read_file(solve_in));
      const SolveMethod method = solve_method == "lp" ? SolveMethod::Lp
                                                      : SolveMethod::Decompose;
      std::cout << serialize_solve(solve_randomized(p, method));
      return 0;
    }

    if (fix->parsed()) {
      if (fix_first == "verify") {
        if (fix_second.empty())
          throw ValidationError("fixture verify needs a fixture name");
        return run_fixture_verify(fix_second);
      }
      if (!fix_second.empty())
        throw ValidationError("unexpected argument '" + fix_second + "'");
      print_fixture_summary(fix_first, fix_n, fix_K, fix_cap);
      if (!fix_out.empty())
        write_output(fix_out,
                     serialize_fixture_bundle(fix_first, fix_n, fix_K, fix_cap));
      return 0;
    }
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what()
              << " (gap = " << format_scalar(e.gap) << ")\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
