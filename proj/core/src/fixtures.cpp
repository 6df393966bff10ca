#include "infotop/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infotop/convergence.hpp"
#include "infotop/errors.hpp"
#include "infotop/metrics.hpp"

namespace infotop {

namespace {

SpacePtr dedup_real_axis(const std::string& name, std::vector<double> coords) {
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  return make_real_axis(name, std::move(coords));
}

int coord_index(const FiniteMetricSpace& axis, double x) {
  for (int i = 0; i < axis.size(); ++i)
    if (axis.point(i).coords[0] == x) return i;
  throw ValidationError("fixture lookup: coordinate not on axis '" +
                        axis.name() + "'");
}

// Observation sits one unit left or right of a center h(b) = b(1 + eps); the
// third coordinate is the center itself. eps = 0 gives the limit measure.
DiscreteMeasure sgn_member(double eps) {
  const std::vector<double> bvals{-1.0, 1.0};
  auto h = [&](double b) { return b * (1.0 + eps); };

  SpacePtr B = make_discrete_axis("B", {"-1", "1"});
  std::vector<double> acoords, ccoords;
  for (double b : bvals) {
    acoords.push_back(h(b) + 1.0);
    acoords.push_back(h(b) - 1.0);
    ccoords.push_back(h(b));
  }
  SpacePtr A = dedup_real_axis("A", acoords);
  SpacePtr C = dedup_real_axis("C", ccoords);

  DiscreteMeasure margB(ProductSpace({B}), {{{0}, 0.5}, {{1}, 0.5}});

  Kernel to_a{{B}, {A}, {}};
  Kernel to_c{{B}, {C}, {}};
  for (int i = 0; i < 2; ++i) {
    const double b = bvals[i];
    to_a.rows.emplace(
        std::vector<int>{i},
        DiscreteMeasure(ProductSpace({A}),
                        {{{coord_index(*A, h(b) + 1.0)}, 0.5},
                         {{coord_index(*A, h(b) - 1.0)}, 0.5}}));
    to_c.rows.emplace(
        std::vector<int>{i},
        DiscreteMeasure(ProductSpace({C}), {{{coord_index(*C, h(b))}, 1.0}}));
  }

  const DiscreteMeasure ba = compose(margB, to_a);
  const DiscreteMeasure bac = compose(ba, to_c);
  return permute_axes(bac, {"A", "B", "C"});
}

}  // namespace

std::pair<DiscreteMeasure, DiscreteMeasure> fixture_sgn(int n) {
  if (n < 1) throw ValidationError("fixture sgn needs n >= 1");
  return {sgn_member(1.0 / n), sgn_member(0.0)};
}

DiscretePairFixture fixture_discrete_pair(int n) {
  if (n < 1) throw ValidationError("fixture discrete-pair needs n >= 1");
  SpacePtr B = make_discrete_axis("B", {"b0", "b1"});
  SpacePtr C = make_discrete_axis("C", {"c0", "c1"});

  SpacePtr An = dedup_real_axis("A", {0.0, 1.0 / n});
  const int lo = coord_index(*An, 0.0), hi = coord_index(*An, 1.0 / n);
  DiscreteMeasure mu_n(ProductSpace({An, B}), {{{hi, 0}, 0.5}, {{lo, 1}, 0.5}});
  DiscreteMeasure nu_n(ProductSpace({An, C}), {{{hi, 0}, 0.5}, {{lo, 1}, 0.5}});

  SpacePtr A0 = make_real_axis("A", {0.0});
  DiscreteMeasure mu(ProductSpace({A0, B}), {{{0, 0}, 0.5}, {{0, 1}, 0.5}});
  DiscreteMeasure nu(ProductSpace({A0, C}), {{{0, 0}, 0.5}, {{0, 1}, 0.5}});
  return {std::move(mu_n), std::move(nu_n), std::move(mu), std::move(nu)};
}

std::pair<DiscreteMeasure, DiscreteMeasure> fixture_rademacher(int n, int K) {
  if (n < 1 || K < 1 || K > 20)
    throw ValidationError("fixture rademacher needs 1 <= n and 1 <= K <= 20");
  if (n > K)
    throw ValidationError(
        "fixture rademacher: pattern at scale " + std::to_string(n) +
        " is not exact on a 2^-" + std::to_string(K) + " grid");

  const int N = 1 << K;
  std::vector<double> coords(N);
  for (int k = 0; k < N; ++k) coords[k] = std::ldexp(double(k), -K);
  SpacePtr X = make_real_axis("X", std::move(coords));
  SpacePtr Y = make_discrete_axis("Y", {"1", "2"});
  const ProductSpace space({X, Y});

  const double w = std::ldexp(1.0, -K);
  std::map<std::vector<int>, double> wn, wl;
  for (int k = 0; k < N; ++k) {
    const bool even_cell = ((k >> (K - n)) & 1) == 0;
    wn[{k, even_cell ? 1 : 0}] = w;
    wl[{k, 0}] = 0.5 * w;
    wl[{k, 1}] = 0.5 * w;
  }
  return {DiscreteMeasure(space, std::move(wn)),
          DiscreteMeasure(space, std::move(wl))};
}

HellwigFixture fixture_hellwig() {
  SpacePtr A = make_discrete_axis("A", {"a1", "a2"});
  SpacePtr B = make_discrete_axis("B", {"b1", "b2"});
  SpacePtr C = make_discrete_axis("C", {"c1", "c2"});

  DiscreteMeasure nu(ProductSpace({A, B}), {{{0, 0}, 0.5}, {{1, 1}, 0.5}});
  DiscreteMeasure mu(ProductSpace({A, C}), {{{0, 0}, 0.5}, {{1, 1}, 0.5}});

  const LiftedMeasure lifted = psi(nu);
  LiftedMeasure glued = phi1_glue(lifted, mu);

  const DiscreteMeasure delta_b1(ProductSpace({B}), {{{0}, 1.0}});
  const DiscreteMeasure delta_b2(ProductSpace({B}), {{{1}, 1.0}});

  // Mass the lifted measure puts on "inner = point mass at b1", times the
  // mass mu puts on c2, over the full-space base mass (which is 1).
  const double psi_mass_b1 =
      integrate_lifted(InnerIntegrand{{{delta_b1, 1.0}, {delta_b2, 0.0}}, 1e-12},
                       lifted);
  const double mu_c2 = marginal(mu, {"C"}).mass_at({1});
  const double lhs = psi_mass_b1 * mu_c2;

  double rhs = 0.0;
  for (const auto& atom : glued.atoms())
    if (atom.extra[0] == 1 && max_atom_gap(atom.inner, delta_b1) <= 1e-12)
      rhs += atom.weight;

  return {std::move(nu), std::move(mu), std::move(glued), lhs, rhs};
}

std::pair<DiscreteMeasure, DiscreteMeasure> fixture_jordan(int n, int cap) {
  if (n < 1) throw ValidationError("fixture jordan needs n >= 1");
  if (n > cap)
    throw ValidationError("fixture jordan: n exceeds the axis cap " +
                          std::to_string(cap));

  std::vector<double> coords{2.0};
  for (int k = 1; k <= cap; ++k) coords.push_back(2.0 + 1.0 / k);
  SpacePtr X = dedup_real_axis("X", std::move(coords));
  SpacePtr Y = make_real_axis("Y", {1.0, 3.0});
  const ProductSpace space({X, Y});

  const int at2 = coord_index(*X, 2.0);
  const int atn = coord_index(*X, 2.0 + 1.0 / n);
  DiscreteMeasure nu_n(space, {{{at2, 0}, 0.5}, {{atn, 1}, 0.5}});
  DiscreteMeasure nu(space, {{{at2, 0}, 0.5}, {{at2, 1}, 0.5}});
  return {std::move(nu_n), std::move(nu)};
}

namespace {

// Dyadic rectangle family on the rademacher grid: every interval of scale
// coarser than n, crossed with each label subset.
SetFamily dyadic_family(const ProductSpace& space, int max_scale) {
  SetFamily family;
  const auto& X = space.axis(0);
  const int N = X.size();
  for (int s = 0; s < max_scale; ++s) {
    const int len = N >> s;
    for (int j = 0; j < (1 << s); ++j) {
      std::vector<std::string> ids;
      for (int k = j * len; k < (j + 1) * len; ++k) ids.push_back(X.point(k).id);
      for (const char* label : {"", "1", "2"}) {
        SetDesc d;
        d.name = "dyad_s" + std::to_string(s) + "_j" + std::to_string(j) +
                 (label[0] ? std::string("_y") + label : "");
        SetRect rect;
        rect.per_axis["X"] = ids;
        if (label[0]) rect.per_axis["Y"] = {label};
        d.rects.push_back(std::move(rect));
        family.push_back(std::move(d));
      }
    }
  }
  return family;
}

struct Battery {
  FixtureRecord record;

  void exact(const std::string& name, double expected, double actual,
             const std::string& origin) {
    record.checks.push_back({name, expected, actual, 0.0, false, origin,
                             std::abs(actual - expected) <= 0.0});
  }
  void close(const std::string& name, double expected, double actual,
             double tol, const std::string& origin) {
    record.checks.push_back({name, expected, actual, tol, false, origin,
                             std::abs(actual - expected) <= tol});
  }
  void bound(const std::string& name, double limit, double actual,
             const std::string& origin) {
    record.checks.push_back(
        {name, limit, actual, 0.0, true, origin, actual <= limit});
  }
};

FixtureRecord verify_sgn() {
  Battery b;
  b.record.name = "sgn";
  const DiscreteMeasure mu0 = fixture_sgn(1).second;
  b.close("cond-indep-gap-limit", 1.0, cond_indep_gap(mu0, "A", "B", "C"),
          1e-12, "closed-form");
  for (int n : {1, 2, 3, 10, 100}) {
    const auto [mu_n, limit] = fixture_sgn(n);
    const std::string at = "@" + std::to_string(n);
    b.exact("cond-indep-gap" + at, 0.0, cond_indep_gap(mu_n, "A", "B", "C"),
            "definition");
    b.close("w1-trunc-to-limit" + at, 2.0 / n,
            wasserstein1(mu_n, limit, {}).first, 1e-9, "closed-form");
    if (n >= 3)
      b.close("info-ab" + at, 0.25 + 1.0 / n,
              info_distance(marginal(mu_n, {"A", "B"}),
                            marginal(limit, {"A", "B"})),
              1e-9, "closed-form");
  }
  return b.record;
}

FixtureRecord verify_discrete_pair() {
  Battery b;
  b.record.name = "discrete-pair";
  CostTable f;
  for (const char* a : {"a0", "a1"})
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        f[{a, "b" + std::to_string(i), "c" + std::to_string(j)}] =
            i == j ? 1.0 : 0.0;

  for (int n : {1, 4, 25}) {
    const DiscretePairFixture fx = fixture_discrete_pair(n);
    const std::string at = "@" + std::to_string(n);
    b.exact("consistency-gap" + at, 0.0,
            is_consistent(fx.mu_n, fx.nu_n, {"A"}).second, "definition");

    const DiscreteMeasure joint = phi(fx.mu_n, fx.nu_n);
    double dev = std::abs(joint.mass_at({coord_index(joint.space().axis(0),
                                                     1.0 / n),
                                         0, 0}) -
                          0.5);
    dev = std::max(dev, std::abs(joint.mass_at({coord_index(
                                                    joint.space().axis(0), 0.0),
                                                1, 1}) -
                                 0.5));
    b.exact("phi-two-atoms" + at, 0.0, dev, "closed-form");
    b.close("expected-cost" + at, 1.0, expected_cost(f, fx.mu_n, fx.nu_n),
            1e-12, "closed-form");
  }

  const DiscretePairFixture fx = fixture_discrete_pair(1);
  const DiscreteMeasure lim = phi(fx.mu, fx.nu);
  double dev = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      dev = std::max(dev, std::abs(lim.mass_at({0, i, j}) - 0.25));
  b.exact("phi-limit-quarters", 0.0, dev, "closed-form");
  b.close("expected-cost-limit", 0.5, expected_cost(f, fx.mu, fx.nu), 1e-12,
          "closed-form");
  return b.record;
}

FixtureRecord verify_rademacher() {
  Battery b;
  b.record.name = "rademacher";
  const int K = 12;
  const SetFamily dflt =
      default_set_family(fixture_rademacher(1, K).second.space());
  for (int n : {1, 3, 8}) {
    const auto [mu_n, mu] = fixture_rademacher(n, K);
    const std::string at = "@" + std::to_string(n);
    b.exact("tv" + at, 1.0, tv_distance(mu_n, mu), "closed-form");
    b.close("info" + at, 0.5, info_distance(mu_n, mu), 1e-9, "closed-form");
    b.exact("setwise-coarse" + at, 0.0,
            setwise_gap(mu_n, mu, dyadic_family(mu.space(), n)), "closed-form");
    b.bound("setwise-default" + at, std::ldexp(1.0, -n + 1),
            setwise_gap(mu_n, mu, dflt), "closed-form");
  }
  return b.record;
}

FixtureRecord verify_hellwig() {
  Battery b;
  b.record.name = "hellwig";
  const HellwigFixture fx = fixture_hellwig();
  b.exact("lhs", 0.25, fx.lhs, "closed-form");
  b.exact("rhs", 0.0, fx.rhs, "closed-form");

  const DiscreteMeasure delta_b1(ProductSpace({fx.nu.space().axis_ptr(1)}),
                                 {{{0}, 1.0}});
  const DiscreteMeasure delta_b2(ProductSpace({fx.nu.space().axis_ptr(1)}),
                                 {{{1}, 1.0}});
  double diag = 0.0, off = 0.0;
  for (const auto& atom : fx.glued.atoms()) {
    const bool is_b1 = max_atom_gap(atom.inner, delta_b1) <= 1e-12;
    const bool is_b2 = max_atom_gap(atom.inner, delta_b2) <= 1e-12;
    const bool diag_atom = (atom.base == 0 && is_b1 && atom.extra[0] == 0) ||
                           (atom.base == 1 && is_b2 && atom.extra[0] == 1);
    (diag_atom ? diag : off) += atom.weight;
  }
  b.exact("glued-diagonal-mass", 1.0, diag, "closed-form");
  b.exact("glued-off-diagonal-mass", 0.0, off, "closed-form");
  return b.record;
}

FixtureRecord verify_jordan() {
  Battery b;
  b.record.name = "jordan";
  const int cap = 128;

  const auto [nu_1, nu] = fixture_jordan(1, cap);
  const auto& yspace = nu.space().axis_ptr(1);
  const DiscreteMeasure d1(ProductSpace({yspace}), {{{0}, 1.0}});
  const DiscreteMeasure d3(ProductSpace({yspace}), {{{1}, 1.0}});
  const DiscreteMeasure half(ProductSpace({yspace}),
                             {{{0}, 0.5}, {{1}, 0.5}});
  const InnerIntegrand h{{{d1, 0.0}, {d3, 0.0}, {half, 1.0}}, 1e-12};
  b.exact("h-integral-limit", 1.0, integrate_lifted(h, psi(nu)), "closed-form");

  for (int n : {1, 5, 50}) {
    const auto [nu_n, lim] = fixture_jordan(n, cap);
    const std::string at = "@" + std::to_string(n);
    b.exact("h-integral" + at, 0.0, integrate_lifted(h, psi(nu_n)),
            "closed-form");
    b.close("w1-trunc" + at, 0.5 / n, wasserstein1(nu_n, lim, {}).first, 1e-9,
            "recomputed");
    b.close("info" + at, 0.5 + 0.5 / n, info_distance(nu_n, lim), 1e-9,
            "closed-form");
  }

  MeasureSequence seq{{1, 2, 5, 10, 50},
                      [cap](int k) { return fixture_jordan(k, cap).first; },
                      nu};
  const KernelReport rep = kernel_criterion(seq);
  b.exact("kernel-verdict-violated", 1.0,
          rep.verdict == CriterionVerdict::Violated ? 1.0 : 0.0, "definition");
  double dev = rep.traces.empty() ? 2.0 : 0.0;
  for (const auto& tr : rep.traces)
    for (const auto& [idx, d] : tr.trace) dev = std::max(dev, std::abs(d - 0.5));
  b.close("kernel-trace-constant-half", 0.0, dev, 1e-12, "closed-form");
  return b.record;
}

}  // namespace

FixtureRecord verify_fixture(const std::string& name) {
  if (name == "sgn") return verify_sgn();
  if (name == "discrete-pair") return verify_discrete_pair();
  if (name == "rademacher") return verify_rademacher();
  if (name == "hellwig") return verify_hellwig();
  if (name == "jordan") return verify_jordan();
  throw ValidationError("unknown fixture '" + name + "'");
}

}  // namespace infotop
