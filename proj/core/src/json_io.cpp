#include "infotop/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <utility>

#include "infotop/errors.hpp"
#include "json.hpp"

namespace infotop {
namespace {

using nlohmann::json;

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

void indent_to(int depth, std::string& out) { out.append(2 * depth, ' '); }

// nlohmann's own dump() prints doubles with enough digits to round-trip but
// in a shortest-form notation that varies across values; emitting through one
// fixed %.Ng keeps documents byte-stable across writers.
void dump_value(const json& j, int digits, int depth, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        indent_to(depth + 1, out);
        out += json(it.key()).dump();
        out += ": ";
        dump_value(it.value(), digits, depth + 1, out);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      indent_to(depth, out);
      out += "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        indent_to(depth + 1, out);
        dump_value(j[i], digits, depth + 1, out);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      indent_to(depth, out);
      out += "]";
      return;
    }
    case json::value_t::string:
      out += j.dump();
      return;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      return;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      return;
    case json::value_t::number_float:
      out += format_double(j.get<double>(), digits);
      return;
    default:
      out += "null";
      return;
  }
}

std::string dump_doc(const json& j, int digits) {
  std::string out;
  dump_value(j, digits, 0, out);
  out += "\n";
  return out;
}

json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.what() carries "at line L, column C" from the parser.
    throw ValidationError(what + ": " + e.what());
  }
}

const json& require(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object()) throw ValidationError(ctx + ": expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw ValidationError(ctx + ": missing key '" + key + "'");
  return *it;
}

std::string require_string(const json& v, const std::string& ctx) {
  if (!v.is_string()) throw ValidationError(ctx + ": expected a string");
  return v.get<std::string>();
}

double require_number(const json& v, const std::string& ctx) {
  if (!v.is_number()) throw ValidationError(ctx + ": expected a number");
  return v.get<double>();
}

const json& require_array(const json& v, const std::string& ctx) {
  if (!v.is_array()) throw ValidationError(ctx + ": expected an array");
  return v;
}

json space_to_json(const FiniteMetricSpace& ax) {
  json points = json::array();
  for (const auto& p : ax.points()) {
    json pj;
    pj["id"] = p.id;
    if (!p.coords.empty()) pj["coords"] = p.coords;
    points.push_back(std::move(pj));
  }
  json out;
  out["name"] = ax.name();
  out["points"] = std::move(points);
  switch (ax.metric()) {
    case MetricKind::Euclidean:
      out["metric"] = "euclidean";
      break;
    case MetricKind::Discrete:
      out["metric"] = "discrete";
      break;
    case MetricKind::Matrix:
      out["metric"] = json{{"matrix", ax.matrix()}};
      break;
  }
  return out;
}

SpacePtr space_from_json(const json& j, const std::string& ctx) {
  std::string name = require_string(require(j, "name", ctx), ctx + ".name");
  const json& pts = require_array(require(j, "points", ctx), ctx + ".points");
  if (pts.empty()) throw ValidationError(ctx + ".points: must be non-empty");
  std::vector<SpacePoint> points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string pctx = ctx + ".points[" + std::to_string(i) + "]";
    SpacePoint p;
    p.id = require_string(require(pts[i], "id", pctx), pctx + ".id");
    if (pts[i].contains("coords")) {
      for (const auto& c : require_array(pts[i].at("coords"), pctx + ".coords"))
        p.coords.push_back(require_number(c, pctx + ".coords"));
    }
    points.push_back(std::move(p));
  }
  const json& met = require(j, "metric", ctx);
  MetricKind kind = MetricKind::Discrete;
  std::vector<std::vector<double>> matrix;
  if (met.is_string()) {
    const std::string s = met.get<std::string>();
    if (s == "euclidean") {
      kind = MetricKind::Euclidean;
    } else if (s == "discrete") {
      kind = MetricKind::Discrete;
    } else {
      throw ValidationError(ctx + ".metric: unknown metric '" + s + "'");
    }
  } else if (met.is_object() && met.contains("matrix")) {
    kind = MetricKind::Matrix;
    for (const auto& row : require_array(met.at("matrix"), ctx + ".metric.matrix")) {
      std::vector<double> r;
      for (const auto& c : require_array(row, ctx + ".metric.matrix"))
        r.push_back(require_number(c, ctx + ".metric.matrix"));
      matrix.push_back(std::move(r));
    }
  } else {
    throw ValidationError(ctx +
                          ".metric: expected \"euclidean\", \"discrete\" or "
                          "{\"matrix\": [[...]]}");
  }
  return make_space(std::move(name), std::move(points), kind, std::move(matrix));
}

json atoms_by_id(const std::vector<std::pair<std::vector<std::string>, double>>&
                     rows_in) {
  auto rows = rows_in;
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  json atoms = json::array();
  for (const auto& [ids, w] : rows) {
    json a;
    a["point"] = ids;
    a["weight"] = w;
    atoms.push_back(std::move(a));
  }
  return atoms;
}

json measure_to_obj(const DiscreteMeasure& m) {
  json spaces = json::array();
  for (int k = 0; k < m.space().arity(); ++k)
    spaces.push_back(space_to_json(m.space().axis(k)));
  std::vector<std::pair<std::vector<std::string>, double>> rows;
  rows.reserve(m.size());
  for (int k = 0; k < m.size(); ++k) rows.emplace_back(m.ids_of(k), m.weight(k));
  json out;
  out["spaces"] = std::move(spaces);
  out["atoms"] = atoms_by_id(rows);
  return out;
}

DiscreteMeasure measure_from_obj(const json& j, const std::string& ctx) {
  const json& spaces_j = require_array(require(j, "spaces", ctx), ctx + ".spaces");
  if (spaces_j.empty()) throw ValidationError(ctx + ".spaces: must be non-empty");
  std::vector<SpacePtr> axes;
  for (std::size_t k = 0; k < spaces_j.size(); ++k)
    axes.push_back(
        space_from_json(spaces_j[k], ctx + ".spaces[" + std::to_string(k) + "]"));
  ProductSpace space(std::move(axes));
  const json& atoms_j = require_array(require(j, "atoms", ctx), ctx + ".atoms");
  std::map<std::vector<int>, double> weights;
  const int arity = space.arity();
  for (std::size_t i = 0; i < atoms_j.size(); ++i) {
    const std::string actx = ctx + ".atoms[" + std::to_string(i) + "]";
    const json& pt = require_array(require(atoms_j[i], "point", actx), actx + ".point");
    if (static_cast<int>(pt.size()) != arity)
      throw ValidationError(actx + ".point: expected " + std::to_string(arity) +
                            " ids, got " + std::to_string(pt.size()));
    std::vector<int> t(arity);
    for (int k = 0; k < arity; ++k) {
      const std::string id = require_string(pt[k], actx + ".point");
      t[k] = space.axis(k).index_of(id);
      if (t[k] < 0)
        throw ValidationError(actx + ".point: unknown point '" + id +
                              "' on axis '" + space.axis(k).name() + "'");
    }
    if (weights.count(t))
      throw ValidationError(actx + ": duplicate atom");
    weights[t] = require_number(require(atoms_j[i], "weight", actx), actx + ".weight");
  }
  return DiscreteMeasure(std::move(space), std::move(weights));
}

std::string metric_name(MetricId m) {
  switch (m) {
    case MetricId::Tv: return "tv";
    case MetricId::Setwise: return "setwise";
    case MetricId::W1: return "w1";
    case MetricId::Prohorov: return "prohorov";
    case MetricId::Info: return "info";
  }
  return "?";
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ConvergingEvidence: return "converging-evidence";
    case Verdict::NonConvergingEvidence: return "non-converging-evidence";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string criterion_name(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::Satisfied: return "satisfied";
    case CriterionVerdict::Violated: return "violated";
    case CriterionVerdict::Inapplicable: return "inapplicable";
  }
  return "?";
}

json trace_to_json(const std::vector<std::pair<int, double>>& trace) {
  json out = json::array();
  for (const auto& [i, d] : trace) {
    json e;
    e["index"] = i;
    e["distance"] = d;
    out.push_back(std::move(e));
  }
  return out;
}

json params_to_json(const AnalyzeParams& p) {
  json out;
  out["tol_conv"] = p.tol_conv;
  out["tol_sep"] = p.tol_sep;
  out["window"] = p.window;
  out["slack"] = p.slack;
  out["ground"] = p.ground.mode == GroundMode::RawSum ? "raw" : "truncated";
  out["info_base"] =
      p.info_base == InnerMetricKind::W1Truncated ? "w1" : "prohorov";
  if (p.info_axes) out["info_axes"] = *p.info_axes;
  if (p.family)
    out["family"] = "explicit(" + std::to_string(p.family->size()) + " sets)";
  else
    out["family"] = "default(cap=" + std::to_string(p.family_cap) + ")";
  return out;
}

}  // namespace

std::string serialize_measure(const DiscreteMeasure& m) {
  return dump_doc(measure_to_obj(m), 17);
}

DiscreteMeasure parse_measure(const std::string& text) {
  return measure_from_obj(parse_text(text, "measure document"),
                          "measure document");
}

namespace {

json lifted_to_obj(const LiftedMeasure& m) {
  json out;
  out["base_space"] = space_to_json(*m.base_space());
  out["inner_space"] = space_to_json(*m.inner_space());
  if (!m.extra_spaces().empty()) {
    json ex = json::array();
    for (const auto& s : m.extra_spaces()) ex.push_back(space_to_json(*s));
    out["extra_spaces"] = std::move(ex);
  }
  out["functional"] = m.functional();
  out["inner_metric"] =
      m.inner_metric() == InnerMetricKind::W1Truncated ? "w1" : "prohorov";
  json atoms = json::array();
  for (const auto& a : m.atoms()) {
    json aj;
    aj["base"] = m.base_space()->point(a.base).id;
    std::vector<std::pair<std::vector<std::string>, double>> rows;
    for (int k = 0; k < a.inner.size(); ++k)
      rows.emplace_back(a.inner.ids_of(k), a.inner.weight(k));
    aj["inner"] = json{{"atoms", atoms_by_id(rows)}};
    if (!a.extra.empty()) {
      std::vector<std::string> ids;
      for (std::size_t k = 0; k < a.extra.size(); ++k)
        ids.push_back(m.extra_spaces()[k]->point(a.extra[k]).id);
      aj["extra"] = ids;
    }
    aj["weight"] = a.weight;
    atoms.push_back(std::move(aj));
  }
  out["atoms"] = std::move(atoms);
  return out;
}

}  // namespace

std::string serialize_lifted(const LiftedMeasure& m) {
  return dump_doc(lifted_to_obj(m), 17);
}

LiftedMeasure parse_lifted(const std::string& text) {
  const std::string ctx = "lifted document";
  json j = parse_text(text, ctx);
  SpacePtr base = space_from_json(require(j, "base_space", ctx), ctx + ".base_space");
  SpacePtr inner = space_from_json(require(j, "inner_space", ctx), ctx + ".inner_space");
  std::vector<SpacePtr> extras;
  if (j.contains("extra_spaces")) {
    const json& ex = require_array(j.at("extra_spaces"), ctx + ".extra_spaces");
    for (std::size_t k = 0; k < ex.size(); ++k)
      extras.push_back(
          space_from_json(ex[k], ctx + ".extra_spaces[" + std::to_string(k) + "]"));
  }
  const json& fj = require(j, "functional", ctx);
  if (!fj.is_boolean())
    throw ValidationError(ctx + ".functional: expected a boolean");
  const std::string metric =
      require_string(require(j, "inner_metric", ctx), ctx + ".inner_metric");
  InnerMetricKind kind;
  if (metric == "w1") {
    kind = InnerMetricKind::W1Truncated;
  } else if (metric == "prohorov") {
    kind = InnerMetricKind::Prohorov;
  } else {
    throw ValidationError(ctx + ".inner_metric: expected \"w1\" or \"prohorov\"");
  }
  const json& atoms_j = require_array(require(j, "atoms", ctx), ctx + ".atoms");
  std::vector<LiftedAtom> atoms;
  for (std::size_t i = 0; i < atoms_j.size(); ++i) {
    const std::string actx = ctx + ".atoms[" + std::to_string(i) + "]";
    const json& aj = atoms_j[i];
    const std::string base_id = require_string(require(aj, "base", actx), actx + ".base");
    const int base_idx = base->index_of(base_id);
    if (base_idx < 0)
      throw ValidationError(actx + ".base: unknown point '" + base_id + "'");
    const json& in_atoms =
        require_array(require(require(aj, "inner", actx), "atoms", actx + ".inner"),
                      actx + ".inner.atoms");
    std::map<std::vector<int>, double> in_weights;
    for (std::size_t k = 0; k < in_atoms.size(); ++k) {
      const std::string ictx = actx + ".inner.atoms[" + std::to_string(k) + "]";
      const json& pt = require_array(require(in_atoms[k], "point", ictx), ictx + ".point");
      if (pt.size() != 1)
        throw ValidationError(ictx + ".point: expected one id");
      const std::string id = require_string(pt[0], ictx + ".point");
      const int idx = inner->index_of(id);
      if (idx < 0)
        throw ValidationError(ictx + ".point: unknown point '" + id + "'");
      in_weights[{idx}] =
          require_number(require(in_atoms[k], "weight", ictx), ictx + ".weight");
    }
    std::vector<int> extra;
    if (aj.contains("extra")) {
      const json& ej = require_array(aj.at("extra"), actx + ".extra");
      if (ej.size() != extras.size())
        throw ValidationError(actx + ".extra: expected " +
                              std::to_string(extras.size()) + " ids");
      for (std::size_t k = 0; k < ej.size(); ++k) {
        const std::string id = require_string(ej[k], actx + ".extra");
        const int idx = extras[k]->index_of(id);
        if (idx < 0)
          throw ValidationError(actx + ".extra: unknown point '" + id + "'");
        extra.push_back(idx);
      }
    } else if (!extras.empty()) {
      throw ValidationError(actx + ": missing key 'extra'");
    }
    atoms.push_back(LiftedAtom{
        base_idx,
        DiscreteMeasure(ProductSpace({inner}), std::move(in_weights)),
        std::move(extra),
        require_number(require(aj, "weight", actx), actx + ".weight")});
  }
  return LiftedMeasure(std::move(base), std::move(inner), std::move(extras),
                       std::move(atoms), fj.get<bool>(), kind);
}

std::string serialize_sets(const SetFamily& family) {
  json sets = json::array();
  for (const auto& s : family) {
    json sj;
    sj["name"] = s.name;
    if (!s.rects.empty()) {
      json rects = json::array();
      for (const auto& r : s.rects) {
        json rj = json::object();
        for (const auto& [axis, ids] : r.per_axis) rj[axis] = ids;
        rects.push_back(std::move(rj));
      }
      sj["rects"] = std::move(rects);
    }
    if (!s.atoms.empty()) sj["atoms"] = s.atoms;
    sets.push_back(std::move(sj));
  }
  json out;
  out["sets"] = std::move(sets);
  return dump_doc(out, 17);
}

SetFamily parse_sets(const std::string& text) {
  const std::string ctx = "sets document";
  json j = parse_text(text, ctx);
  const json& sets_j = require_array(require(j, "sets", ctx), ctx + ".sets");
  SetFamily family;
  for (std::size_t i = 0; i < sets_j.size(); ++i) {
    const std::string sctx = ctx + ".sets[" + std::to_string(i) + "]";
    SetDesc desc;
    desc.name = require_string(require(sets_j[i], "name", sctx), sctx + ".name");
    if (sets_j[i].contains("rects")) {
      for (const auto& rj : require_array(sets_j[i].at("rects"), sctx + ".rects")) {
        if (!rj.is_object())
          throw ValidationError(sctx + ".rects: each rectangle must be an object");
        SetRect rect;
        for (auto it = rj.begin(); it != rj.end(); ++it) {
          std::vector<std::string> ids;
          for (const auto& id : require_array(it.value(), sctx + ".rects." + it.key()))
            ids.push_back(require_string(id, sctx + ".rects." + it.key()));
          rect.per_axis[it.key()] = std::move(ids);
        }
        desc.rects.push_back(std::move(rect));
      }
    }
    if (sets_j[i].contains("atoms")) {
      for (const auto& aj : require_array(sets_j[i].at("atoms"), sctx + ".atoms")) {
        std::vector<std::string> ids;
        for (const auto& id : require_array(aj, sctx + ".atoms"))
          ids.push_back(require_string(id, sctx + ".atoms"));
        desc.atoms.push_back(std::move(ids));
      }
    }
    family.push_back(std::move(desc));
  }
  return family;
}

DecisionProblem parse_problem(const std::string& text) {
  const std::string ctx = "problem document";
  json j = parse_text(text, ctx);
  DiscreteMeasure prior =
      measure_from_obj(require(j, "prior", ctx), ctx + ".prior");
  SpacePtr actions = space_from_json(require(j, "actions", ctx), ctx + ".actions");
  const json& cost_j = require_array(require(j, "cost", ctx), ctx + ".cost");
  CostTable cost;
  for (std::size_t i = 0; i < cost_j.size(); ++i) {
    const std::string cctx = ctx + ".cost[" + std::to_string(i) + "]";
    const json& pt = require_array(require(cost_j[i], "point", cctx), cctx + ".point");
    if (pt.size() != 3)
      throw ValidationError(cctx + ".point: expected three ids");
    std::array<std::string, 3> key;
    for (int k = 0; k < 3; ++k) key[k] = require_string(pt[k], cctx + ".point");
    if (cost.count(key)) throw ValidationError(cctx + ": duplicate cost entry");
    cost[key] = require_number(require(cost_j[i], "value", cctx), cctx + ".value");
  }
  DecisionProblem p{std::move(prior), std::move(actions), std::move(cost)};
  validate_problem(p);
  return p;
}

SequenceDoc parse_sequence(const std::string& text) {
  const std::string ctx = "sequence document";
  json j = parse_text(text, ctx);
  const json& idx_j = require_array(require(j, "indices", ctx), ctx + ".indices");
  if (idx_j.empty()) throw ValidationError(ctx + ".indices: must be non-empty");
  std::vector<int> indices;
  for (const auto& v : idx_j) {
    if (!v.is_number_integer() && !v.is_number_unsigned())
      throw ValidationError(ctx + ".indices: expected integers");
    indices.push_back(v.get<int>());
  }
  const json& mem_j = require_array(require(j, "members", ctx), ctx + ".members");
  if (mem_j.size() != indices.size())
    throw ValidationError(ctx + ": members and indices must have equal length");
  std::vector<DiscreteMeasure> members;
  for (std::size_t i = 0; i < mem_j.size(); ++i)
    members.push_back(
        measure_from_obj(mem_j[i], ctx + ".members[" + std::to_string(i) + "]"));
  return SequenceDoc{std::move(indices), std::move(members),
                     measure_from_obj(require(j, "limit", ctx), ctx + ".limit")};
}

std::string serialize_report(const ConvergenceReport& r) {
  json metrics = json::array();
  for (const auto& t : r.traces) {
    json tj;
    tj["metric"] = metric_name(t.metric);
    tj["trace"] = trace_to_json(t.trace);
    tj["verdict"] = verdict_name(t.verdict);
    metrics.push_back(std::move(tj));
  }
  json out;
  out["metrics"] = std::move(metrics);
  out["params"] = params_to_json(r.params);
  return dump_doc(out, 12);
}

std::string serialize_density(const DensityReport& r) {
  json out;
  out["verdict"] = criterion_name(r.verdict);
  json sup = json::array();
  for (const auto& [i, d] : r.sup_trace) {
    json e;
    e["index"] = i;
    e["sup"] = d;
    sup.push_back(std::move(e));
  }
  out["sup_trace"] = std::move(sup);
  json mism = json::array();
  for (const auto& [i, c] : r.undefined_mismatches) {
    json e;
    e["index"] = i;
    e["count"] = c;
    mism.push_back(std::move(e));
  }
  out["undefined_mismatches"] = std::move(mism);
  out["explanation"] = r.explanation;
  if (r.info_cross_check)
    out["info_cross_check"] = verdict_name(*r.info_cross_check);
  return dump_doc(out, 12);
}

std::string serialize_kernel(const KernelReport& r) {
  json out;
  out["verdict"] = criterion_name(r.verdict);
  json traces = json::array();
  for (const auto& t : r.traces) {
    json tj;
    tj["x"] = t.x_id;
    tj["trace"] = trace_to_json(t.trace);
    traces.push_back(std::move(tj));
  }
  out["traces"] = std::move(traces);
  out["explanation"] = r.explanation;
  if (r.info_cross_check)
    out["info_cross_check"] = verdict_name(*r.info_cross_check);
  return dump_doc(out, 12);
}

std::string serialize_solve(const SolveResult& r) {
  json out;
  out["value"] = r.value;
  json det = json::object();
  for (const auto& [a, c] : r.deterministic.choice) det[a] = c;
  out["deterministic"] = std::move(det);
  json rand = json::object();
  for (const auto& [a, row] : r.randomized.rows) {
    json rj = json::object();
    for (const auto& [c, p] : row) rj[c] = p;
    rand[a] = std::move(rj);
  }
  out["randomized"] = std::move(rand);
  return dump_doc(out, 12);
}

std::string serialize_record(const FixtureRecord& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj;
    cj["name"] = c.name;
    cj["expected"] = c.expected;
    cj["actual"] = c.actual;
    cj["tol"] = c.tol;
    cj["kind"] = c.is_upper_bound ? "upper-bound" : "two-sided";
    cj["origin"] = c.origin;
    cj["pass"] = c.pass;
    checks.push_back(std::move(cj));
  }
  json out;
  out["fixture"] = r.name;
  out["checks"] = std::move(checks);
  return dump_doc(out, 17);
}

std::string serialize_fixture_bundle(const std::string& name, int n, int K,
                                     int cap) {
  json out;
  if (name == "sgn") {
    auto [mu_n, mu_0] = fixture_sgn(n);
    out["mu_n"] = measure_to_obj(mu_n);
    out["mu_0"] = measure_to_obj(mu_0);
  } else if (name == "discrete-pair") {
    auto fx = fixture_discrete_pair(n);
    out["mu_n"] = measure_to_obj(fx.mu_n);
    out["nu_n"] = measure_to_obj(fx.nu_n);
    out["mu"] = measure_to_obj(fx.mu);
    out["nu"] = measure_to_obj(fx.nu);
  } else if (name == "rademacher") {
    auto [mu_n, mu] = fixture_rademacher(n, K);
    out["mu_n"] = measure_to_obj(mu_n);
    out["mu"] = measure_to_obj(mu);
  } else if (name == "hellwig") {
    auto fx = fixture_hellwig();
    out["nu"] = measure_to_obj(fx.nu);
    out["mu"] = measure_to_obj(fx.mu);
    out["glued"] = lifted_to_obj(fx.glued);
    out["lhs"] = fx.lhs;
    out["rhs"] = fx.rhs;
  } else if (name == "jordan") {
    auto [nu_n, nu] = fixture_jordan(n, cap);
    out["nu_n"] = measure_to_obj(nu_n);
    out["nu"] = measure_to_obj(nu);
  } else {
    throw ValidationError("unknown fixture '" + name + "'");
  }
  return dump_doc(out, 17);
}

std::string format_scalar(double v) { return format_double(v, 12); }

}  // namespace infotop
