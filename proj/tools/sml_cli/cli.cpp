#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "report.hpp"
#include "sml/dsl.hpp"
#include "sml/error.hpp"
#include "sml/morphism.hpp"
#include "sml/propagation.hpp"
#include "sml/superop.hpp"
#include "sml/wavefront.hpp"

namespace sml::cli {

namespace {

enum class Outcome { Positive, Negative, Unknown };

const char* outcome_text(Outcome o) {
  switch (o) {
    case Outcome::Positive: return "positive";
    case Outcome::Negative: return "negative";
    case Outcome::Unknown: return "unknown";
  }
  return "";
}

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Context {
  const Document& doc;
  const Request& request;
  std::vector<Outcome> outcomes;

  bool selected(const std::string& name) const {
    return request.names.empty() ||
           std::find(request.names.begin(), request.names.end(), name) != request.names.end();
  }
  void record(Json& j, Outcome o) {
    j["outcome"] = outcome_text(o);
    outcomes.push_back(o);
  }
};

/// Runs one entity analysis; library errors become an Unknown entry.
void guarded(Context& ctx, Json& results, Json entry, const std::function<Outcome(Json&)>& body) {
  try {
    ctx.record(entry, body(entry));
  } catch (const Error& e) {
    entry["error"] = e.what();
    ctx.record(entry, Outcome::Unknown);
  }
  results.push_back(std::move(entry));
}

Outcome verdict_outcome(Verdict v) {
  switch (v) {
    case Verdict::Elliptic:
    case Verdict::Hyperbolic: return Outcome::Positive;
    case Verdict::Degenerate: return Outcome::Negative;
    case Verdict::Unknown: return Outcome::Unknown;
  }
  return Outcome::Unknown;
}

Outcome admissibility_outcome(Admissibility a) {
  switch (a) {
    case Admissibility::Admissible: return Outcome::Positive;
    case Admissibility::NotGuaranteed: return Outcome::Negative;
    case Admissibility::Unknown: return Outcome::Unknown;
  }
  return Outcome::Unknown;
}

std::string operator_text(const Document& doc, const OperatorDecl& op) {
  Document single{doc.params, {op}};
  return print_document(single);
}

Json verdict_json(const EllipticityVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.tag);
  j["det"] = v.determinant.to_string();
  j["factored"] = v.factored;
  j["reason"] = v.reason;
  if (v.quadratic_form) j["quadratic_form"] = v.quadratic_form->to_string();
  if (v.witness) j["witness"] = {{"x", vector_json(v.witness->first)}, {"k", vector_json(v.witness->second)}};
  return j;
}

std::vector<const OperatorDecl*> operators(const Context& ctx) {
  std::vector<const OperatorDecl*> out;
  for (const auto* op : ctx.doc.all<OperatorDecl>()) {
    if (ctx.selected(op->name)) out.push_back(op);
  }
  return out;
}

Json analyze_operators(Context& ctx, bool with_subprincipal) {
  Json results = Json::array();
  for (const auto* op : operators(ctx)) {
    guarded(ctx, results, {{"name", op->name}, {"domain", op->domain}}, [&](Json& j) {
      SuperSymbol sym = principal_symbol(op->op);
      j["order"] = to_string(op->op.order());
      j["indices"] = multi_indices_json(op->op.n());
      j["symbol"] = matrix_json(sym.matrix());
      auto v = ellipticity_verdict(sym);
      j.update(verdict_json(v));
      if (!v.determinant.is_zero()) {
        SuperSymbol inv = symbol_inverse(sym);
        j["inverse"] = {{"order", to_string(inv.order())}, {"matrix", matrix_json(inv.matrix())}};
      }
      if (with_subprincipal) j["subprincipal"] = matrix_json(subprincipal_symbol(op->op).matrix());
      return verdict_outcome(v.tag);
    });
  }
  return results;
}

Json parametrix(Context& ctx) {
  Json results = Json::array();
  for (const auto* op : operators(ctx)) {
    guarded(ctx, results, {{"name", op->name}}, [&](Json& j) {
      SuperSymbol sym = principal_symbol(op->op);
      auto v = ellipticity_verdict(sym);
      j["verdict"] = to_string(v.tag);
      if (v.determinant.is_zero()) {
        j["reason"] = "principal symbol is not invertible";
        return Outcome::Negative;
      }
      SuperSymbol inv = symbol_inverse(sym);
      j["order"] = to_string(inv.order());
      j["symbol"] = matrix_json(inv.matrix());
      j["check"] = compose_symbols(sym, inv).matrix() == Matrix<SymExpr>::identity(sym.matrix().rows());
      j["valid"] = v.tag == Verdict::Elliptic ? "everywhere" : "off the zero set of the determinant";
      return verdict_outcome(v.tag);
    });
  }
  return results;
}

Json compose(Context& ctx) {
  auto ops = operators(ctx);
  if (ops.size() < 2) throw UsageError("compose needs two operators");
  const OperatorDecl& a = *ops[0];
  const OperatorDecl& b = *ops[1];
  Json results = Json::array();
  guarded(ctx, results, {{"left", a.name}, {"right", b.name}}, [&](Json& j) {
    SuperOperator ab = compose_ops(a.op, b.op);
    OperatorDecl decl{a.name + "_" + b.name, a.domain, ab};
    j["operator"] = operator_text(ctx.doc, decl);
    j["order"] = to_string(ab.order());
    SuperSymbol lhs = principal_symbol(ab);
    j["symbol"] = matrix_json(lhs.matrix());
    bool law = lhs == compose_symbols(principal_symbol(a.op), principal_symbol(b.op));
    j["symbol_law"] = law;
    return law ? Outcome::Positive : Outcome::Negative;
  });
  return results;
}

std::vector<const MorphismDecl*> morphisms(const Context& ctx) {
  std::vector<const MorphismDecl*> out;
  for (const auto* m : ctx.doc.all<MorphismDecl>()) {
    if (ctx.selected(m->name)) out.push_back(m);
  }
  return out;
}

Json factorize_all(Context& ctx) {
  Json results = Json::array();
  for (const auto* m : morphisms(ctx)) {
    guarded(ctx, results, {{"name", m->name}, {"source", m->source}, {"target", m->target}}, [&](Json& j) {
      auto data = factorize(m->map);
      j["body_map"] = vector_json(data.body_map);
      Json dchi = Json::object();
      for (const auto& [slot, terms] : data.dchi) {
        Json list = Json::array();
        for (const auto& [alpha, c] : terms) {
          Json a = Json::array();
          for (unsigned e : alpha) a.push_back(e);
          list.push_back({{"alpha", a}, {"coefficient", c.to_string()}});
        }
        dchi[slot.first.to_string() + "|" + slot.second.to_string()] = list;
      }
      j["dchi"] = dchi;
      return Outcome::Positive;
    });
  }
  return results;
}

Json polmap_all(Context& ctx) {
  Json results = Json::array();
  for (const auto* m : morphisms(ctx)) {
    guarded(ctx, results, {{"name", m->name}}, [&](Json& j) {
      j["rows"] = multi_indices_json(m->map.source_n());
      j["columns"] = multi_indices_json(m->map.target_n());
      j["matrix"] = matrix_json(polarization_map(m->map));
      return Outcome::Positive;
    });
  }
  return results;
}

std::vector<const DistDecl*> dists(const Context& ctx) {
  std::vector<const DistDecl*> out;
  for (const auto* d : ctx.doc.all<DistDecl>()) {
    if (ctx.selected(d->name)) out.push_back(d);
  }
  return out;
}

Json fibers_json(const SuperWFSet& swf) {
  const auto& idx = all_multi_indices(swf.n);
  Json fibers = Json::array();
  for (const auto& piece : swf.pieces) {
    Json eqs = Json::array();
    for (std::size_t r = 0; r < piece.constraints.rows(); ++r) {
      std::string eq;
      for (std::size_t c = 0; c < piece.constraints.cols(); ++c) {
        if (piece.constraints(r, c).is_zero()) continue;
        if (!eq.empty()) eq += " + ";
        eq += "(" + piece.constraints(r, c).to_string() + ")*l[" + idx[c].to_string() + "]";
      }
      eqs.push_back(eq + " = 0");
    }
    fibers.push_back({{"stratum", piece.stratum.to_string()}, {"constraints", eqs}});
  }
  return fibers;
}

Json swf_all(Context& ctx) {
  Json results = Json::array();
  for (const auto* d : dists(ctx)) {
    guarded(ctx, results, {{"name", d->name}, {"domain", d->domain}}, [&](Json& j) {
      Json comps = Json::object();
      for (const auto& [i, wf] : component_wf(d->dist)) {
        Json strata = Json::array();
        for (const auto& s : wf.strata) strata.push_back(s.to_string());
        comps[i.to_string()] = {{"strata", strata}, {"exact", wf.exact}};
      }
      j["components"] = comps;
      auto ops = auto_annihilators(d->dist);
      Json annihilators = Json::array();
      for (const auto& a : ops) {
        Json slots = Json::object();
        for (const auto& [slot, op] : a.components()) {
          slots[slot.first.to_string() + "|" + slot.second.to_string()] = op.to_string();
        }
        annihilators.push_back(slots);
      }
      j["annihilators"] = annihilators;
      auto swf = swf_upper_bound(d->dist, ops);
      Json strata = Json::array();
      for (const auto& p : swf.pieces) strata.push_back(p.stratum.to_string());
      j["strata"] = strata;
      j["fibers"] = fibers_json(swf);
      j["bound"] = to_string(swf.kind);
      auto proj = projection_check(swf, d->dist);
      j["projection"] = {{"status", to_string(proj.status)}, {"detail", proj.detail}};
      Json transforms = Json::array();
      for (const auto* m : ctx.doc.all<MorphismDecl>()) {
        if (m->target != d->domain || m->map.source_m() != m->map.target_m() ||
            m->map.source_n() != m->map.target_n()) {
          continue;
        }
        Json t{{"morphism", m->name}};
        try {
          t["fibers"] = fibers_json(transform(swf, m->map));
        } catch (const Error& e) {
          t["error"] = e.what();
        }
        transforms.push_back(t);
      }
      if (!transforms.empty()) j["transforms"] = transforms;
      j["verdict"] = to_string(proj.status);
      switch (proj.status) {
        case Tri::Holds: return Outcome::Positive;
        case Tri::Fails: return Outcome::Negative;
        case Tri::Unknown: return Outcome::Unknown;
      }
      return Outcome::Unknown;
    });
  }
  return results;
}

Json pullback_all(Context& ctx) {
  Json results = Json::array();
  for (const auto* m : morphisms(ctx)) {
    for (const auto* d : ctx.doc.all<DistDecl>()) {
      if (d->domain != m->target) continue;
      guarded(ctx, results, {{"morphism", m->name}, {"dist", d->name}}, [&](Json& j) {
        auto v = pullback_check(m->map, d->dist);
        j["verdict"] = to_string(v.verdict);
        j["reason"] = v.reason;
        if (v.witness) {
          j["witnesses"] = Json::array({{{"component", v.witness->component.to_string()},
                                         {"x", vector_json(v.witness->point)},
                                         {"k", vector_json(v.witness->covector)}}});
        }
        if (v.reduced) j["reduced"] = v.reduced->to_string();
        return admissibility_outcome(v.verdict);
      });
    }
  }
  return results;
}

Json multiply(Context& ctx) {
  auto ds = dists(ctx);
  if (ds.size() < 2) throw UsageError("check-multiply needs two distributions");
  const DistDecl& u = *ds[0];
  const DistDecl& v = *ds[1];
  Json results = Json::array();
  guarded(ctx, results, {{"left", u.name}, {"right", v.name}}, [&](Json& j) {
    auto r = multiply_check(u.dist, v.dist);
    j["verdict"] = to_string(r.verdict);
    j["reason"] = r.reason;
    if (r.witness) {
      RVector minus = r.witness->covector;
      for (auto& e : minus) e = -e;
      j["witnesses"] = Json::array({{{"left", r.witness->left.to_string()},
                                     {"right", r.witness->right.to_string()},
                                     {"x", vector_json(r.witness->point)},
                                     {"k", vector_json(r.witness->covector)},
                                     {"minus_k", vector_json(minus)}}});
    }
    j["product"] = r.product ? Json(r.product->to_string()) : Json();
    return admissibility_outcome(r.verdict);
  });
  return results;
}

HyperbolicSystem build_system(const Document& doc, const SystemDecl& s) {
  if (s.wess_zumino) return wz_model(s.mass);
  return make_system(doc.find<OperatorDecl>(s.p)->op, doc.find<OperatorDecl>(s.p_tilde)->op);
}

Json propagate(Context& ctx) {
  Json results = Json::array();
  for (const auto* o : ctx.doc.all<OrbitDecl>()) {
    if (!ctx.selected(o->name)) continue;
    guarded(ctx, results, {{"name", o->name}, {"system", o->system}}, [&](Json& j) {
      HyperbolicSystem sys = build_system(ctx.doc, *ctx.doc.find<SystemDecl>(o->system));
      auto cs = characteristic_set(sys.q);
      j["companion"] = sys.q.to_string();
      j["characteristic_set"] = cs.description();
      auto curve = hamiltonian_curve(cs, o->x, o->k);
      j["curve"] = {{"x0", vector_json(curve.x0)}, {"k0", vector_json(curve.k0)},
                    {"direction", vector_json(curve.direction)}};
      auto kernel = kernel_bundle(sys.p, curve);
      Json kj = Json::array();
      for (const auto& v : kernel) kj.push_back(vector_json(v));
      j["kernel"] = kj;
      auto pc = partial_connection(sys);
      auto m_at = connection_at(pc, curve);
      j["connection"] = matrix_json(m_at);
      j["reduced_action"] = matrix_json(reduced_action(pc, curve, kernel));
      std::vector<CVector> starts = o->lambda ? std::vector<CVector>{*o->lambda} : kernel;
      Json sections = Json::array();
      bool all_ok = true;
      for (const auto& lambda : starts) {
        auto orbit = hamiltonian_orbit(sys, o->x, o->k, lambda);
        bool ok = section_solves_transport(orbit.section, m_at);
        all_ok = all_ok && ok;
        sections.push_back({{"lambda0", vector_json(lambda)},
                            {"section", orbit.section.to_string()},
                            {"constant", orbit.section.constant()},
                            {"solves_transport", ok}});
      }
      j["sections"] = sections;
      return all_ok ? Outcome::Positive : Outcome::Negative;
    });
  }
  return results;
}

Json atlases(Context& ctx) {
  Json results = Json::array();
  for (const auto* a : ctx.doc.all<AtlasDecl>()) {
    if (!ctx.selected(a->name)) continue;
    guarded(ctx, results, {{"name", a->name}}, [&](Json& j) {
      std::vector<Chart> charts;
      for (const auto& c : a->charts) {
        const auto* d = ctx.doc.find<DomainDecl>(c);
        charts.push_back({d->name, d->m, d->n});
      }
      std::vector<Transition> edges;
      for (const auto& e : a->transitions) edges.push_back({e.from, e.to, ctx.doc.find<MorphismDecl>(e.morphism)->map});
      auto r = validate_atlas(charts, edges);
      j["valid"] = r.valid;
      j["checks"] = r.checks;
      j["failures"] = r.failures;
      return r.valid ? Outcome::Positive : Outcome::Negative;
    });
  }
  return results;
}

Json dispatch(Context& ctx) {
  const std::string& c = ctx.request.command;
  Json results;
  if (c == "analyze-operator") results = analyze_operators(ctx, true);
  if (c == "parametrix") results = parametrix(ctx);
  if (c == "compose") results = compose(ctx);
  if (c == "factorize") results = factorize_all(ctx);
  if (c == "polmap") results = polmap_all(ctx);
  if (c == "swf") results = swf_all(ctx);
  if (c == "check-pullback") results = pullback_all(ctx);
  if (c == "check-multiply") results = multiply(ctx);
  if (c == "propagate") results = propagate(ctx);
  if (c == "validate-atlas") results = atlases(ctx);
  if (results.empty()) throw UsageError("no entities in input for " + c);
  return results;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int combine(const std::vector<Outcome>& outcomes) {
  bool unknown = false;
  for (Outcome o : outcomes) {
    if (o == Outcome::Negative) return kExitNegative;
    unknown = unknown || o == Outcome::Unknown;
  }
  return unknown ? kExitUnknown : kExitPositive;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> list{"analyze-operator", "compose",       "parametrix",     "factorize",
                                             "polmap",           "swf",           "check-pullback", "check-multiply",
                                             "propagate",        "validate-atlas"};
  return list;
}

Result run(const Request& request) {
  Result result;
  if (std::find(commands().begin(), commands().end(), request.command) == commands().end()) {
    result.error = "unknown command: " + request.command + "\n";
    return result;
  }
  if (request.format != "json" && request.format != "text") {
    result.error = "unknown format: " + request.format + "\n";
    return result;
  }
  if (request.inputs.empty()) {
    result.error = "no input files\n";
    return result;
  }
  Json report;
  report["schema"] = 1;
  report["command"] = request.command;
  report["files"] = Json::array();
  std::vector<Outcome> outcomes;
  for (const auto& path : request.inputs) {
    try {
      Document doc = parse_document(read_file(path));
      Context ctx{doc, request, {}};
      report["files"].push_back({{"path", path}, {"results", dispatch(ctx)}});
      outcomes.insert(outcomes.end(), ctx.outcomes.begin(), ctx.outcomes.end());
    } catch (const ParseError& e) {
      result.error = path + ":" + e.what() + "\n";
      return result;
    } catch (const Error& e) {
      result.error = path + ": " + e.what() + "\n";
      return result;
    }
  }
  result.exit_code = combine(outcomes);
  report["exit_code"] = result.exit_code;
  result.report = request.format == "json" ? report.dump(2) + "\n" : render_text(report);
  return result;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Symbolic microlocal analysis on superdomains"};
  Request request;
  std::string output;
  app.add_option("command", request.command, "Analysis to run")->required()->check(CLI::IsMember(commands()));
  app.add_option("--input", request.inputs, "DSL input files")->required()->expected(1, -1);
  app.add_option("--format", request.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output", output, "Write the report to this file instead of stdout");
  app.add_option("--name", request.names, "Restrict to these entity names");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  Result r = run(request);
  std::cerr << r.error;
  if (output.empty()) {
    std::cout << r.report;
  } else if (r.exit_code != kExitUsage) {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return kExitUsage;
    }
    out << r.report;
  }
  return r.exit_code;
}

}  // namespace sml::cli
