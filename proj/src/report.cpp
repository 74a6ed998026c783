#include "fimkit/report.hpp"

#include <algorithm>
#include <sstream>

namespace fimkit {

namespace {

std::string indexed(const char* name, const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + std::string(name) + "_" + std::to_string(k + 1) + " = " + std::to_string(v[k]);
  return s;
}

std::string td_summary(const std::vector<int>& td) {
  const bool none = std::all_of(td.begin(), td.end(), [](int x) { return x < 0; });
  return none ? "all -1" : indexed("td", td);
}

Report optional_shape(const std::optional<Shape>& s) { return s ? Report(s->to_string()) : Report(nullptr); }

Report module_section(const RunConfig& config, const TruncatedModule& V) {
  return Report{{"input", config.input}, {"field", V.field().name()}, {"m", V.m()}, {"box", V.box().bound().to_string()}};
}

Report multiplicities_report(const Multiplicities& mult) {
  Report out = Report::object();
  for (const auto& [lambda, c] : mult) out[to_string(lambda)] = c;
  return out;
}

Report hilbert_report(const HilbertFit& f) {
  Report polys = Report::array();
  for (const auto& p : f.P) polys.push_back(p.to_string());
  return Report{{"verdict", to_string(f.verdict)},
                {"polynomials", std::move(polys)},
                {"start", f.start.to_string()},
                {"gauge_point", optional_shape(f.base)},
                {"degrees_ok", f.degrees_ok},
                {"residual_zero", f.residual_zero},
                {"first_mismatch", optional_shape(f.first_mismatch)},
                {"reason", f.reason}};
}

Report stability_section(const TruncatedModule& V, const std::vector<int>& N) {
  if (V.field().is_prime()) return Report{{"status", "unsupported"}, {"reason", "representation stability needs characteristic 0"}};
  const StabilityReport s = stability_report(V, N);
  Report families = Report::array();
  for (const auto& f : s.families) families.push_back({{"family", to_string(f.tail)}, {"multiplicity", f.multiplicity}, {"onset", f.onset}});
  return Report{{"verdict", to_string(s.verdict)},
                {"threshold", s.threshold},
                {"empirical_onset", s.empirical_onset ? Report(*s.empirical_onset) : Report(nullptr)},
                {"injectivity_failure", optional_shape(s.injectivity_failure)},
                {"generation_failure", optional_shape(s.generation_failure)},
                {"multiplicity_failure", optional_shape(s.multiplicity_failure)},
                {"families", std::move(families)},
                {"reason", s.reason}};
}

Report nagpal_report(const NagpalComplex& c) {
  Report pieces = Report::array();
  for (std::size_t j = 0; j < c.F.size(); ++j) {
    pieces.push_back({{"j", j},
                      {"gd", c.gd_F[j]},
                      {"relative_projective", j < c.F_relative_projective.size() ? to_string(c.F_relative_projective[j]) : "untested"},
                      {"dims", dims_report(c.F[j].dims(), true)}});
  }
  Report homology = Report::array();
  for (std::size_t j = 0; j < c.homology.size(); ++j)
    homology.push_back({{"j", j}, {"td", c.homology_td[j]}, {"dims", dims_report(c.homology[j], true)}});
  return Report{{"shift", c.shift.to_string()}, {"N", c.N},          {"l", c.l},
                {"gd", c.gd},                   {"complete", c.complete}, {"gd_bound_ok", c.gd_bound_ok},
                {"length_ok", c.length_ok},     {"F", std::move(pieces)}, {"H", std::move(homology)}};
}

RunResult analyze(const RunConfig& config, const TruncatedModule& V) {
  RunResult out;
  Report& r = out.report;
  std::vector<std::string> violations;
  const RelativeProjectivity rp = relative_projective_test(V);
  const HomologyResult h = homology(V, config.s_max);
  const TorsionReport t = torsion_analysis(V);
  const NagpalComplex cx = nagpal_complex(V);
  const HilbertFit fit = hilbert_fit(V, cx.N);
  ProjectiveDimension pd;
  if (rp.verdict == Verdict::True && V.field().is_prime()) {
    pd = projective_dim_classifier(V);
  } else {
    pd.finite = rp.verdict;
    pd.reason = rp.verdict == Verdict::True ? "relative projective over a field of characteristic 0" : rp.reason;
  }

  r["summary"] = {{"relative projective", to_string(rp.verdict)},
                  {"td", td_summary(t.td)},
                  {"H_1", h.H.size() > 1 && h.H[1].is_zero() ? "0" : (h.H.size() > 1 ? "nonzero, hd_1 = " + std::to_string(h.hd[1]) : "not computed")},
                  {"N", indexed("N", cx.N)},
                  {"gd", h.gd}};
  r["module"] = module_section(config, V);
  r["module"]["dims_total"] = V.dims().total();

  Report hom = Report::object();
  hom["status"] = "exact on " + h.box.bound().to_string();
  hom["gd"] = h.gd;
  hom["hd"] = h.hd;
  for (std::size_t s = 0; s < h.H.size(); ++s) hom["H_" + std::to_string(s)] = dims_report(h.H[s], true);
  hom["resolution_generators"] = h.resolution_generators;
  r["homology"] = std::move(hom);

  r["relative_projective"] = {{"verdict", to_string(rp.verdict)},
                              {"witness", optional_shape(rp.witness)},
                              {"h2_consistent", rp.h2_consistent},
                              {"reason", rp.reason}};
  if (rp.verdict == Verdict::Inconclusive) violations.push_back("relative projectivity is inconclusive on this box");
  if (!rp.h2_consistent) violations.push_back("H_1 = 0 but H_2 != 0");

  Report drops = Report::array();
  for (const auto& d : t.shift_drop) drops.push_back(d ? Report(*d) : Report(nullptr));
  r["torsion"] = {{"td", t.td},
                  {"td_max", t.td_max},
                  {"V_T", dims_report(t.torsion, true)},
                  {"margin", t.margin.to_string()},
                  {"closure_rounds", t.rounds},
                  {"routes_agree", t.routes_agree},
                  {"shift_drop", std::move(drops)}};
  if (!t.routes_agree) violations.push_back("torsion routes disagree");
  for (std::size_t i = 0; i < t.shift_drop.size(); ++i)
    if (t.shift_drop[i] == std::optional<bool>(false)) violations.push_back("td_" + std::to_string(i + 1) + " does not drop under shift");

  r["nagpal"] = nagpal_report(cx);
  if (!cx.gd_bound_ok) violations.push_back("gd(F^j) exceeds gd(V) - j");
  if (!cx.length_ok) violations.push_back("complex longer than gd(V)");

  r["projective_dimension"] = {{"finite", to_string(pd.finite)}, {"reason", pd.reason}};
  r["hilbert"] = hilbert_report(fit);
  if (fit.verdict == Verdict::False) violations.push_back("Hilbert function does not factor: " + fit.reason);
  r["stability"] = stability_section(V, cx.N);

  r["violations"] = violations;
  out.exit_code = violations.empty() ? 0 : 1;
  return out;
}

RunResult check(const RunConfig& config, const TruncatedModule& V) {
  RunResult out;
  Report& r = out.report;
  r["module"] = module_section(config, V);
  const AxiomReport ax = check_module_axioms(V);
  Report classes = Report::object();
  for (const auto& [name, ok] : ax.checks) classes[name] = ok ? "pass" : "fail";
  r["axioms"] = {{"checks", std::move(classes)}};
  if (ax.first_failure) {
    r["axioms"]["counterexample"] = {{"invariant", ax.first_failure->invariant}, {"object", ax.first_failure->object.to_string()}, {"detail", ax.first_failure->detail}};
    r["verdict"] = "fail";
    out.exit_code = 1;
    return out;
  }
  Report identities = Report::object();
  bool ok = true;
  for (int i = 0; i < V.m(); ++i) {
    if (V.box().bound()[i] == 0) continue;
    const bool exact = derivative_and_kernel(V, i).exact;
    identities["K_" + std::to_string(i + 1) + " + shift = V + D_" + std::to_string(i + 1)] = exact ? "pass" : "fail";
    ok = ok && exact;
  }
  bool all_positive = true;
  for (int i = 0; i < V.m(); ++i) all_positive = all_positive && V.box().bound()[i] > 0;
  if (all_positive) {
    const TotalFunctors tf = total_functors(V);
    identities["four-term"] = tf.exact ? "pass" : "fail at " + tf.first_violation->to_string();
    ok = ok && tf.exact;
  }
  r["functor_identities"] = std::move(identities);
  r["verdict"] = ok ? "pass" : "fail";
  out.exit_code = ok ? 0 : 1;
  return out;
}

}  // namespace

Report dims_report(const GradedDims& dims, bool nonzero_only) {
  Report out = Report::object();
  for (int k = 0; k < dims.box.size(); ++k) {
    const int d = dims.dims[static_cast<std::size_t>(k)];
    if (!nonzero_only || d != 0) out[dims.box.object(k).to_string()] = d;
  }
  return out;
}

RunResult run_command(const RunConfig& config, const PresentationFile& file) {
  const TruncatedModule V = build_module(file, config.box);
  RunResult out;
  Report& r = out.report;
  r["command"] = config.command;
  if (config.command == "expand") {
    r["module"] = module_section(config, V);
    r["dims"] = dims_report(V.dims(), false);
  } else if (config.command == "analyze") {
    RunResult a = analyze(config, V);
    for (auto& [k, v] : a.report.items()) r[k] = v;
    out.exit_code = a.exit_code;
  } else if (config.command == "check") {
    RunResult c = check(config, V);
    for (auto& [k, v] : c.report.items()) r[k] = v;
    out.exit_code = c.exit_code;
  } else if (config.command == "shift") {
    if (!config.shift) throw ParseError("shift needs --shift a_1,...,a_m");
    const FunctorResult sh = shift_by(V, *config.shift);
    const NagpalComplex cx = nagpal_complex(V);
    const ShiftedRelativeProjectivity srp = shifted_relative_projectivity(V, *config.shift, cx.N);
    r["module"] = module_section(config, V);
    r["shift"] = {{"amount", config.shift->to_string()},
                  {"box", sh.output.box().bound().to_string()},
                  {"dims", dims_report(sh.output.dims(), false)},
                  {"relative_projective", to_string(srp.verdict)},
                  {"N", cx.N},
                  {"predicted", srp.predicted ? Report(*srp.predicted) : Report(nullptr)},
                  {"consistent_with_threshold", srp.consistent}};
    if (srp.verdict == Verdict::Inconclusive || !srp.sufficient_ok) out.exit_code = 1;
  } else if (config.command == "nagpal") {
    const NagpalComplex cx = nagpal_complex(V, config.shift);
    r["module"] = module_section(config, V);
    r["nagpal"] = nagpal_report(cx);
    if (!cx.complete || !cx.gd_bound_ok || !cx.length_ok) out.exit_code = 1;
  } else if (config.command == "decompose") {
    if (V.field().is_prime()) throw UnsupportedError("decompose needs characteristic 0 (field " + V.field().name() + ")");
    r["module"] = module_section(config, V);
    Report objects = Report::object();
    if (config.at) {
      if (!V.box().contains(*config.at)) throw BoxError("object " + config.at->to_string() + " is outside the box");
      objects[config.at->to_string()] = multiplicities_report(decompose(V, *config.at));
    } else {
      for (const auto& n : V.box().objects()) objects[n.to_string()] = multiplicities_report(decompose(V, n));
    }
    r["decomposition"] = std::move(objects);
  } else if (config.command == "hilbert") {
    const HilbertFit fit = hilbert_fit(V);
    r["module"] = module_section(config, V);
    r["hilbert"] = hilbert_report(fit);
    if (fit.verdict != Verdict::True) out.exit_code = 1;
  } else {
    throw ParseError("unknown command \"" + config.command + "\"");
  }
  return out;
}

std::string render_structured(const Report& report) { return report.dump(2) + "\n"; }

namespace {

std::string scalar(const Report& v) {
  if (v.is_null()) return "none";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + scalar(v[k]);
    return s.empty() ? "none" : s;
  }
  if (v.is_object()) {
    std::string s;
    bool first = true;
    for (const auto& [k, x] : v.items()) {
      s += (first ? "" : ", ") + k + " = " + scalar(x);
      first = false;
    }
    return s.empty() ? "none" : s;
  }
  return v.dump();
}

bool flat(const Report& v) {
  if (v.is_array()) return std::all_of(v.begin(), v.end(), [](const Report& x) { return x.is_primitive(); });
  return v.is_primitive();
}

void render(std::ostringstream& os, const Report& v, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  for (const auto& [k, x] : v.items()) {
    if (flat(x)) {
      os << pad << k << ": " << scalar(x) << "\n";
    } else if (x.is_object()) {
      if (x.empty()) {
        os << pad << k << ": none\n";
      } else {
        os << pad << k << ":\n";
        render(os, x, depth + 1);
      }
    } else {
      os << pad << k << ":\n";
      for (const auto& item : x) os << pad << "  - " << scalar(item) << "\n";
    }
  }
}

}  // namespace

std::string render_table(const Report& report) {
  std::ostringstream os;
  for (const auto& [k, x] : report.items()) {
    if (flat(x)) {
      os << k << ": " << scalar(x) << "\n";
      continue;
    }
    os << "\n[" << k << "]\n";
    if (x.is_object()) {
      render(os, x, 0);
    } else {
      for (const auto& item : x) os << "  - " << scalar(item) << "\n";
    }
  }
  return os.str();
}

}  // namespace fimkit
