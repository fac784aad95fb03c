#include "expfield/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <map>
#include <ostream>

#include "expfield/differentials.hpp"
#include "expfield/document.hpp"
#include "expfield/groebner.hpp"
#include "expfield/khovanskii.hpp"
#include "expfield/predimension.hpp"
#include "expfield/schanuel.hpp"

namespace expfield {

namespace {

using json = nlohmann::ordered_json;

struct Flags {
  std::string over = "Q";
  long bound = 3;
  std::string format = "json";
  std::string assert_verdict;
  bool timing = false;
  bool strict = false;
  bool parallel = false;
};

json strings(const std::vector<std::string>& v) { return json(v); }

json coordinates_json(const Presentation& p, const std::vector<QVector>& coords) {
  json out = json::array();
  for (const auto& c : coords) out.push_back(describe_coordinates(p, c));
  return out;
}

json elements_json(const FVector& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(e.to_string());
  return out;
}

class Session {
 public:
  Session(Document doc, Flags flags) : doc_(std::move(doc)), flags_(std::move(flags)) {}

  const Document& doc() const { return doc_; }
  const Flags& flags() const { return flags_; }

  PresentationPtr raw(const std::string& name) const { return doc_.presentation(name); }

  ValidationReport validation(const std::string& name) const {
    const auto p = raw(name);
    const FieldDecl* decl = doc_.find_field(name);
    if (decl != nullptr && !decl->base_name.empty()) {
      const auto base = raw(decl->base_name);
      return p->validate(base.get());
    }
    return p->validate();
  }

  // A presentation that passed validation.
  PresentationPtr field(const std::string& name) {
    if (auto it = validated_.find(name); it != validated_.end()) return it->second;
    const auto report = validation(name);
    for (const auto& c : report.checks)
      if (!c.passed) throw InputError("field " + name + " fails validation (" + c.check + "): " + c.detail);
    const auto p = raw(name);
    validated_.emplace(name, p);
    return p;
  }

  FieldElement element(const Presentation& p, const std::string& text) const {
    const auto exprs = parse_expr_list("(" + text + ")");
    if (exprs.size() != 1) throw InputError("expected one element, got " + text);
    return expr_to_element(exprs.front(), p);
  }

  FVector tuple(const Presentation& p, const std::string& text) const {
    std::vector<ExprPtr> exprs;
    if (!text.empty() && text.front() == '(') {
      exprs = parse_expr_list(text);
    } else {
      const TupleDecl* t = doc_.find_tuple(text);
      if (t == nullptr) throw InputError("no tuple named " + text + " (write tuples as (e1, e2, ...))");
      if (t->field != p.name()) throw InputError("tuple " + text + " belongs to field " + t->field + ", not " + p.name());
      exprs = t->entries;
    }
    FVector out;
    for (const auto& e : exprs) out.push_back(expr_to_element(e, p));
    return out;
  }

  Subfield over(const Presentation& p) const {
    const std::string& o = flags_.over;
    if (o.empty() || o == "Q") return Subfield::empty();
    if (o == "base") return p.base_subfield();
    Subfield s;
    auto add_generator = [&](const std::string& g) {
      const auto i = p.generator_index(g);
      if (i < 0) throw InputError("--over names " + g + ", which is not a generator of " + p.name());
      s.generators.push_back(static_cast<std::size_t>(i));
    };
    if (o.front() == '{') {
      for (const auto& g : parse_id_set(o)) add_generator(g);
    } else if (o.front() == '(') {
      for (const auto& h : tuple(p, o)) s.span.push_back(p.a_coordinates(h));
    } else if (const FieldDecl* f = doc_.find_field(o)) {
      for (const auto& g : raw(f->name)->generators()) add_generator(g);
    } else {
      throw InputError("--over expects Q, base, {ids}, (tuple) or a field name; got " + o);
    }
    return s;
  }

  SearchOptions search() const { return {flags_.bound, flags_.parallel}; }

 private:
  Document doc_;
  Flags flags_;
  std::map<std::string, PresentationPtr> validated_;
};

using Args = std::vector<std::string>;

void require(const Args& args, std::size_t n, const std::string& usage) {
  if (args.size() != n) throw InputError("usage: " + usage);
}

json delta_json(const DeltaReport& d) {
  json j;
  j["tuple"] = strings(d.tuple);
  j["over"] = d.over;
  j["td"] = d.td_value;
  j["ldim"] = d.ldim_value;
  j["delta"] = d.delta;
  return j;
}

// Each command fills `result` and returns its verdict.
using Command = std::function<std::string(Session&, const Args&, json& report, json& result)>;

std::string cmd_validate(Session& s, const Args& a, json& report, json& result) {
  require(a, 1, "validate FIELD");
  report["field"] = a[0];
  const auto r = s.validation(a[0]);
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j;
    j["check"] = c.check;
    j["passed"] = c.passed;
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (!c.witness.empty()) j["witness"] = c.witness;
    checks.push_back(j);
  }
  const auto p = s.raw(a[0]);
  result["generators"] = strings(p->generators());
  json basis = json::array();
  for (auto k : p->basis()) basis.push_back(p->generators()[p->exps()[k].arg]);
  result["a_basis"] = basis;
  result["checks"] = checks;
  return r.ok() ? "valid" : "invalid";
}

std::string cmd_td(Session& s, const Args& a, json& report, json& result) {
  require(a, 2, "td FIELD TUPLE");
  const auto p = s.field(a[0]);
  report["field"] = a[0];
  const Subfield over = s.over(*p);
  report["over"] = describe_subfield(*p, over);
  const auto t = s.tuple(*p, a[1]);
  result["tuple"] = elements_json(t);
  const auto v = td(*p, t, over);
  result["td"] = v;
  return std::to_string(v);
}

std::string cmd_ldim(Session& s, const Args& a, json& report, json& result) {
  require(a, 2, "ldim FIELD TUPLE");
  const auto p = s.field(a[0]);
  report["field"] = a[0];
  const Subfield over = s.over(*p);
  report["over"] = describe_subfield(*p, over);
  const auto t = s.tuple(*p, a[1]);
  result["tuple"] = elements_json(t);
  const auto v = ldim_q(*p, t, over);
  result["ldim"] = v;
  return std::to_string(v);
}

std::string cmd_delta(Session& s, const Args& a, json& report, json& result) {
  require(a, 2, "delta FIELD TUPLE");
  const auto p = s.field(a[0]);
  report["field"] = a[0];
  const Subfield over = s.over(*p);
  report["over"] = describe_subfield(*p, over);
  const auto d = delta(*p, s.tuple(*p, a[1]), over);
  result = delta_json(d);
  return std::to_string(d.delta);
}

std::string cmd_xi_dim(Session& s, const Args& a, json& report, json& result) {
  require(a, 1, "xi-dim FIELD");
  const auto p = s.field(a[0]);
  report["field"] = a[0];
  const Subfield over = s.over(*p);
  report["over"] = describe_subfield(*p, over);
  const XiSystem sys(p, DiffBase::of(over));
  const auto& mod = sys.module();
  result["basis_symbols"] = strings(mod.basis_symbols);
  json rows = json::array();
  for (std::size_t r = 0; r < mod.relation_matrix.rows(); ++r) {
    json row;
    row["source"] = mod.row_sources[r];
    row["entries"] = elements_json(FVector(mod.relation_matrix.row(r).begin(), mod.relation_matrix.row(r).end()));
    rows.push_back(row);
  }
  result["relation_rows"] = rows;
  result["constant_rows"] = mod.constant_rows.rows();
  result["lambda_forms"] = strings(mod.lambda_forms);
  result["rank"] = sys.rank();
  result["xi_dim"] = sys.dimension();
  result["eder_dim"] = sys.kernel_dimension();
  return std::to_string(sys.dimension());
}

std::string cmd_cl_member(Session& s, const Args& a, json& report, json& result) {
  require(a, 2, "cl-member FIELD ELEMENT");
  const auto p = s.field(a[0]);
  report["field"] = a[0];
  const Subfield over = s.over(*p);
  report["over"] = describe_subfield(*p, over);
  const auto h = s.element(*p, a[1]);
  result["element"] = h.to_string();
  const bool member = cl_member(p, DiffBase::of(over), h);
  result["member"] = member;
  return member ? "member" : "not_member";
}

std::string cmd_exchange(Session& s, const Args& a, json& report, json& result) {
  require(a, 3, "exchange FIELD A B");
  const auto p = s.field(a[0]);
  report["field"] = a[0];
  const Subfield over = s.over(*p);
  report["over"] = describe_subfield(*p, over);
  const auto x = s.element(*p, a[1]);
  const auto y = s.element(*p, a[2]);
  const DiffBase c = DiffBase::of(over);
  const bool a_in_c = XiSystem(p, c).kills(x);
  const bool a_in_cb = XiSystem(p, c.with(y)).kills(x);
  const bool b_in_ca = XiSystem(p, c.with(x)).kills(y);
  result["a"] = x.to_string();
  result["b"] = y.to_string();
  result["a_in_cl_C"] = a_in_c;
  result["a_in_cl_Cb"] = a_in_cb;
  result["b_in_cl_Ca"] = b_in_ca;
  const bool holds = a_in_c || !a_in_cb || b_in_ca;
  result["holds"] = holds;
  return holds ? "holds" : "violated";
}

std::pair<PresentationPtr, KhovanskiiCertificate> certificate(Session& s, const std::string& name, json& report) {
  const CertificateDecl* decl = s.doc().find_certificate(name);
  if (decl == nullptr) throw InputError("no khovanskii certificate named " + name);
  const auto p = s.field(decl->field);
  report["certificate"] = name;
  report["field"] = decl->field;
  return {p, certificate_from_decl(*decl, *p)};
}

std::string cmd_khovanskii_verify(Session& s, const Args& a, json& report, json& result) {
  require(a, 1, "khovanskii-verify CERTIFICATE");
  const auto [p, cert] = certificate(s, a[0], report);
  const auto w = verify_witness(*p, cert);
  json eqs = json::array();
  for (std::size_t i = 0; i < cert.system.size(); ++i) {
    json e;
    e["equation"] = cert.system[i].to_string();
    e["holds"] = static_cast<bool>(w.equations[i]);
    eqs.push_back(e);
  }
  result["equations"] = eqs;
  result["witness"] = elements_json(cert.witness);
  result["jacobian_det"] = w.determinant.to_string();
  result["nonsingular"] = w.nonsingular;
  return w.ok ? "verified" : "rejected";
}

std::string cmd_ecl_cl_check(Session& s, const Args& a, json& report, json& result) {
  require(a, 1, "ecl-cl-check CERTIFICATE");
  const auto [p, cert] = certificate(s, a[0], report);
  const auto r = ecl_implies_cl_check(p, cert);
  result["verified"] = r.applicable;
  json members = json::array();
  for (std::size_t i = 0; i < r.members.size(); ++i) {
    json m;
    m["element"] = cert.witness[i].to_string();
    m["cl_member"] = static_cast<bool>(r.members[i]);
    members.push_back(m);
  }
  result["members"] = members;
  if (!r.applicable) return "not_applicable";
  return r.ok ? "holds" : "violated";
}

std::string cmd_strong(Session& s, const Args& a, json& report, json& result) {
  require(a, 2, "strong BASE_FIELD FIELD");
  const auto f1 = s.field(a[0]);
  const auto f2 = s.field(a[1]);
  report["fields"] = a;
  report["bound"] = s.flags().bound;
  const auto r = is_strong(f1, f2, s.search());
  result["new_dimension"] = r.new_dimension;
  result["candidates"] = r.candidates;
  if (r.witness) result["witness"] = delta_json(*r.witness);
  return r.strong ? "strong_up_to_bound" : "not_strong";
}

std::string cmd_extend_derivation(Session& s, const Args& a, json& report, json& result) {
  require(a, 3, "extend-derivation BASE_FIELD FIELD \"(x = 1, ...)\"");
  const auto f1 = s.field(a[0]);
  const auto f2 = s.field(a[1]);
  report["fields"] = json::array({a[0], a[1]});
  std::vector<std::pair<std::string, FieldElement>> values;
  for (const auto& [name, e] : parse_assignments(a[2])) values.emplace_back(name, expr_to_element(e, *f1));
  const Derivation d = make_derivation(f1, values);
  json given;
  for (std::size_t i = 0; i < d.columns.size(); ++i) given["d(" + d.columns[i] + ")"] = d.values[i].to_string();
  result["given"] = given;
  try {
    const Derivation e = extend_derivation(f1, f2, d);
    json values_json;
    for (std::size_t i = 0; i < e.columns.size(); ++i) values_json["d(" + e.columns[i] + ")"] = e.values[i].to_string();
    result["extension"] = values_json;
    const auto check = verify_derivation(e);
    result["verified"] = check.ok;
    if (!check.ok) result["failures"] = strings(check.failures);
    return "extended";
  } catch (const NoExtension& ex) {
    result["reason"] = ex.what();
    return "no_extension";
  }
}

std::string cmd_ax_check(Session& s, const Args& a, json& report, json& result) {
  require(a, 2, "ax-check FIELD TUPLE");
  const auto p = s.field(a[0]);
  report["field"] = a[0];
  const Subfield over = s.over(*p);
  report["over"] = describe_subfield(*p, over);
  const auto t = s.tuple(*p, a[1]);
  const auto r = ax_inequality_check(p, over, t, s.flags().strict);
  result["tuple"] = elements_json(t);
  result["closed"] = r.closed;
  result["over_used"] = describe_subfield(*p, r.used);
  result["delta"] = r.delta;
  result["dim"] = r.dim;
  return r.holds ? "holds" : "violated";
}

std::string cmd_dim(Session& s, const Args& a, json& report, json& result) {
  require(a, 2, "dim FIELD TUPLE");
  const auto p = s.field(a[0]);
  report["field"] = a[0];
  report["bound"] = s.flags().bound;
  const auto t = s.tuple(*p, a[1]);
  const auto r = dim_via_min_delta(p, t, s.search());
  result["tuple"] = elements_json(t);
  result["cl_empty"] = describe_subfield(*p, r.c0);
  result["min_delta"] = r.min_delta;
  result["xi_rank"] = r.xi_rank;
  result["argmin"] = coordinates_json(*p, r.argmin);
  result["candidates"] = r.candidates;
  return std::to_string(r.min_delta);
}

std::string cmd_chain(Session& s, const Args& a, json& report, json& result) {
  require(a, 1, "chain FIELD");
  const auto p = s.field(a[0]);
  report["field"] = a[0];
  report["bound"] = s.flags().bound;
  const auto r = decompose_chain(p, s.search());
  json steps = json::array();
  for (const auto& st : r.steps) {
    json j;
    j["adjoined"] = coordinates_json(*p, st.adjoined);
    j["delta"] = st.delta;
    j["td"] = st.td_step;
    j["strong"] = st.strong;
    j["field"] = describe_subfield(*p, st.field);
    steps.push_back(j);
  }
  result["base"] = describe_subfield(*p, p->base_subfield());
  result["steps"] = steps;
  result["all_strong"] = r.all_strong;
  result["transitive"] = r.transitive;
  result["complete"] = r.complete;
  return r.all_strong && r.transitive && r.complete ? "decomposed" : "failed";
}

std::string cmd_essential(Session& s, const Args& a, json& report, json& result) {
  require(a, 2, "essential FIELD TUPLE");
  const auto p = s.field(a[0]);
  report["field"] = a[0];
  const Subfield over = s.over(*p);
  report["over"] = describe_subfield(*p, over);
  report["bound"] = s.flags().bound;
  const auto r = essential_check(p, s.tuple(*p, a[1]), over, s.search());
  result["tuple"] = strings(r.tuple);
  result["delta"] = r.delta;
  result["counterexample"] = r.delta < 0;
  result["candidates"] = r.candidates;
  if (!r.essential) {
    result["counter"] = strings(r.counter);
    result["counter_delta"] = r.counter_delta;
  }
  if (r.cl_members) {
    json m = json::array();
    for (bool b : *r.cl_members) m.push_back(b);
    result["cl_members"] = m;
  }
  return r.essential ? "essential_up_to_bound" : "not_essential";
}

std::string cmd_ax_fact(Session& s, const Args& a, json& report, json& result) {
  require(a, 1, "ax-fact FIELD");
  const auto p = s.field(a[0]);
  report["field"] = a[0];
  const Subfield over = s.flags().over == "Q" ? p->base_subfield() : s.over(*p);
  report["over"] = describe_subfield(*p, over);
  report["bound"] = s.flags().bound;
  const auto r = ax_fact_witness(p, over, s.flags().bound);
  result["new_basis"] = r.omega.n;
  result["omega_rank"] = r.omega.rank;
  result["dependent"] = r.omega.dependent();
  if (!r.applicable) return "not_applicable";
  result["candidates"] = r.candidates_tried;
  if (!r.m) return "none_within_bound";
  json m = json::array();
  for (const auto& x : *r.m) m.push_back(x.get_si());
  result["m"] = m;
  result["b"] = r.b;
  return "found";
}

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table = {
      {"validate", cmd_validate},
      {"td", cmd_td},
      {"ldim", cmd_ldim},
      {"delta", cmd_delta},
      {"xi-dim", cmd_xi_dim},
      {"cl-member", cmd_cl_member},
      {"exchange", cmd_exchange},
      {"khovanskii-verify", cmd_khovanskii_verify},
      {"ecl-cl-check", cmd_ecl_cl_check},
      {"strong", cmd_strong},
      {"extend-derivation", cmd_extend_derivation},
      {"ax-check", cmd_ax_check},
      {"dim", cmd_dim},
      {"chain", cmd_chain},
      {"essential", cmd_essential},
      {"ax-fact", cmd_ax_fact},
  };
  return table;
}

bool verdict_matches(const std::string& verdict, const std::string& asserted) {
  return verdict == asserted || verdict == asserted + "_up_to_bound";
}

void print_text(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) print_text(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_string()) {
    out << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

void emit(const json& report, const std::string& format, std::ostream& out) {
  if (format == "text")
    print_text(report, "", out);
  else
    out << report.dump(2) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with finitely presented partial exponential fields", "expfield"};
  std::string command, document;
  std::vector<std::string> rest;
  Flags flags;
  std::string names;
  for (const auto& [name, fn] : commands()) names += (names.empty() ? "" : " | ") + name;
  app.add_option("command", command, names)->required();
  app.add_option("document", document, "presentation document (.efd)")->required();
  app.add_option("args", rest, "command arguments: field names, tuples (e1, e2, ...), elements, certificates");
  app.add_option("--over", flags.over, "constants: Q, base, {ids}, (tuple) or a field name")->capture_default_str();
  app.add_option("--bound", flags.bound, "height bound for searches")->capture_default_str()->check(CLI::Range(0L, 50L));
  app.add_option("--format", flags.format, "report format")->capture_default_str()->check(CLI::IsMember({"json", "text"}));
  app.add_option("--assert", flags.assert_verdict, "exit 1 unless the verdict is VERDICT");
  app.add_flag("--timing", flags.timing, "include wall-clock time in the report");
  app.add_flag("--strict", flags.strict, "ax-check: reject a base that is not cl-closed");
  app.add_flag("--parallel", flags.parallel, "run searches with OpenMP");

  std::vector<std::string> argv{"expfield"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "expfield: " << e.what() << "\n";
    return kExitInput;
  }

  json report;
  report["command"] = command;
  report["document"] = document;
  report["args"] = rest;
  const auto start = std::chrono::steady_clock::now();
  int status = kExitOk;
  try {
    set_default_spair_budget(kSpairBudget);
    if (const char* budget = std::getenv("EXPFIELD_SPAIR_BUDGET")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(budget, &end, 10);
      if (end == budget || *end != '\0') throw InputError(std::string("EXPFIELD_SPAIR_BUDGET is not a number: ") + budget);
      set_default_spair_budget(static_cast<std::size_t>(v));
    }
    const auto it = commands().find(command);
    if (it == commands().end()) throw InputError("unknown command " + command + " (expected " + names + ")");
    Session session(Document::load(document), flags);
    json result = json::object();
    const std::string verdict = it->second(session, rest, report, result);
    report["verdict"] = verdict;
    report["result"] = result;
    if (!flags.assert_verdict.empty()) {
      report["asserted"] = flags.assert_verdict;
      if (!verdict_matches(verdict, flags.assert_verdict)) status = kExitAssertion;
    }
  } catch (const ResourceLimit& e) {
    status = kExitResource;
    report["error"] = {{"kind", "resource_limit"}, {"message", e.what()}};
  } catch (const DimensionMismatch& e) {
    status = kExitResource;
    report["error"] = {{"kind", "bound_too_small"}, {"message", e.what()}};
  } catch (const ParseError& e) {
    status = kExitInput;
    report["error"] = {{"kind", "syntax"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}};
  } catch (const Error& e) {
    status = kExitInput;
    report["error"] = {{"kind", "input"}, {"message", e.what()}};
  }
  if (flags.timing)
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report["exit"] = status;
  if (report.contains("error")) err << "expfield: " << report["error"]["message"].get<std::string>() << "\n";
  emit(report, flags.format, out);
  return status;
}

}  // namespace expfield
