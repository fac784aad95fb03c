#include "expfield/khovanskii.hpp"

#include <set>

namespace expfield {

namespace {

void collect(const ExpPoly& f, std::set<std::string>& symbols, std::size_t& indeterminates) {
  for (const auto& t : ep_terms(f)) {
    for (const auto& [v, e] : t.monomial) {
      if (v.kind == ExpVar::Kind::Symbol)
        symbols.insert(v.name);
      else
        indeterminates = std::max(indeterminates, v.index + 1);
    }
    if (!t.exponent.is_zero()) collect(t.exponent, symbols, indeterminates);
  }
}

void check_shape(const Presentation& p, const KhovanskiiCertificate& cert) {
  const std::size_t n = cert.system.size();
  if (n == 0) throw InputError("certificate " + cert.name + " has no equations");
  if (cert.witness.size() != n)
    throw InputError("certificate " + cert.name + " has " + std::to_string(n) + " equations but a witness of length " +
                     std::to_string(cert.witness.size()));
  std::set<std::string> allowed;
  for (auto g : cert.coefficients) {
    if (g >= p.generator_count()) throw InputError("certificate " + cert.name + " names an unknown coefficient");
    allowed.insert(p.generators()[g]);
  }
  for (const auto& f : cert.system) {
    std::set<std::string> symbols;
    std::size_t used = 0;
    collect(f, symbols, used);
    if (used > n) throw InputError("certificate " + cert.name + " uses X" + std::to_string(used) + " with only " +
                                   std::to_string(n) + " unknowns");
    for (const auto& s : symbols)
      if (!allowed.count(s)) throw InputError("coefficient " + s + " of certificate " + cert.name + " is outside its coefficient set");
  }
}

}  // namespace

Jacobian jacobian(const std::vector<ExpPoly>& system, const FVector& point, const Presentation& p) {
  const std::size_t n = system.size();
  const FieldElement zero = p.constant(Rational(0));
  FMatrix j(n, point.size(), zero);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < point.size(); ++c) j(r, c) = ep_eval(ep_partial(system[r], c), point, p);
  FieldElement det = n == point.size() ? bareiss_determinant(j, zero, p.constant(Rational(1))) : zero;
  return {std::move(j), std::move(det)};
}

WitnessReport verify_witness(const Presentation& p, const KhovanskiiCertificate& cert) {
  check_shape(p, cert);
  WitnessReport r{{}, p.constant(Rational(0)), false, false};
  bool all = true;
  for (const auto& f : cert.system) {
    const bool holds = ep_eval(f, cert.witness, p).is_zero();
    r.equations.push_back(holds);
    all = all && holds;
  }
  r.determinant = jacobian(cert.system, cert.witness, p).determinant;
  r.nonsingular = !r.determinant.is_zero();
  r.ok = all && r.nonsingular;
  return r;
}

EclClReport ecl_implies_cl_check(const PresentationPtr& p, const KhovanskiiCertificate& cert) {
  EclClReport r;
  r.applicable = verify_witness(*p, cert).ok;
  if (!r.applicable) return r;
  const XiSystem sys(p, DiffBase::of(Subfield{cert.coefficients, {}}));
  r.ok = true;
  for (const auto& w : cert.witness) {
    r.members.push_back(sys.kills(w));
    r.ok = r.ok && r.members.back();
  }
  return r;
}

KhovanskiiCertificate certificate_from_decl(const CertificateDecl& decl, const Presentation& p) {
  KhovanskiiCertificate cert;
  cert.name = decl.name;
  for (const auto& [name, e] : decl.equations) cert.system.push_back(expr_to_exp_poly(e, p));
  for (const auto& e : decl.witness) cert.witness.push_back(expr_to_element(e, p));
  for (const auto& g : decl.coeffs) {
    const auto i = p.generator_index(g);
    if (i < 0) throw InputError("unknown coefficient " + g + " in certificate " + decl.name);
    cert.coefficients.push_back(static_cast<std::size_t>(i));
  }
  return cert;
}

std::optional<KhovanskiiCertificate> construct_certificate(const PresentationPtr& p,
                                                           const std::vector<std::size_t>& coefficients) {
  const DiffModule mod = xi_presentation(p, DiffBase::of(Subfield{coefficients, {}}));
  const std::size_t n = mod.columns();
  if (n == 0) return std::nullopt;
  std::vector<ExpPoly> candidates;
  for (const auto& q : p->field()->basis().basis) candidates.push_back(rewrite_poly(mod.chart, q));
  for (const auto& s : mod.chart.structural) candidates.push_back(s);

  KhovanskiiCertificate cert;
  cert.name = p->name() + ".constructed";
  cert.coefficients = coefficients;
  cert.witness = mod.chart.point;
  FMatrix chosen(0, n, p->constant(Rational(0)));
  for (std::size_t i = 0; i < candidates.size() && chosen.rows() < n; ++i) {
    FMatrix trial = chosen;
    trial.append_row(mod.relation_matrix.row(i));
    if (rank_division_free(trial) == trial.rows()) {
      chosen = std::move(trial);
      cert.system.push_back(candidates[i]);
    }
  }
  if (cert.system.size() < n) return std::nullopt;
  return cert;
}

}  // namespace expfield
