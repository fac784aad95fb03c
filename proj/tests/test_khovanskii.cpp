#include <doctest.h>

#include "expfield/khovanskii.hpp"
#include "support.hpp"

using namespace expfield;
using namespace testing_support;

namespace {

const ExpPoly X1 = ExpPoly::indeterminate(0);
const ExpPoly X2 = ExpPoly::indeterminate(1);
ExpPoly q(long n) { return ExpPoly::constant(Rational(n)); }

std::vector<std::pair<Document, KhovanskiiCertificate>> corpus_certificates() {
  std::vector<std::pair<Document, KhovanskiiCertificate>> out;
  for (const auto& f : corpus_files()) {
    const Document d = corpus(f);
    for (const auto& c : d.certificates()) out.emplace_back(d, certificate_from_decl(c, *d.presentation(c.field)));
  }
  return out;
}

}  // namespace

TEST_CASE("jacobian examples") {
  const auto pa = corpus("anchor.efd").presentation("pa");
  const auto c = pa->constant(Rational(3));
  auto j = jacobian({X1 - q(3)}, {c}, *pa);
  CHECK(j.matrix(0, 0) == pa->constant(Rational(1)));
  CHECK(j.determinant == pa->constant(Rational(1)));

  j = jacobian({X1 * X1}, {pa->constant(Rational(0))}, *pa);
  CHECK(j.determinant.is_zero());

  const auto E = ExpPoly::symbol("E");
  const auto r = ExpPoly::symbol("r");
  const auto a = gen(*pa, "x");
  const auto s = gen(*pa, "s");
  j = jacobian({ep_exp(X1) - E, X2 * X2 - r}, {a, s}, *pa);
  CHECK(j.determinant == gen(*pa, "E") * s.scaled(2));
}

TEST_CASE("witness verification examples") {
  const auto pa = corpus("anchor.efd").presentation("pa");
  const KhovanskiiCertificate linear{"linear", {X1 - q(3)}, {pa->constant(Rational(3))}, {}};
  CHECK(verify_witness(*pa, linear).ok);

  const KhovanskiiCertificate square{"square", {X1 * X1}, {pa->constant(Rational(0))}, {}};
  const auto w = verify_witness(*pa, square);
  CHECK(w.equations.front());
  CHECK_FALSE(w.nonsingular);
  CHECK_FALSE(w.ok);
  CHECK_FALSE(ecl_implies_cl_check(pa, square).applicable);

  const auto E = ExpPoly::symbol("E");
  const KhovanskiiCertificate expo{"expo", {ep_exp(X1) - E}, {gen(*pa, "x")}, {3}};
  CHECK(verify_witness(*pa, expo).ok);
  CHECK(ecl_implies_cl_check(pa, expo).ok);

  const KhovanskiiCertificate wrong{"wrong", {X1 - q(1)}, {pa->constant(Rational(2))}, {}};
  CHECK_FALSE(verify_witness(*pa, wrong).ok);
}

TEST_CASE("certificate shape errors") {
  const auto pa = corpus("anchor.efd").presentation("pa");
  const auto E = ExpPoly::symbol("E");
  CHECK_THROWS_AS(verify_witness(*pa, {"scope", {ep_exp(X1) - E}, {gen(*pa, "x")}, {}}), InputError);
  CHECK_THROWS_AS(verify_witness(*pa, {"length", {X1}, {}, {}}), InputError);
  CHECK_THROWS_AS(verify_witness(*pa, {"empty", {}, {}, {}}), InputError);
  CHECK_THROWS_AS(verify_witness(*pa, {"unknowns", {X2}, {gen(*pa, "x")}, {}}), InputError);
}

TEST_CASE("corpus certificates verify and lie in the closure") {
  const auto certs = corpus_certificates();
  CHECK(certs.size() >= 10);
  for (const auto& [doc, cert] : certs) {
    CAPTURE(cert.name);
    const auto p = doc.presentation(doc.find_certificate(cert.name)->field);
    CHECK(verify_witness(*p, cert).ok);
    const auto r = ecl_implies_cl_check(p, cert);
    CHECK(r.applicable);
    CHECK(r.ok);
  }
}

TEST_CASE("permuting equations flips the determinant sign") {
  for (const auto& [doc, cert] : corpus_certificates()) {
    if (cert.system.size() < 2) continue;
    CAPTURE(cert.name);
    const auto p = doc.presentation(doc.find_certificate(cert.name)->field);
    KhovanskiiCertificate swapped = cert;
    std::swap(swapped.system[0], swapped.system[1]);
    const auto a = verify_witness(*p, cert);
    const auto b = verify_witness(*p, swapped);
    CHECK(b.determinant == -a.determinant);
    CHECK(a.ok == b.ok);
  }
}

TEST_CASE("a redundant equation keeps the certificate valid") {
  for (const auto& [doc, cert] : corpus_certificates()) {
    CAPTURE(cert.name);
    const auto p = doc.presentation(doc.find_certificate(cert.name)->field);
    const std::size_t n = cert.system.size();
    KhovanskiiCertificate longer = cert;
    longer.system.push_back(ExpPoly::indeterminate(n) - q(7));
    longer.witness.push_back(p->constant(Rational(7)));
    const auto a = verify_witness(*p, cert);
    const auto b = verify_witness(*p, longer);
    CHECK(b.ok == a.ok);
    CHECK(b.determinant == a.determinant);
  }
}

TEST_CASE("certificates constructed from a zero-dimensional xi") {
  const auto pa = corpus("anchor.efd").presentation("pa");
  const auto cert = construct_certificate(pa, pa->base_generators());
  REQUIRE(cert);
  CHECK(verify_witness(*pa, *cert).ok);
  CHECK(ecl_implies_cl_check(pa, *cert).ok);

  const auto free1 = corpus("free1.efd").presentation("free1");
  CHECK_FALSE(construct_certificate(free1, {}));

  for (const auto& f : corpus_fields()) {
    const auto& p = f.p;
    if (xi_dim(p, DiffBase::of(p->base_subfield())) != 0) continue;
    CAPTURE(p->name());
    const auto c = construct_certificate(p, p->base_generators());
    if (!c) continue;
    CHECK(verify_witness(*p, *c).ok);
  }
}
