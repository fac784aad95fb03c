#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expfield/differentials.hpp"
#include "expfield/document.hpp"

namespace expfield {

// n exponential polynomials in X1..Xn with coefficient symbols drawn from a
// generator subset B, and a proposed solution.
struct KhovanskiiCertificate {
  std::string name;
  std::vector<ExpPoly> system;
  FVector witness;
  std::vector<std::size_t> coefficients;  // generator indices of B
};

struct Jacobian {
  FMatrix matrix;
  FieldElement determinant;
};

// Entries d f_i / d X_j at the point; throws ExpUndefined from evaluation.
Jacobian jacobian(const std::vector<ExpPoly>& system, const FVector& point, const Presentation& p);

struct WitnessReport {
  std::vector<bool> equations;  // f_i(witness) = 0
  FieldElement determinant;
  bool nonsingular = false;
  bool ok = false;
};

// Throws InputError when the system uses a symbol outside B, an
// indeterminate past X_n, or the lengths disagree.
WitnessReport verify_witness(const Presentation& p, const KhovanskiiCertificate& cert);

struct EclClReport {
  bool applicable = false;           // the certificate verified
  std::vector<bool> members;         // cl_member(B, witness_i)
  bool ok = false;                   // applicable and every entry is a member
};
EclClReport ecl_implies_cl_check(const PresentationPtr& p, const KhovanskiiCertificate& cert);

KhovanskiiCertificate certificate_from_decl(const CertificateDecl& decl, const Presentation& p);

// A certificate for the chart columns over C from n independent relation
// rows, when Xi(F/C) = 0; nullopt otherwise.
std::optional<KhovanskiiCertificate> construct_certificate(const PresentationPtr& p, const std::vector<std::size_t>& coefficients);

}  // namespace expfield
