#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "serre/model.hpp"
#include "serre/polyhedra.hpp"
#include "serre/stehle.hpp"

namespace serre {

enum class CaseLabel {
  T2,
  T1Compact,
  T1Model4,
  T1Model5,
  T1Model6,
  T0Compact,
  T0Parabolic,
  T0Hyperbolic,
};

const char* case_label_name(CaseLabel c);

// Membership carried by a classical result; no numeric payload to recheck.
struct AxiomCertificate {
  std::string result;
};

// Stehle-criterion evidence for the attached exhaustion function, taken after
// moving the domain into its named position by x -> Ux + btilde.
struct StehleCertificate {
  std::string exhaustion;
  Mat2Z U = Mat2Z::identity();
  Vec2Q btilde;
  std::vector<AutSpec> generators;
  PshReport psh;
  std::vector<BoundReport> bounds;  // one per generator
  ExhaustionReport exhausted;
  std::optional<double> invariance_residual;  // exp-profile only: sup |u~ o Phi - u~|
};

struct HyperbolicCertificate {
  Mat2Z A;
  QuadraticSurd lambda;
  Direction2 v, w;
  bool exact = false;       // profile equation rechecked in exact arithmetic
  long reductions = 0;
  double max_residual = 0;  // sup |phi(lambda t) - phi(t) / lambda|
};

struct Verdict {
  bool member = false;
  CaseLabel case_label = CaseLabel::T0Hyperbolic;
  std::variant<AxiomCertificate, StehleCertificate, HyperbolicCertificate> certificate;
  std::vector<std::string> provenance;
};

// Sizes for the evidence attached by classify_serre; kept small so a full bundle
// classifies in well under a second. verify_certificate reruns at full size.
struct ClassifyOptions {
  GridSpec grid{8, 8, 8, 8, 0.08};
  long bound_samples = 20000;
  long exhaustion_samples = 1000;
  std::vector<double> levels{1, 2, 4, 8};
  long phi_reductions = 1000;
};

// Built-in self-map generators used as Stehle-criterion witnesses: Mobius and
// rotation pairs for the disk bundles, the shear and its inverse for the
// parabolic models; empty when the model carries no attached family.
std::vector<AutSpec> model_generators(const LogDomainModel& m);

// Decides Serre-class membership with a certificate. Exactly the hyperbolic-type
// symmetry case (unimodular matrix with eigenvalue lambda > 1 acting on the log
// image) is a non-member; every other hyperbolic pseudoconvex Reinhardt model is
// a member by axis count, compactness, or an explicit Stehle exhaustion.
Verdict classify_serre(const LogDomainModel& m, const ClassifyOptions& opts = {});

struct VerifyReport {
  bool pass = false;
  std::vector<std::pair<std::string, double>> residuals;
};

// Recheck a verdict against its model: exact matrix and eigendirection data plus
// the profile functional equation for non-members; the full-size Stehle suite for
// members. Structural tampering throws CertificateMismatch.
VerifyReport verify_certificate(const Verdict& vd, const LogDomainModel& m);

// Smallest-trace unimodular matrix with trace >= 3 whose eigenlines carry the wedge rays,
// searched over |entries| <= entry_bound. Ties broken deterministically (fewest negative
// entries, then lexicographic). None is exact when a ray is rational: a trace >= 3 unit
// matrix has an irrational eigenvalue, hence irrational eigenlines. Otherwise "none up to
// the bound" is a semi-decision.
std::optional<Mat2Z> find_hyperbolic_matrix(const Cone2& cone, long entry_bound = 50);

}  // namespace serre
