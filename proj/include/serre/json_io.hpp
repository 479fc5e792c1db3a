#pragma once

#include <string>

#include "json.hpp"
#include "serre/autgroup.hpp"
#include "serre/coeureloeb.hpp"
#include "serre/serreclass.hpp"

namespace serre {

using Json = nlohmann::ordered_json;

// Exact scalars travel as strings ("p/q", big integers) or plain JSON integers
// when they fit; both forms parse back to the same value.
Json rat_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json int_json(const Int& n);
Int int_from_json(const Json& j);
Json mat_json(const Mat2Z& A);
Mat2Z mat_from_json(const Json& j);
Json vec2q_json(const Vec2Q& v);
Vec2Q vec2q_from_json(const Json& j);
Json surd_json(const QuadraticSurd& s);
Json vec2s_json(const Vec2S& v);

Json phi_json(const PhiSpec& phi);
PhiSpec phi_from_json(const Json& j);
Json psi_json(const PsiSpec& psi);
PsiSpec psi_from_json(const Json& j);

// Model files: {"kind": ..., ...}; parsing validates the structure against the
// shipped schema and routes through the make_* factories, so every model
// invariant is enforced on ingest.
Json model_to_json(const LogDomainModel& m);
LogDomainModel model_from_json(const Json& j);
LogDomainModel load_model(const std::string& path);

Json verdict_to_json(const Verdict& v);
Json verify_report_json(const VerifyReport& r);
Json aut_class_json(const AutClass& c);
Json orbit_witness_json(const OrbitWitness& w);
Json cone_json(const Cone2& c);

Json aut_spec_json(const AutSpec& a);
Json psh_json(const PshReport& r);
Json bound_json(const BoundReport& r);
Json exhaustion_json(const ExhaustionReport& r);

Json cl_params_json(const CLParams& p);
Json membership_json(const MembershipReport& r);
Json reduction_json(const ReductionReport& r);
Json blowup_json(const BlowupTable& t);

std::string read_text(const std::string& path);
// temp file + rename, so readers never observe a half-written artifact
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace serre
