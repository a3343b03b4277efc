#pragma once

#include "proctheory/audit.hpp"
#include "proctheory/cpm.hpp"
#include "proctheory/kernels.hpp"
#include "proctheory/subcausal.hpp"

// Single-header json lives in vendor/.
#include "json.hpp"

namespace pt {

using Json = nlohmann::json;

// Scalars: booleans as true/false, naturals as decimal strings, rationals
// as {"num", "den"} strings, Gaussian rationals as {"re", "im"} rationals,
// complex doubles as {"re", "im"} numbers.
Json scalar_to_json(const ScalarValue& s);
ScalarValue scalar_from_json(Backend b, const Json& j);

Json mat_to_json(const Mat& m);  // {"backend", "rows", "cols", "entries"}
Mat mat_from_json(const Json& j);

// Morphism wire format {"backend", "src", "tgt", "payload"}.
Json morphism_to_json(const std::string& backend, int src, int tgt,
                      const Mat& payload);

// Relations: {"dom", "cod", "pairs": [[a, b], ...]}.
Json rel_to_json(const Mat& r);
Mat rel_from_json(const Json& j);

Json cpm_to_json(const CpmMap& f);  // {"in", "out", "choi", "kraus"?}
CpmMap cpm_from_json(const Json& j);

Json kernel_to_json(const KernelRep& k);  // {"ambient", "projection"}
KernelRep kernel_from_json(const Json& j);

Json closure_to_json(const ClosureResult& c);

Json pcm_to_json(const FinitePCM& m);
FinitePCM pcm_from_json(const Json& j);
Json totalisation_to_json(const FinitePCM& m, const TotalisationResult& t);

Json law_report_to_json(const LawReport& r);
Json law_suite_to_json(const LawSuite& s);

Json audit_config_to_json(const AuditConfig& c);
AuditConfig audit_config_from_json(const Json& j);
Json audit_report_to_json(const AuditReport& r);

// Schema of the report formats emitted by the command line tool.
Json report_schema();

}  // namespace pt
