#pragma once

#include <optional>

#include "proctheory/kernels.hpp"
#include "proctheory/phased.hpp"
#include "proctheory/report.hpp"
#include "proctheory/spek.hpp"
#include "proctheory/theory.hpp"

namespace pt {

// The audited principles. The last two are informational companions: the
// round trip realizes the reconstruction pipeline at desk scale, and the
// tomography entry reports real-versus-complex separation status without
// electing it a principle.
enum class Principle {
  strong_purification,
  pure_exclusion,
  kernels_causally_complemented,
  conditioning_addition,
  internal_isomorphism,
  homogeneity,
  perfect_distinguishability,
  ideal_compression,
  purity_coincidence,
  covering_law,
  causal_decomposition,
  phased_ring_scalars,
  boundedness_dims,
  min_dilation,
  reconstruction_roundtrip,
  local_tomography_info,
};

std::string principle_name(Principle p);
std::optional<Principle> principle_from_name(const std::string& s);
std::vector<Principle> all_principles();
// Short statement of what the check verifies (included in reports).
std::string principle_statement(Principle p);

struct AuditConfig {
  std::string backend = "cpm_c";  // cpm_c | cpm_r | mspek
  std::vector<int> dims = {2, 3};
  int samples = 50;
  uint64_t seed = 42;
  double tol = 1e-9;
  std::vector<std::string> checks = {"all"};
  std::optional<MutantKind> mutant;  // deliberate corruption for detection
  int spek_bound = 1;                // audited object bound for mspek
  size_t spek_budget = 100000;
};

struct AuditEntry {
  Principle principle;
  std::string statement;
  LawReport report;
  bool informational = false;
};

struct AuditReport {
  AuditConfig config;
  std::vector<AuditEntry> entries;
  bool pass() const {
    for (const auto& e : entries)
      if (!e.informational && !e.report.pass()) return false;
    return true;
  }
};

AuditReport run_audit(const AuditConfig& config);

// --- Individual checks over float CPM theories -------------------------------

struct AuditCtx {
  CpmTheory theory;
  std::vector<int> dims;
  int samples = 50;
  uint64_t seed = 42;
  double tol = 1e-9;
  std::optional<MutantKind> mutant;

  Rng rng(const std::string& name) const { return Rng(seed).fork(name); }
  // Kernel isometry of the theory; the non-isometric-kernel mutant scales it.
  Mat kernel_iso(const CMat& iso) const;
  bool real_only() const { return theory.real_only(); }
};

LawReport check_strong_purification(const AuditCtx& c);
LawReport check_pure_exclusion(const AuditCtx& c);
LawReport check_causal_complementation(const AuditCtx& c);
LawReport check_conditioning_addition(const AuditCtx& c);
LawReport check_internal_isomorphism(const AuditCtx& c);
LawReport check_homogeneity(const AuditCtx& c);
LawReport check_perfect_distinguishability(const AuditCtx& c);
LawReport check_ideal_compression(const AuditCtx& c);
LawReport check_purity_coincidence(const AuditCtx& c);
LawReport check_covering_law_audit(const AuditCtx& c);
LawReport check_causal_decomposition(const AuditCtx& c);
LawReport check_phased_ring_scalars(const AuditCtx& c);
LawReport check_boundedness_dims(const AuditCtx& c);
LawReport check_min_dilation(const AuditCtx& c);
// Pipeline pure-subcategory -> phase quotient -> reconstruction -> doubling,
// compared against the original channels in Choi distance; also exercises
// quotient soundness (where the non-central-phase mutant shows up).
LawReport check_reconstruction_roundtrip(const AuditCtx& c);
LawReport check_local_tomography_info(const AuditCtx& c);

// Dimension recovery by iterated kernel-state splitting; exact for n <= dims.
std::optional<int> recover_dimension(const AuditCtx& c, int dim);

// --- The MSpek instantiation --------------------------------------------------

struct SpekAuditData {
  ClosureResult spek;
  ClosureResult mspek;
  int audited_bound = 1;
};
// Generates both closures (environment bound = audited bound + 1); throws
// with a diagnostic when the closure fails to saturate.
SpekAuditData make_spek_audit_data(int audited_bound, size_t budget);

LawReport check_spek_purification(const SpekAuditData& d);
LawReport check_spek_pure_exclusion(const SpekAuditData& d);
LawReport check_spek_cp_axiom(const SpekAuditData& d, int samples,
                              uint64_t seed);

}  // namespace pt
