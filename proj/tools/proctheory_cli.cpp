// Command line front end: law suites, principle audits, relational closures,
// quotient round trips, and bounded totalisation, with text or JSON reports.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "proctheory/json_io.hpp"

namespace {

using namespace pt;

struct CommonOpts {
  int samples = 200;
  uint64_t seed = 42;
  double tol = 1e-9;
  std::string format = "text";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--samples", o.samples, "samples per check");
  cmd->add_option("--seed", o.seed, "generator seed");
  cmd->add_option("--tol", o.tol, "float tolerance");
  cmd->add_option("--format", o.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", o.out_path, "write the report to a file");
}

uint64_t effective_seed(uint64_t flag_seed) {
  if (const char* env = std::getenv("PROCTHEORY_SEED"))
    return std::strtoull(env, nullptr, 10);
  return flag_seed;
}

void emit(const CommonOpts& o, const Json& j, const std::string& text) {
  std::string payload = o.format == "json" ? j.dump(2) : text;
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path);
    f << payload << "\n";
  } else {
    std::cout << payload << "\n";
  }
}

std::string law_suite_text(const LawSuite& s) {
  std::string t = "law suite on " + s.backend + "\n";
  for (const auto& r : s.reports) t += "  " + r.summary() + "\n";
  t += s.pass() ? "PASS" : "FAIL";
  return t;
}

std::shared_ptr<Theory> make_theory(const std::string& name) {
  if (name == "mat_bool") return std::make_shared<MatTheory>(Backend::Bool);
  if (name == "mat_nat") return std::make_shared<MatTheory>(Backend::Nat);
  if (name == "mat_ratnn")
    return std::make_shared<MatTheory>(Backend::RatNonneg);
  if (name == "mat_rat") return std::make_shared<MatTheory>(Backend::Rat);
  if (name == "mat_gauss")
    return std::make_shared<MatTheory>(Backend::GaussRat);
  if (name == "mat_float")
    return std::make_shared<MatTheory>(Backend::FloatC);
  if (name == "rel") return std::make_shared<MatTheory>(rel_theory());
  if (name == "cpm_c")
    return std::make_shared<CpmTheory>(CpmTheory::Field::ComplexFloat);
  if (name == "cpm_r")
    return std::make_shared<CpmTheory>(CpmTheory::Field::RealFloat);
  if (name == "cpm_gauss")
    return std::make_shared<CpmTheory>(CpmTheory::Field::Exact,
                                       Backend::GaussRat);
  throw TheoryError("unknown backend '" + name +
                    "' (mat_bool|mat_nat|mat_ratnn|mat_rat|mat_gauss|"
                    "mat_float|rel|cpm_c|cpm_r|cpm_gauss)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"property audits for finite process theories"};
  app.require_subcommand(1);

  // --- laws ------------------------------------------------------------------
  auto* laws = app.add_subcommand("laws", "sampled law suite on a backend");
  CommonOpts laws_opts;
  std::string laws_backend = "mat_rat";
  int laws_dims = 4;
  std::vector<std::string> laws_sets = {"all"};
  laws->add_option("--backend", laws_backend, "backend name");
  laws->add_option("--dims", laws_dims, "max object dimension");
  laws->add_option("--laws", laws_sets, "law sets (default all)");
  add_common(laws, laws_opts);

  // --- audit -----------------------------------------------------------------
  auto* audit = app.add_subcommand("audit", "principle audit on a theory");
  CommonOpts audit_opts;
  AuditConfig cfg;
  std::string dims_csv = "2,3";
  std::string mutant_name;
  audit->add_option("--backend", cfg.backend, "cpm_c | cpm_r | mspek");
  audit->add_option("--dims", dims_csv, "comma separated dimensions");
  audit->add_option("--checks", cfg.checks, "check names or 'all'");
  audit->add_option("--mutant", mutant_name,
                    "inject a deliberate corruption: non_isometric_kernels | "
                    "non_central_phases | transposed_compose");
  audit->add_option("--spek-bound", cfg.spek_bound, "audited object bound");
  audit->add_option("--spek-budget", cfg.spek_budget, "closure budget");
  add_common(audit, audit_opts);

  // --- closure ---------------------------------------------------------------
  auto* closure = app.add_subcommand("closure", "generate a toy-model closure");
  CommonOpts closure_opts;
  std::string closure_model = "spek";
  int closure_bound = 2;
  size_t closure_budget = 100000;
  closure->add_option("--model", closure_model, "spek | mspek");
  closure->add_option("--bound", closure_bound, "object bound (powers of IV)");
  closure->add_option("--budget", closure_budget, "morphism budget");
  add_common(closure, closure_opts);

  // --- gp-roundtrip ------------------------------------------------------------
  auto* gp = app.add_subcommand("gp-roundtrip",
                                "phase-quotient reconstruction round trip");
  CommonOpts gp_opts;
  int gp_dims = 4;
  gp->add_option("--dims", gp_dims, "max dimension");
  add_common(gp, gp_opts);

  // --- totalise ----------------------------------------------------------------
  auto* tot = app.add_subcommand("totalise",
                                 "bounded congruence closure of a finite PCM");
  CommonOpts tot_opts;
  std::string pcm_path;
  int max_word = 6;
  tot->add_option("--pcm", pcm_path,
                  "path to a PCM JSON file (default: the {0, 1/2, 1} PCM)");
  tot->add_option("--max-word", max_word, "multiset size bound");
  add_common(tot, tot_opts);

  // --- report-schema -----------------------------------------------------------
  auto* schema = app.add_subcommand("report-schema", "emit the report schema");
  CommonOpts schema_opts;
  add_common(schema, schema_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (laws->parsed()) {
      LawParams p;
      p.max_dim = laws_dims;
      p.samples = laws_opts.samples;
      p.seed = effective_seed(laws_opts.seed);
      p.tol = laws_opts.tol;
      auto th = make_theory(laws_backend);
      LawSuite suite = check_laws(*th, laws_sets, p);
      emit(laws_opts, law_suite_to_json(suite), law_suite_text(suite));
      return suite.pass() ? 0 : 1;
    }
    if (audit->parsed()) {
      cfg.samples = audit_opts.samples;
      cfg.seed = effective_seed(audit_opts.seed);
      cfg.tol = audit_opts.tol;
      cfg.dims.clear();
      std::stringstream ss(dims_csv);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.dims.push_back(std::stoi(item));
      if (!mutant_name.empty()) {
        if (mutant_name == "non_isometric_kernels")
          cfg.mutant = MutantKind::NonIsometricKernel;
        else if (mutant_name == "non_central_phases")
          cfg.mutant = MutantKind::NonCentralPhase;
        else if (mutant_name == "transposed_compose")
          cfg.mutant = MutantKind::TransposedCompose;
        else
          throw TheoryError("unknown mutant '" + mutant_name + "'");
      }
      AuditReport rep = run_audit(cfg);
      std::string text = "audit on " + cfg.backend + "\n";
      for (const auto& e : rep.entries)
        text += "  " + e.report.summary() +
                (e.informational ? " [informational]" : "") + "\n";
      text += rep.pass() ? "PASS" : "FAIL";
      emit(audit_opts, audit_report_to_json(rep), text);
      return rep.pass() ? 0 : 1;
    }
    if (closure->parsed()) {
      ClosureSpec spec = closure_model == "mspek"
                             ? mspek_spec(closure_bound, closure_budget)
                             : spek_spec(closure_bound, closure_budget);
      if (closure_model != "spek" && closure_model != "mspek")
        throw TheoryError("unknown model '" + closure_model + "'");
      ClosureResult res = closure_generate(spec);
      Json j = closure_to_json(res);
      std::string text = closure_model + " closure: " +
                         std::to_string(res.total) + " morphisms, " +
                         (res.saturated ? "saturated" : "budget-truncated");
      emit(closure_opts, j, text);
      return res.saturated ? 0 : 1;
    }
    if (gp->parsed()) {
      LawReport quot = check_phased_coproducts(
          gp_dims, gp_opts.samples, effective_seed(gp_opts.seed), gp_opts.tol);
      LawReport rt = gp_roundtrip_check(gp_dims, gp_opts.samples,
                                        effective_seed(gp_opts.seed),
                                        gp_opts.tol);
      LawReport gen = check_phase_generator(gp_dims, gp_opts.samples,
                                            effective_seed(gp_opts.seed),
                                            gp_opts.tol);
      LawReport pf = check_positive_freeness(PhaseGroupKind::Circle, gp_dims,
                                             gp_opts.samples,
                                             effective_seed(gp_opts.seed),
                                             gp_opts.tol);
      LawSuite suite;
      suite.backend = "mat_float/circle";
      suite.reports = {quot, rt, gen, pf};
      emit(gp_opts, law_suite_to_json(suite), law_suite_text(suite));
      return suite.pass() ? 0 : 1;
    }
    if (tot->parsed()) {
      FinitePCM m;
      if (pcm_path.empty()) {
        m = half_unit_pcm();
      } else {
        std::ifstream f(pcm_path);
        if (!f) throw TheoryError("cannot read " + pcm_path);
        Json j = Json::parse(f);
        m = pcm_from_json(j);
      }
      LawReport axioms = m.check_axioms();
      TotalisationResult t = totalise_pcm(m, max_word);
      LawReport fact = verify_totalisation_fact(m, t);
      Json j{{"axioms", law_report_to_json(axioms)},
             {"totalisation", totalisation_to_json(m, t)},
             {"fact", law_report_to_json(fact)}};
      std::string text = axioms.summary() + "\n" + fact.summary() + "\n" +
                         std::to_string(t.classes.size()) + " classes";
      emit(tot_opts, j, text);
      return axioms.pass() && fact.pass() ? 0 : 1;
    }
    if (schema->parsed()) {
      emit(schema_opts, report_schema(), report_schema().dump(2));
      return 0;
    }
  } catch (const TheoryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
