#include "proctheory/json_io.hpp"

namespace pt {

namespace {

Json rational_to_json(const mpq_class& q) {
  return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

mpq_class rational_from_json(const Json& j) {
  mpq_class q(j.at("num").get<std::string>() + "/" +
              j.at("den").get<std::string>());
  q.canonicalize();
  return q;
}

}  // namespace

Json scalar_to_json(const ScalarValue& s) {
  switch (s.backend()) {
    case Backend::Bool: return Json(s.as_bool());
    case Backend::Nat: return Json(s.as_nat().get_str());
    case Backend::RatNonneg:
    case Backend::Rat: return rational_to_json(s.as_rat());
    case Backend::GaussRat:
      return Json{{"re", rational_to_json(s.as_gauss().re)},
                  {"im", rational_to_json(s.as_gauss().im)}};
    case Backend::FloatC: {
      auto z = s.as_complex();
      return Json{{"re", z.real()}, {"im", z.imag()}};
    }
  }
  throw TheoryError("scalar_to_json: unknown backend");
}

ScalarValue scalar_from_json(Backend b, const Json& j) {
  switch (b) {
    case Backend::Bool: return {b, j.get<bool>()};
    case Backend::Nat: return {b, mpz_class(j.get<std::string>())};
    case Backend::RatNonneg:
    case Backend::Rat: return ScalarValue::from_rational(b, rational_from_json(j));
    case Backend::GaussRat:
      return ScalarValue::gauss(rational_from_json(j.at("re")),
                                rational_from_json(j.at("im")));
    case Backend::FloatC:
      return ScalarValue::complex(
          {j.at("re").get<double>(), j.at("im").get<double>()});
  }
  throw TheoryError("scalar_from_json: unknown backend");
}

Json mat_to_json(const Mat& m) {
  Json entries = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    entries.push_back(row);
  }
  return Json{{"backend", backend_name(m.backend())},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", entries}};
}

Mat mat_from_json(const Json& j) {
  auto b = backend_from_name(j.at("backend").get<std::string>());
  if (!b) throw TheoryError("mat_from_json: unknown backend");
  int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
  Mat m(*b, rows, cols);
  const Json& entries = j.at("entries");
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k)
      m.at(i, k) = scalar_from_json(*b, entries.at(i).at(k));
  return m;
}

Json morphism_to_json(const std::string& backend, int src, int tgt,
                      const Mat& payload) {
  return Json{{"backend", backend},
              {"src", src},
              {"tgt", tgt},
              {"payload", mat_to_json(payload)}};
}

Json rel_to_json(const Mat& r) {
  Json pairs = Json::array();
  for (auto [a, b] : rel_pairs(r)) pairs.push_back(Json::array({a, b}));
  return Json{{"dom", r.cols()}, {"cod", r.rows()}, {"pairs", pairs}};
}

Mat rel_from_json(const Json& j) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& p : j.at("pairs"))
    pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  return rel_from_pairs(j.at("dom").get<int>(), j.at("cod").get<int>(), pairs);
}

Json cpm_to_json(const CpmMap& f) {
  Json out{{"in", f.in_dim}, {"out", f.out_dim}, {"choi", mat_to_json(f.choi)}};
  if (f.kraus) {
    Json ks = Json::array();
    for (const auto& k : *f.kraus) ks.push_back(mat_to_json(k));
    out["kraus"] = ks;
  }
  return out;
}

CpmMap cpm_from_json(const Json& j) {
  CpmMap f;
  f.in_dim = j.at("in").get<int>();
  f.out_dim = j.at("out").get<int>();
  f.choi = mat_from_json(j.at("choi"));
  if (j.contains("kraus")) {
    std::vector<Mat> ks;
    for (const auto& k : j.at("kraus")) ks.push_back(mat_from_json(k));
    f.kraus = std::move(ks);
  }
  return f;
}

Json kernel_to_json(const KernelRep& k) {
  return Json{{"ambient", k.ambient}, {"projection", mat_to_json(k.projection)}};
}

KernelRep kernel_from_json(const Json& j) {
  return kernel_from_projection(mat_from_json(j.at("projection")));
}

Json closure_to_json(const ClosureResult& c) {
  Json objects = Json::array();
  Json counts = Json::object();
  for (const auto& [key, v] : c.homs) {
    std::string name = "IV^" + std::to_string(key.first) + "->IV^" +
                       std::to_string(key.second);
    objects.push_back(name);
    counts[name] = v.size();
  }
  return Json{{"objects", objects},
              {"counts", counts},
              {"total", c.total},
              {"saturated", c.saturated}};
}

Json pcm_to_json(const FinitePCM& m) {
  Json ovee = Json::array();
  for (int i = 0; i < m.size(); ++i)
    for (int j = i; j < m.size(); ++j)
      ovee.push_back(Json::array(
          {m.names[i], m.names[j],
           m.ovee(i, j) < 0 ? Json(nullptr) : Json(m.names[m.ovee(i, j)])}));
  return Json{{"elements", m.names}, {"zero", m.names[0]}, {"ovee", ovee}};
}

FinitePCM pcm_from_json(const Json& j) {
  FinitePCM m;
  m.names = j.at("elements").get<std::vector<std::string>>();
  std::string zero = j.at("zero").get<std::string>();
  auto idx = [&](const std::string& n) {
    for (size_t i = 0; i < m.names.size(); ++i)
      if (m.names[i] == n) return static_cast<int>(i);
    throw TheoryError("pcm_from_json: unknown element '" + n + "'");
  };
  if (idx(zero) != 0)
    std::swap(m.names[0], m.names[idx(zero)]);
  const int n = m.size();
  m.table.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    m.table[i][0] = i;
    m.table[0][i] = i;
  }
  for (const auto& row : j.at("ovee")) {
    int a = idx(row.at(0).get<std::string>());
    int b = idx(row.at(1).get<std::string>());
    int r = row.at(2).is_null() ? -1 : idx(row.at(2).get<std::string>());
    m.table[a][b] = r;
    m.table[b][a] = r;
  }
  return m;
}

Json totalisation_to_json(const FinitePCM& m, const TotalisationResult& t) {
  Json classes = Json::array();
  for (const auto& c : t.classes) {
    Json members = Json::array();
    for (const auto& w : c.members) {
      Json word = Json::array();
      for (int x : w) word.push_back(m.names[x]);
      members.push_back(word);
    }
    classes.push_back(Json{{"members", members},
                           {"certified", c.certified},
                           {"singleton",
                            c.singleton < 0 ? Json(nullptr)
                                            : Json(m.names[c.singleton])}});
  }
  return Json{{"max_word", t.max_word}, {"classes", classes}};
}

Json law_report_to_json(const LawReport& r) {
  Json fails = Json::array();
  for (const auto& f : r.failures)
    fails.push_back(Json{{"law", f.law},
                         {"inputs", f.inputs},
                         {"lhs", f.lhs},
                         {"rhs", f.rhs},
                         {"deviation", f.deviation}});
  return Json{{"check", r.check},
              {"samples", r.samples},
              {"failures", fails},
              {"pass", r.pass()},
              {"elapsed_ms", r.elapsed_ms},
              {"notes", r.notes}};
}

Json law_suite_to_json(const LawSuite& s) {
  Json reports = Json::array();
  for (const auto& r : s.reports) reports.push_back(law_report_to_json(r));
  return Json{{"backend", s.backend}, {"reports", reports}, {"pass", s.pass()}};
}

Json audit_config_to_json(const AuditConfig& c) {
  Json j{{"backend", c.backend}, {"dims", c.dims},   {"samples", c.samples},
         {"seed", c.seed},       {"tol", c.tol},     {"checks", c.checks},
         {"spek_bound", c.spek_bound}, {"spek_budget", c.spek_budget}};
  if (c.mutant) {
    switch (*c.mutant) {
      case MutantKind::TransposedCompose: j["mutant"] = "transposed_compose"; break;
      case MutantKind::NonIsometricKernel: j["mutant"] = "non_isometric_kernels"; break;
      case MutantKind::NonCentralPhase: j["mutant"] = "non_central_phases"; break;
    }
  }
  return j;
}

AuditConfig audit_config_from_json(const Json& j) {
  AuditConfig c;
  if (j.contains("backend")) c.backend = j.at("backend").get<std::string>();
  if (j.contains("dims")) c.dims = j.at("dims").get<std::vector<int>>();
  if (j.contains("samples")) c.samples = j.at("samples").get<int>();
  if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
  if (j.contains("tol")) c.tol = j.at("tol").get<double>();
  if (j.contains("checks"))
    c.checks = j.at("checks").get<std::vector<std::string>>();
  if (j.contains("spek_bound")) c.spek_bound = j.at("spek_bound").get<int>();
  if (j.contains("spek_budget"))
    c.spek_budget = j.at("spek_budget").get<size_t>();
  if (j.contains("mutant")) {
    std::string m = j.at("mutant").get<std::string>();
    if (m == "transposed_compose") c.mutant = MutantKind::TransposedCompose;
    else if (m == "non_isometric_kernels") c.mutant = MutantKind::NonIsometricKernel;
    else if (m == "non_central_phases") c.mutant = MutantKind::NonCentralPhase;
    else throw TheoryError("unknown mutant '" + m + "'");
  }
  return c;
}

Json audit_report_to_json(const AuditReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"principle", principle_name(e.principle)},
                           {"statement", e.statement},
                           {"informational", e.informational},
                           {"report", law_report_to_json(e.report)}});
  return Json{{"config", audit_config_to_json(r.config)},
              {"entries", entries},
              {"pass", r.pass()}};
}

Json report_schema() {
  return Json{
      {"law_report",
       {{"check", "string"},
        {"samples", "integer"},
        {"failures",
         "array of {law, inputs, lhs, rhs, deviation}: witnesses sufficient "
         "to replay the failing instance"},
        {"pass", "boolean"},
        {"elapsed_ms", "number"},
        {"notes", "array of strings"}}},
      {"law_suite",
       {{"backend", "string"}, {"reports", "array of law_report"},
        {"pass", "boolean"}}},
      {"audit_report",
       {{"config",
         "{backend, dims, samples, seed, tol, checks, spek_bound, "
         "spek_budget, mutant?}"},
        {"entries",
         "array of {principle, statement, informational, report: law_report}"},
        {"pass", "boolean"}}},
      {"closure_report",
       {{"objects", "array of hom-set names"},
        {"counts", "object: hom-set name -> count"},
        {"total", "integer"},
        {"saturated", "boolean"}}},
      {"totalisation_report",
       {{"max_word", "integer"},
        {"classes",
         "array of {members: array of words, certified, singleton?}"}}},
      {"scalar encodings",
       {{"bool", "true/false"},
        {"nat", "decimal string"},
        {"rational", "{num: string, den: string}"},
        {"gauss_rat", "{re: rational, im: rational}"},
        {"float_complex", "{re: number, im: number}"}}}};
}

}  // namespace pt
