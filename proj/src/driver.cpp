#include "vwb/driver.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "vwb/errors.hpp"

namespace vwb {

json to_json(const Weight& w) { return json(w.c); }

namespace {

json levi_json(const std::vector<int>& I) {
  json a = json::array();
  for (int i : I) a.push_back(i + 1);
  return a;
}

json word_json(const std::vector<int>& w) {
  json a = json::array();
  for (int i : w) a.push_back(i + 1);
  return a;
}

std::string wstr(const Weight& w) { return w.str(); }

Weight to_weight(const SettingPtr& S, const std::vector<int>& v, const char* what) {
  require(!v.empty(), "BadInput", std::string("--") + what + " is required");
  require(static_cast<int>(v.size()) == S->R.rank(), "BadInput",
          std::string("--") + what + " needs " + std::to_string(S->R.rank()) + " coordinates");
  return Weight(v);
}

WeylElement identity(const SettingPtr& S) { return S->R.weyl_group()[0]; }

KModule twisted_verma(const SettingPtr& S, const Weight& lambda) {
  const WeylElement& w = S->D.wsup;
  return induce_verma(S, twist_weight(S->R, lambda, w, S->p), w);
}

KModule build_module(const SettingPtr& S, const std::string& kind, const Weight& lambda, unsigned seed) {
  if (kind == "verma") return induce_verma(S, lambda, identity(S));
  if (kind == "twisted") return twisted_verma(S, lambda);
  if (kind == "torus") return torus_projective(S, lambda);
  if (kind == "cover") return projective_cover(S, lambda, seed).Q;
  if (kind == "head") return simple_head(S, lambda);
  throw Error("BadInput", "unknown module kind " + kind);
}

json character_json(const Character& ch) {
  json a = json::array();
  for (const auto& [k, n] : ch) a.push_back({{"grade", to_json(k.grade)}, {"residue", to_json(k.residue)}, {"mult", n}});
  return a;
}

json pairs_json(const std::vector<std::pair<Weight, int>>& v) {
  json a = json::array();
  for (const auto& [w, n] : v) a.push_back({{"label", to_json(w)}, {"count", n}});
  return a;
}

int pairing_mod(const SettingPtr& S, const Weight& lambda, int root) {
  int p = S->p;
  return ((S->R.pairing(lambda + S->R.rho(), root) % p) + p) % p;
}

// one representative per label class, in box order
std::vector<Weight> class_reps(const SettingPtr& S, const std::vector<Weight>& ws) {
  std::set<Weight> seen;
  std::vector<Weight> out;
  for (const auto& w : ws)
    if (seen.insert(S->L.label(w)).second) out.push_back(w);
  return out;
}

// ---- commands ----

json info_json(const SettingPtr& S, const JobSpec& job) {
  const RootSystem& R = S->R;
  json j;
  j["type"] = job.type;
  j["p"] = S->p;
  j["levi"] = levi_json(S->D.I);
  j["rank"] = R.rank();
  j["positive_roots"] = R.positive_roots().size();
  json roots = json::array();
  for (int a : R.positive_roots()) roots.push_back(to_json(R.root(a)));
  j["positive_root_weights"] = roots;
  j["field_order"] = S->f->order();
  json c = json::array();
  for (elem x : S->c) c.push_back(S->f->to_string(x));
  j["pi_coefficients"] = c;
  j["reduced_expression"] = word_json(S->D.reduced_expr);
  j["chain_length"] = S->D.N;
  j["verma_dim"] = induce_verma(S, Weight::zero(R.rank()), identity(S)).dim();
  if (!job.lambda.empty()) {
    Weight l = to_weight(S, job.lambda, "lambda");
    j["lambda"] = to_json(l);
    j["N"] = n_of_lambda(R, S->D, l, S->p);
  }
  return j;
}

RunResult cmd_orbit(const SettingPtr& S, const JobSpec& job, int box) {
  Weight l = to_weight(S, job.lambda, "lambda");
  RunResult res;
  json orb = json::array();
  for (const auto& w : S->L.orbit_in_box(l, box)) orb.push_back(to_json(w));
  res.report = {{"lambda", to_json(l)}, {"label", to_json(S->L.label(l))}, {"box", box}, {"orbit", orb},
                {"grade", to_json(S->L.grade(l))}, {"residue_orbit_size", S->L.residue_orbit_size(l)}};
  return res;
}

RunResult cmd_verma(const SettingPtr& S, const JobSpec& job) {
  Weight l = to_weight(S, job.lambda, "lambda");
  RunResult res;
  json mods = json::array();
  bool ok = true;
  auto add = [&](const std::string& name, const auto& M) {
    auto probs = audit_module(M);
    ok = ok && probs.empty();
    mods.push_back({{"module", name}, {"dim", M.dim()}, {"character", character_json(character(M))}, {"problems", probs}});
  };
  add("Z(" + wstr(l) + ")", induce_verma(S, l, identity(S)));
  add("Z_A(" + wstr(l) + ")", induce_verma_A(S, l, identity(S)));
  add("twisted Z(" + wstr(l) + ")", twisted_verma(S, l));
  res.report = {{"lambda", to_json(l)}, {"modules", mods}, {"ok", ok}};
  res.exit_code = ok ? 0 : 1;
  return res;
}

RunResult cmd_chain(const SettingPtr& S, const JobSpec& job) {
  Weight l = to_weight(S, job.lambda, "lambda");
  ChainData C = build_chain(S, l);
  RunResult res;
  std::string closed = "ok";
  try {
    closed_form_check(C);
  } catch (const Error& e) {
    closed = e.what();
  }
  auto d = step_exponents(C);
  int comp = composite_exponent(C);
  int n = n_of_lambda(S->R, S->D, l, S->p);
  json steps = json::array();
  bool dich = true;
  for (int i = 0; i < C.N; ++i) {
    int want = pairing_mod(S, l, S->D.beta[i]) != 0 ? 1 : 0;
    dich = dich && d[i] == want;
    steps.push_back({{"i", i + 1}, {"beta", to_json(S->R.root(C.beta[i]))}, {"delta", d[i]}, {"isomorphism", d[i] == 0}});
  }
  bool ok = closed == "ok" && dich && comp == n;
  res.report = {{"lambda", to_json(l)},  {"word", word_json(C.word)},  {"N", n},
                {"chain_length", C.N},   {"steps", steps},            {"composite_exponent", comp},
                {"isomorphism", comp == 0}, {"closed_forms", closed}, {"dichotomy", dich},
                {"ok", ok}};
  res.exit_code = ok ? 0 : 1;
  return res;
}

RunResult cmd_jantzen(const SettingPtr& S, const JobSpec& job) {
  Weight l = to_weight(S, job.lambda, "lambda");
  JantzenReport r = jantzen_report(S, l);
  RunResult res;
  json dims = json::array(), tdims = json::array();
  for (int j = 1; j <= r.N + 1; ++j) {
    dims.push_back(static_cast<std::size_t>(j) < r.layers.size() ? r.layers[j].dim : 0);
    tdims.push_back(static_cast<std::size_t>(j) < r.twisted_layers.size() ? r.twisted_layers[j].dim : 0);
  }
  json layers = json::array();
  for (const auto& L : r.layers) layers.push_back({{"j", L.j}, {"dim", L.dim}, {"character", character_json(L.ch)}});
  auto verdict = [](const std::optional<bool>& b) { return b.has_value() ? json(*b) : json(nullptr); };
  bool ok = r.duality.value_or(false) && r.sum_formula.value_or(false) && r.ker_coker.value_or(false) &&
            r.layers_are_submodules;
  res.report = {{"lambda", to_json(l)},          {"N", r.N},
                {"dim", r.layers.empty() ? 0 : r.layers[0].dim},
                {"layer_dims", dims},            {"twisted_layer_dims", tdims},
                {"exponents", r.exponents},      {"exponents_prime", r.exponents_prime},
                {"length", r.length},            {"layers", layers},
                {"duality", verdict(r.duality)}, {"sum_formula", verdict(r.sum_formula)},
                {"ker_coker", verdict(r.ker_coker)}, {"failure", r.failure},
                {"ok", ok}};
  res.exit_code = ok ? 0 : 1;
  return res;
}

RunResult cmd_decompose(const SettingPtr& S, const JobSpec& job) {
  Weight l = to_weight(S, job.lambda, "lambda");
  KModule M = build_module(S, job.module, l, job.seed);
  DecompositionReport d = composition_factors(M, job.seed);
  if (job.module == "torus") d.summands = projective_cover(S, l, job.seed).summands;
  if (job.module == "cover") d.summands = {{S->L.label(l), 1}};
  RunResult res;
  res.report = {{"module", job.module}, {"lambda", to_json(l)}, {"dim", M.dim()},
                {"seed", job.seed},     {"factors", pairs_json(d.factors)},
                {"summands", pairs_json(d.summands)}, {"factor_dims", d.factor_dims},
                {"dims_add_up", d.dims_add_up}};
  res.exit_code = d.dims_add_up ? 0 : 1;
  return res;
}

RunResult cmd_probe(const SettingPtr& S, const JobSpec& job) {
  Weight l = to_weight(S, job.lambda, "lambda");
  KModule M = build_module(S, job.module, l, job.seed);
  bool q = !S->D.I.empty();
  ProbeResult pr = rank_variety_probe(M, job.trials, job.seed);
  FiltrationResult a = z_filtration_extract(M, false, q, job.seed), b = z_filtration_extract(M, true, q, job.seed);
  RepCache cache(S, job.seed);
  bool exact = is_projective_exact(M, cache, job.seed);
  bool dbl = a.ok && b.ok;
  bool critical = (!pr.obstruction) != dbl || exact != dbl;
  RunResult res;
  res.report = {{"module", job.module},
                {"lambda", to_json(l)},
                {"dim", M.dim()},
                {"seed", job.seed},
                {"probe", {{"free", !pr.obstruction}, {"witness", pr.witness_desc}, {"probes", pr.probes}, {"rejected", pr.rejected}}},
                {"filtration", {{"ok", a.ok}, {"reason", a.reason}}},
                {"twisted_filtration", {{"ok", b.ok}, {"reason", b.reason}}},
                {"projective_exact", exact},
                {"critical", critical}};
  res.exit_code = critical ? 1 : 0;
  return res;
}

json sumfor_checks(AKCache& cache, const ProjectiveLift& Q, const AKReport& r) {
  json c;
  if (!Q.torus) {
    SumFor1 s = sumfor1_check(cache, r.lambda, Q.nu);
    c["sumfor1"] = {{"lhs", s.lhs}, {"rhs", s.rhs}, {"ok", s.ok}};
  }
  SumFor2 s2 = sumfor2_check(cache, Q, r.lambda);
  json t = json::array();
  for (std::size_t j = 0; j < s2.lhs.size(); ++j) t.push_back({{"j", j}, {"lhs", s2.lhs[j]}, {"rhs", s2.rhs[j]}, {"ok", s2.lhs[j] == s2.rhs[j]}});
  c["sumfor2"] = t;
  c["sumfor2_ok"] = s2.ok;
  BoundaryReport b = boundary_report(Q, r, cache);
  c["boundary"] = {{"step0", b.step0},         {"stepN", b.stepN},         {"piece0", b.piece0},
                   {"pieceN", b.pieceN},       {"mult_lambda", b.mult_lambda}, {"socle", to_json(b.socle)},
                   {"mult_socle", b.mult_socle}, {"remark2_lhs", b.remark2_lhs}, {"remark2_rhs", b.remark2_rhs},
                   {"experimental", true}};
  return c;
}

bool report_ok(const AKReport& r) {
  if (!r.failure.empty() || !r.specialization_ok || !r.cprime_agrees || r.rank_E != r.n_lambda) return false;
  if (r.layer_dims.empty() || r.layer_dims[0] != r.n_lambda || r.layer_dims.back() != 0) return false;
  for (std::size_t j = 1; j < r.layer_dims.size(); ++j)
    if (r.layer_dims[j] > r.layer_dims[j - 1]) return false;
  if (r.n_lambda == 0) return true;
  int s = 0, t = 0, c = 0;
  for (int e : r.exponents) s += e;
  for (std::size_t j = 1; j < r.layer_dims.size(); ++j) t += r.layer_dims[j];
  for (int e : r.chain_dets) c += e;
  return s == t && s == r.det_B && s == c && r.biorthogonal;
}

RunResult cmd_akfilt(const SettingPtr& S, const JobSpec& job) {
  Weight l = to_weight(S, job.lambda, "lambda");
  Weight nu = to_weight(S, job.nu, "nu");
  require(job.module == "cover" || job.module == "torus", "BadInput", "akfilt needs --module cover or torus");
  AKCache cache(S, job.seed, job.trunc_M);
  const ProjectiveLift& Q = job.module == "cover" ? cache.cover(nu) : cache.torus(nu);
  const AKReport& r = cache.report(Q, l);
  RunResult res;
  res.report = report_json(r);
  res.report["checks"] = sumfor_checks(cache, Q, r);
  bool ok = report_ok(r) && res.report["checks"]["sumfor2_ok"].get<bool>() &&
            (Q.torus || res.report["checks"]["sumfor1"]["ok"].get<bool>());
  res.report["ok"] = ok;
  res.exit_code = ok ? 0 : 1;
  return res;
}

RunResult cmd_sumcheck(const SettingPtr& S, const JobSpec& job, int box) {
  AKCache cache(S, job.seed, job.trunc_M);
  CheckResult a = sumfor1_sweep(cache, box), b = sumfor2_sweep(cache, box);
  RunResult res;
  res.report = {{"type", job.type}, {"p", S->p},       {"levi", levi_json(S->D.I)}, {"box", box},
                {"seed", job.seed}, {"sumfor1", a.to_json()}, {"sumfor2", b.to_json()},
                {"ok", a.ok() && b.ok()}};
  res.exit_code = a.ok() && b.ok() ? 0 : 1;
  return res;
}

RunResult cmd_audit(const SettingPtr& S, const JobSpec& job, int box) {
  std::vector<CheckResult> cs{verma_audit(S, box),        composite_law(S, box), chain_dichotomy(S, box),
                              jantzen_identities(S, box), hom_rank_law(S, box),  tau_duality(S, box)};
  RunResult res;
  json checks;
  bool ok = true;
  for (const auto& c : cs) {
    checks[c.name] = c.to_json();
    ok = ok && c.ok();
  }
  res.report = {{"type", job.type}, {"p", S->p}, {"levi", levi_json(S->D.I)}, {"box", box}, {"checks", checks}, {"ok", ok}};
  res.exit_code = ok ? 0 : 1;
  return res;
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << "\t" << j.dump() << "\n";
  }
}

}  // namespace

json CheckResult::to_json(std::size_t max_failures) const {
  json f = json::array();
  for (std::size_t i = 0; i < failures.size() && i < max_failures; ++i) f.push_back(failures[i]);
  return {{"checked", checked}, {"failed", failures.size()}, {"failures", f}, {"ok", ok()}};
}

SettingPtr make_setting(const std::string& type, int p, const std::vector<int>& levi, std::size_t dim_cap) {
  require(good_prime_check(type, p), "UnsupportedType", "p = " + std::to_string(p) + " violates the prime hypotheses for " + type);
  auto base = Setting::make(type, p, levi);
  if (dim_cap == base->dim_cap) return base;
  auto s = std::make_shared<Setting>(*base);
  s->dim_cap = dim_cap;
  return s;
}

std::vector<Weight> weight_box(const RootSystem& R, int radius) {
  std::vector<Weight> out;
  std::vector<int> c(R.rank(), -radius);
  for (;;) {
    out.push_back(Weight(c));
    int i = R.rank() - 1;
    while (i >= 0 && c[i] == radius) c[i--] = -radius;
    if (i < 0) break;
    ++c[i];
  }
  return out;
}

std::vector<std::vector<int>> all_levis(int rank) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << rank); ++mask) {
    std::vector<int> I;
    for (int i = 0; i < rank; ++i)
      if (mask & (1 << i)) I.push_back(i);
    out.push_back(I);
  }
  return out;
}

json report_json(const AKReport& r) {
  return {{"lambda", to_json(r.lambda)},
          {"nu", to_json(r.nu)},
          {"module", r.module},
          {"p", r.p},
          {"levi", levi_json(r.levi)},
          {"N", r.N},
          {"truncation", r.M},
          {"n_lambda", r.n_lambda},
          {"rank_E", r.rank_E},
          {"rank_Ft", r.rank_Ft},
          {"exponents", r.exponents},
          {"degenerate_pivots", r.degenerate},
          {"layers", r.layer_dims},
          {"specialization_ok", r.specialization_ok},
          {"cprime_agrees", r.cprime_agrees},
          {"det_B", r.det_B},
          {"chain_dets", r.chain_dets},
          {"biorthogonal", r.biorthogonal},
          {"bio_exponents", r.bio_exponents},
          {"failure", r.failure}};
}

// ---- sweeps ----

CheckResult composite_law(const SettingPtr& S, int box) {
  CheckResult c{"composite_law"};
  for (const auto& l : weight_box(S->R, box)) {
    ++c.checked;
    int e = composite_exponent(build_chain(S, l));
    int n = n_of_lambda(S->R, S->D, l, S->p);
    if (e != n) c.fail({{"lambda", to_json(l)}, {"exponent", e}, {"N", n}});
  }
  return c;
}

CheckResult chain_dichotomy(const SettingPtr& S, int box) {
  CheckResult c{"chain_dichotomy"};
  for (const auto& l : weight_box(S->R, box)) {
    ChainData C = build_chain(S, l);
    ++c.checked;
    try {
      closed_form_check(C);
    } catch (const Error& e) {
      c.fail({{"lambda", to_json(l)}, {"closed_form", e.what()}});
    }
    auto d = step_exponents(C);
    for (int i = 0; i < C.N; ++i) {
      int want = pairing_mod(S, l, S->D.beta[i]) != 0 ? 1 : 0;
      if (d[i] != want) c.fail({{"lambda", to_json(l)}, {"step", i + 1}, {"delta", d[i]}, {"expected", want}});
    }
  }
  return c;
}

CheckResult jantzen_identities(const SettingPtr& S, int box) {
  CheckResult c{"jantzen_identities"};
  for (const auto& l : weight_box(S->R, box)) {
    ++c.checked;
    JantzenReport r = jantzen_report(S, l);
    bool ok = r.duality.value_or(false) && r.sum_formula.value_or(false) && r.ker_coker.value_or(false) &&
              r.layers_are_submodules && r.length <= r.N;
    if (!ok)
      c.fail({{"lambda", to_json(l)},
              {"duality", r.duality.value_or(false)},
              {"sum_formula", r.sum_formula.value_or(false)},
              {"ker_coker", r.ker_coker.value_or(false)},
              {"failure", r.failure}});
  }
  return c;
}

CheckResult verma_audit(const SettingPtr& S, int box) {
  CheckResult c{"verma_audit"};
  for (const auto& l : weight_box(S->R, box)) {
    ++c.checked;
    std::vector<std::string> probs = audit_module(induce_verma(S, l, identity(S)));
    for (auto& s : audit_module(induce_verma_A(S, l, identity(S)))) probs.push_back("A: " + s);
    for (auto& s : audit_module(twisted_verma(S, l))) probs.push_back("twisted: " + s);
    if (!probs.empty()) c.fail({{"lambda", to_json(l)}, {"problems", probs}});
  }
  return c;
}

CheckResult hom_rank_law(const SettingPtr& S, int box) {
  CheckResult c{"hom_rank_law"};
  auto ws = weight_box(S->R, box);
  for (const auto& l : ws)
    for (const auto& m : ws) {
      ++c.checked;
      int r = hom_rank_A(S, l, m);
      int want = S->L.linked(l, m) ? 1 : 0;
      if (r != want) c.fail({{"lambda", to_json(l)}, {"mu", to_json(m)}, {"rank", r}, {"expected", want}});
    }
  return c;
}

CheckResult tau_duality(const SettingPtr& S, int box) {
  CheckResult c{"tau_duality"};
  for (const auto& m : weight_box(S->R, box)) {
    ++c.checked;
    bool k = tau_duality_witness(S, m).has_value(), a = tau_duality_witness_A(S, m).has_value();
    if (!k || !a) c.fail({{"mu", to_json(m)}, {"over_k", k}, {"over_A", a}});
  }
  return c;
}

CheckResult sumfor1_sweep(AKCache& cache, int box) {
  CheckResult c{"sumfor1"};
  auto ws = weight_box(cache.setting()->R, box);
  for (const auto& l : ws)
    for (const auto& nu : ws) {
      ++c.checked;
      SumFor1 s = sumfor1_check(cache, l, nu);
      if (!s.ok) {
        const AKReport& r = cache.report(cache.cover(nu), l);
        c.fail({{"lambda", to_json(l)}, {"nu", to_json(nu)}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"failure", r.failure}});
      }
    }
  return c;
}

CheckResult sumfor2_sweep(AKCache& cache, int box) {
  CheckResult c{"sumfor2"};
  const SettingPtr& S = cache.setting();
  auto ws = weight_box(S->R, box);
  auto run = [&](const ProjectiveLift& Q) {
    for (const auto& l : ws) {
      ++c.checked;
      SumFor2 s = sumfor2_check(cache, Q, l);
      if (!s.ok)
        c.fail({{"module", Q.name}, {"lambda", to_json(l)}, {"failing_j", s.failing_j}, {"lhs", s.lhs}, {"rhs", s.rhs},
                {"failure", cache.report(Q, l).failure}});
    }
  };
  for (const auto& nu : ws) run(cache.torus(nu));
  for (const auto& nu : class_reps(S, ws)) run(cache.cover(nu));
  return c;
}

CheckResult ak_invariants(AKCache& cache, int box) {
  CheckResult c{"ak_invariants"};
  const SettingPtr& S = cache.setting();
  auto ws = weight_box(S->R, box);
  auto run = [&](const ProjectiveLift& Q) {
    for (const auto& l : ws) {
      ++c.checked;
      const AKReport& r = cache.report(Q, l);
      if (!report_ok(r)) c.fail(report_json(r));
    }
  };
  for (const auto& nu : ws) run(cache.torus(nu));
  for (const auto& nu : class_reps(S, ws)) run(cache.cover(nu));
  return c;
}

CheckResult projectivity_zoo(const SettingPtr& S, int box, unsigned seed, int n_random) {
  CheckResult c{"projectivity_zoo"};
  auto ws = weight_box(S->R, box);
  RepCache cache(S, seed);
  bool q = !S->D.I.empty();
  std::vector<std::pair<std::string, KModule>> zoo;
  for (const auto& l : ws) {
    zoo.emplace_back("Z(" + wstr(l) + ")", induce_verma(S, l, identity(S)));
    for (const auto& w : S->R.weyl_group())
      if (w.length() > 0 && in_WI_min(S->R, S->D, w))
        zoo.emplace_back("Z^w(" + wstr(l) + ")", induce_verma(S, twist_weight(S->R, l, w, S->p), w));
    zoo.emplace_back("P(" + wstr(l) + ")", torus_projective(S, l));
  }
  for (const auto& l : class_reps(S, ws)) zoo.emplace_back("Q(" + wstr(l) + ")", cache.cover(l).Q);
  std::mt19937 rng(seed);
  int made = 0;
  for (int tries = 0; made < n_random && tries < 50 * n_random; ++tries) {
    const Weight& a = ws[std::uniform_int_distribution<std::size_t>(0, ws.size() - 1)(rng)];
    const Weight& b = ws[std::uniform_int_distribution<std::size_t>(0, ws.size() - 1)(rng)];
    KModule top = induce_verma(S, a, identity(S)), sub = induce_verma(S, b, identity(S));
    if (ext1(top, sub) == 0) continue;
    zoo.emplace_back("ext(" + wstr(a) + "," + wstr(b) + ")#" + std::to_string(made), random_extension(top, sub, seed + made));
    ++made;
  }
  if (made < n_random) c.fail({{"random_extensions", made}, {"wanted", n_random}});
  for (auto& [name, M] : zoo) {
    ++c.checked;
    ProbeResult pr = rank_variety_probe(M, 32, seed);
    bool dbl = z_filtration_extract(M, false, q, seed).ok && z_filtration_extract(M, true, q, seed).ok;
    bool exact = is_projective_exact(M, cache, seed);
    if ((!pr.obstruction) != dbl || exact != dbl)
      c.fail({{"module", name}, {"probe_free", !pr.obstruction}, {"double_filtration", dbl}, {"exact", exact}});
  }
  return c;
}

CheckResult reciprocity(const SettingPtr& S, int box, unsigned seed) {
  CheckResult c{"reciprocity"};
  auto ws = weight_box(S->R, box);
  RepCache cache(S, seed);
  for (const auto& nu : class_reps(S, ws)) {
    const ProjectiveCover& Q = cache.cover(nu);
    LiftedCover L = lift_projective(Q);
    for (const auto& vm : verma_multiplicities(Q, L, ws, seed)) {
      ++c.checked;
      if (vm.filtration != vm.predicted || vm.hom_rank != vm.verma_mult || !vm.hom_saturated)
        c.fail({{"nu", to_json(nu)},
                {"mu", to_json(vm.mu)},
                {"filtration", vm.filtration},
                {"predicted", vm.predicted},
                {"hom_rank", vm.hom_rank},
                {"verma_mult", vm.verma_mult}});
    }
  }
  return c;
}

int exit_code_for(const Error& e) {
  static const std::set<std::string> infeasible{"InfeasibleDimension", "UnsupportedType", "BadCoefficients", "BadInput"};
  return infeasible.count(e.code()) ? 2 : 1;
}

json error_json(const Error& e) { return {{"error", e.code()}, {"detail", e.detail()}}; }

std::string render_table(const json& j) {
  std::ostringstream out;
  flatten(j, "", out);
  return out.str();
}

RunResult run(const JobSpec& job) {
  static const std::set<std::string> commands{"info",   "orbit", "verma",  "chain",    "jantzen",
                                              "decompose", "probe", "akfilt", "sumcheck", "audit"};
  require(commands.count(job.command) > 0, "BadInput", "unknown command " + job.command);
  require(job.dim_cap <= 4096 || job.unsafe_cap, "BadInput", "--dim-cap above 4096 needs --unsafe-cap");
  require(job.trunc_M >= 2 && job.trunc_M <= 128, "BadInput", "--trunc must lie in [2, 128]");
  static const std::set<std::string> seeded{"decompose", "probe", "akfilt", "sumcheck"};
  require(job.seed_given || !seeded.count(job.command), "BadInput", job.command + " needs --seed");
  SettingPtr S = make_setting(job.type, job.p, job.levi, job.dim_cap);
  int box = job.box < 0 ? S->p : job.box;
  require(box >= 0 && box <= 16, "BadInput", "--box must lie in [0, 16]");
  RunResult r;
  if (job.command == "info")
    r.report = info_json(S, job);
  else if (job.command == "orbit")
    r = cmd_orbit(S, job, box);
  else if (job.command == "verma")
    r = cmd_verma(S, job);
  else if (job.command == "chain")
    r = cmd_chain(S, job);
  else if (job.command == "jantzen")
    r = cmd_jantzen(S, job);
  else if (job.command == "decompose")
    r = cmd_decompose(S, job);
  else if (job.command == "probe")
    r = cmd_probe(S, job);
  else if (job.command == "akfilt")
    r = cmd_akfilt(S, job);
  else if (job.command == "sumcheck")
    r = cmd_sumcheck(S, job, box);
  else
    r = cmd_audit(S, job, box);
  r.report["schema"] = "vwb." + job.command + ".v1";
  return r;
}

}  // namespace vwb
