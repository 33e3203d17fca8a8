#include "epsfact/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "epsfact/conductors.hpp"
#include "epsfact/errors.hpp"
#include "epsfact/theorems.hpp"

namespace epsfact {

namespace {

template <class F>
auto at_line(int line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SyntaxError&) {
    throw;
  } catch (const PrecisionError& e) {
    throw PrecisionError("line " + std::to_string(line) + ": " + e.what());
  } catch (const ResourceError& e) {
    throw ResourceError("line " + std::to_string(line) + ": " + e.what());
  } catch (const Error& e) {
    throw UsageError("line " + std::to_string(line) + ": " + e.what());
  }
}

RootOfUnity zeta_of(const Value* v, int line) {
  if (!v) return {};
  if (v->kind != Value::Kind::Zeta) throw SyntaxError(line, v->column, "expected zeta(den,num)");
  return RootOfUnity(v->den, v->num);
}

std::vector<RootOfUnity> wild_of(const Value* v, const RingPtr& R, int line) {
  std::vector<RootOfUnity> w(R->gens().wild.size());
  if (!v) return w;
  if (v->kind != Value::Kind::List) throw SyntaxError(line, v->column, "expected a list of zeta values");
  if (v->items.size() > w.size())
    throw SyntaxError(line, v->column,
                      "ring has " + std::to_string(w.size()) + " wild generators, got " + std::to_string(v->items.size()));
  for (std::size_t i = 0; i < v->items.size(); ++i) w[i] = zeta_of(&v->items[i], line);
  return w;
}

std::string name_of(const Value* v) { return v->atom; }

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const PrecisionError*>(&e)) return "precision";
  if (dynamic_cast<const ResourceError*>(&e)) return "resource";
  if (dynamic_cast<const InvariantViolation*>(&e)) return "invariant";
  if (dynamic_cast<const SyntaxError*>(&e)) return "syntax";
  if (dynamic_cast<const UsageError*>(&e)) return "usage";
  return "internal";
}

bool unit_modulus(const RootNumber& w) { return std::abs(std::abs(w.embed()) - 1.0L) < 1e-9L; }

std::vector<MulCharacter> char_list(const Value* v, Environment& env) {
  std::vector<MulCharacter> out;
  if (!v) return out;
  for (const auto& it : v->items) out.push_back(env.chars.at(it.atom));
  return out;
}

void absorb(JobResult& r, const VerifyReport& rep) {
  r.digest = rep.digest;
  r.inputs = rep.inputs;
  r.lhs = rep.lhs.str();
  r.rhs = rep.rhs.str();
  r.equal = rep.equal;
  for (const auto& [k, v] : rep.checks) r.checks[k] = v;
  r.checks["float_agrees"] = rep.float_agrees;
  r.notes = rep.notes;
}

}  // namespace

GaussKernel parse_kernel(const std::string& name) {
  if (name == "naive") return GaussKernel::Naive;
  if (name == "histogram") return GaussKernel::Histogram;
  if (name == "reduced") return GaussKernel::Reduced;
  throw UsageError("unknown kernel '" + name + "' (naive, histogram, reduced)");
}

FieldElem parse_shift(const RingPtr& R, const Value& v, int line) {
  if (v.kind == Value::Kind::List) {
    std::vector<i64> c;
    for (const auto& it : v.items) c.push_back(value_int(it, line));
    if (static_cast<int>(c.size()) != R->d()) throw SyntaxError(line, v.column, "shift list must have d entries");
    return FieldElem::from_ring(R->from_coeffs(c));
  }
  if (v.kind != Value::Kind::Atom) throw SyntaxError(line, v.column, "bad shift");
  const std::string& s = v.atom;
  if (s.rfind("p^", 0) == 0) {
    std::size_t star = s.find('*');
    Value kv;
    kv.atom = s.substr(2, star == std::string::npos ? std::string::npos : star - 2);
    kv.column = v.column + 2;
    int k = static_cast<int>(value_int(kv, line));
    i64 u = 1;
    if (star != std::string::npos) {
      Value uv;
      uv.atom = s.substr(star + 1);
      uv.column = v.column + static_cast<int>(star) + 1;
      u = value_int(uv, line);
    }
    if (mod(u, R->p()) == 0) throw SyntaxError(line, v.column, "shift unit must be prime to p");
    return FieldElem::make(k, R->from_int(u));
  }
  i64 n = value_int(v, line);
  if (n == 0) throw SyntaxError(line, v.column, "shift must be nonzero");
  int k = vp(n, R->p());
  return FieldElem::make(k, R->from_int(n / ipow_checked(R->p(), k)));
}

Environment resolve(const Session& s) {
  Environment env;
  for (const auto& d : s.decls) {
    int L = d.line;
    at_line(L, [&] {
      if (d.keyword == "ring") {
        i64 dd = d.get("d") ? value_int(*d.get("d"), L) : 1;
        env.rings[d.name] = ring_make(value_int(*d.get("p"), L), static_cast<int>(dd),
                                      static_cast<int>(value_int(*d.get("N"), L)));
      } else if (d.keyword == "psi") {
        const RingPtr& R = env.rings.at(name_of(d.get("ring")));
        if (const Value* sh = d.get("shift"))
          env.psis.emplace(d.name, AddCharacter(R, parse_shift(R, *sh, L)));
        else
          env.psis.emplace(d.name, AddCharacter::standard(R));
      } else if (d.keyword == "char") {
        const RingPtr& R = env.rings.at(name_of(d.get("ring")));
        env.chars.emplace(d.name, MulCharacter(R, zeta_of(d.get("pi"), L), zeta_of(d.get("teich"), L),
                                               wild_of(d.get("wild"), R, L)));
      } else if (d.keyword == "eta") {
        const RingPtr& R = env.rings.at(name_of(d.get("ring")));
        env.etas.emplace(d.name, EtaChar(R, zeta_of(d.get("teich"), L), wild_of(d.get("wild"), R, L)));
      } else if (d.keyword == "heis") {
        const EtaChar& eta = env.etas.at(name_of(d.get("eta")));
        int sel = d.get("selector") ? static_cast<int>(value_int(*d.get("selector"), L)) : 0;
        std::optional<int> prec;
        if (d.get("precision")) prec = static_cast<int>(value_int(*d.get("precision"), L));
        HeisenbergDatum h = heis_minimal(eta, sel, prec);
        if (d.get("twist")) h = heis_twist(h, env.chars.at(name_of(d.get("twist"))));
        env.heis.emplace(d.name, std::move(h));
      } else if (d.keyword == "option") {
        if (d.get("tol")) env.tol = value_real(*d.get("tol"), L);
        if (d.get("max_cyc_level")) set_max_cyclotomic_level(value_int(*d.get("max_cyc_level"), L));
        if (d.get("kernel")) env.gauss.kernel = parse_kernel(d.get("kernel")->atom);
        if (d.get("threads")) env.gauss.threads = static_cast<int>(value_int(*d.get("threads"), L));
      }
      return 0;
    });
  }
  return env;
}

JobResult run_job(const Statement& job, Environment& env, const RunFlags& flags) {
  JobResult r;
  r.kind = job.keyword + " " + job.name;
  auto pos = job.positional();
  VerifyOptions opt;
  opt.flip_convention = flags.flip_convention;
  opt.float_only = flags.float_only;
  opt.tol = env.tol;
  opt.gauss = env.gauss;
  auto t0 = std::chrono::steady_clock::now();
  try {
    const std::string& k = job.name;
    if (job.keyword == "verify" && k == "deligne") {
      absorb(r, verify_deligne(env.chars.at(pos[0]->atom), env.chars.at(pos[1]->atom), env.psis.at(pos[2]->atom), opt));
    } else if (job.keyword == "verify" && k == "main") {
      if (const Value* o = job.get("orientation")) {
        if (o->atom == "c")
          opt.orientation = Orientation::C;
        else if (o->atom == "c-inverse")
          opt.orientation = Orientation::CInverse;
        else
          throw UsageError("orientation must be c or c-inverse");
      }
      absorb(r, verify_main(env.heis.at(pos[0]->atom), env.psis.at(pos[1]->atom), opt));
    } else if (job.keyword == "verify" && k == "sigma") {
      absorb(r, verify_sigma(char_list(job.get("sigma"), env), env.heis.at(pos[0]->atom), env.psis.at(pos[1]->atom),
                             opt));
    } else if (job.keyword == "verify" && k == "invariant") {
      absorb(r, verify_invariant(env.heis.at(pos[0]->atom), env.heis.at(pos[1]->atom), env.psis.at(pos[2]->atom), opt));
    } else if (job.keyword == "verify" && k == "dh-gamma") {
      const HeisenbergDatum& rho = env.heis.at(pos[0]->atom);
      const AddCharacter& psi = env.psis.at(pos[1]->atom);
      int depth = static_cast<int>(value_int(*job.get("depth"), job.line));
      TwistContext ctx(rho, psi, env.gauss);
      auto probes = job.get("probes") ? char_list(job.get("probes"), env) : default_probes(rho, depth);
      GammaSolution g = dh_gamma(ctx, depth, probes);
      r.inputs["rho"] = rho.str();
      r.inputs["psi"] = psi.str();
      r.inputs["depth"] = depth;
      r.inputs["probes"] = g.probes;
      r.notes = g.notes;
      int expect_val = rho.report.artin + rho.dim() * psi.conductor();
      r.checks["unique"] = g.unique();
      r.checks["valuation"] = g.valuation == expect_val;
      bool held = true;
      if (g.unique()) {
        r.lhs = g.gamma().str();
        r.rhs = "val " + std::to_string(expect_val) + " mod U^" + std::to_string(depth);
        RootNumber w0 = ctx.w_rho();
        for (const auto& chi : char_list(job.get("holdout"), env)) {
          bool ok = rootnum_eq(ctx.w_twist(chi), w0 * RootNumber(chi.eval(g.gamma()), rho.base()->p(), 0));
          if (!ok) r.notes.push_back("held-out probe fails: " + chi.str());
          held = held && ok;
        }
        r.checks["holdout"] = held;
      }
      r.equal = g.unique() && g.valuation == expect_val && held && !flags.flip_convention;
      r.digest = digest_of(r.kind + "|" + r.inputs.dump());
    } else if (job.keyword == "verify" && k == "converse") {
      const HeisenbergDatum& rho = env.heis.at(pos[0]->atom);
      const AddCharacter& psi = env.psis.at(pos[1]->atom);
      TwistContext ctx(rho, psi, env.gauss);
      std::vector<std::vector<std::vector<MulCharacter>>> classes;
      if (const Value* f = job.get("family")) {
        std::vector<std::vector<MulCharacter>> fam;
        for (const auto& s : f->items) fam.push_back(char_list(&s, env));
        classes.push_back(std::move(fam));
      } else {
        auto chars = char_list(job.get("chars"), env);
        if (chars.empty()) chars = default_probes(rho, 1);
        int kk = job.get("k") ? static_cast<int>(value_int(*job.get("k"), job.line)) : 2;
        classes = partition_by_determinant(multisets(chars, kk));
      }
      nlohmann::ordered_json reps = nlohmann::ordered_json::array();
      std::size_t bad = 0, mus = 0;
      for (const auto& fam : classes) {
        ConverseReport c = converse_check(fam, ctx);
        bad += c.counterexamples();
        mus += c.twisted;
        reps.push_back(c.to_json());
      }
      r.inputs["rho"] = rho.str();
      r.inputs["psi"] = psi.str();
      r.inputs["classes"] = classes.size();
      r.value = reps;
      r.checks["counterexamples"] = bad;
      r.checks["twists_found"] = mus;
      r.equal = bad == 0 && !flags.flip_convention;
      r.digest = digest_of(r.kind + "|" + r.inputs.dump());
    } else if (k == "char-w") {
      const MulCharacter& chi = env.chars.at(pos[0]->atom);
      const AddCharacter& psi = env.psis.at(pos[1]->atom);
      RootNumber w = w_char(chi, psi, env.gauss);
      r.inputs["chi"] = chi.str();
      r.inputs["psi"] = psi.str();
      r.value = w.str();
      r.equal = unit_modulus(w);
      r.checks["unit_modulus"] = r.equal;
      r.digest = digest_of(r.kind + "|" + r.inputs.dump());
    } else if (k == "gauss-point") {
      const MulCharacter& chi = env.chars.at(pos[0]->atom);
      const AddCharacter& psi = env.psis.at(pos[1]->atom);
      GaussPoint gp = gauss_point(chi, psi);
      r.inputs["chi"] = chi.str();
      r.inputs["psi"] = psi.str();
      r.value = gp.str();
      r.equal = gp.c.val == gp.conductor + gp.n_psi;
      r.checks["valuation"] = r.equal;
      r.digest = digest_of(r.kind + "|" + r.inputs.dump());
    } else if (k == "ind-w") {
      const HeisenbergDatum& rho = env.heis.at(pos[0]->atom);
      const AddCharacter& psi = env.psis.at(pos[1]->atom);
      RootNumber w = w_induced(rho.E, rho.theta, psi, env.gauss);
      r.inputs["rho"] = rho.str();
      r.inputs["psi"] = psi.str();
      r.value = w.str();
      r.equal = unit_modulus(w);
      r.checks["unit_modulus"] = r.equal;
      r.digest = digest_of(r.kind + "|" + r.inputs.dump());
    } else if (k == "conductor") {
      const HeisenbergDatum& rho = env.heis.at(pos[0]->atom);
      r.inputs["rho"] = rho.str();
      r.value = rho.report.to_json();
      int a_theta = conductor_scan(rho.theta);
      bool induced = rho.report.artin == induced_conductor(rho.dim(), 0, 1, a_theta);
      r.checks["scan_matches_analytic"] = a_theta == rho.theta.conductor();
      r.checks["induced_formula"] = induced;
      r.equal = a_theta == rho.theta.conductor() && induced;
      r.digest = digest_of(r.kind + "|" + r.inputs.dump());
    } else {
      throw UsageError("unsupported job " + r.kind);
    }
  } catch (const std::exception& e) {
    r.equal = false;
    r.error = std::string(error_kind(e)) + ": " + e.what();
    if (r.digest.empty()) r.digest = digest_of(job.str());
  }
  if (flags.timing)
    r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

RunOutcome run_session(const Session& s, const RunFlags& flags) {
  Environment env = resolve(s);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.jobs.size(); ++i)
    if (!flags.kind || s.jobs[i].name == *flags.kind) idx.push_back(i);
  std::vector<JobResult> results(idx.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next++) < idx.size();) {
      results[t] = run_job(s.jobs[idx[t]], env, flags);
      results[t].id = std::to_string(idx[t] + 1);
    }
  };
  int nthreads = std::max(1, std::min<int>(flags.jobs, static_cast<int>(idx.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  nlohmann::ordered_json jobs = nlohmann::ordered_json::array();
  std::size_t passed = 0, failed = 0, errors = 0;
  long long total_ms = 0;
  int orient_c = 0, orient_ci = 0, mains = 0;
  for (const auto& r : results) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["kind"] = r.kind;
    j["inputs"] = r.inputs;
    j["digest"] = r.digest;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["equal"] = r.equal;
    if (!r.value.is_null()) j["value"] = r.value;
    j["checks"] = r.checks;
    j["notes"] = r.notes;
    if (r.error) j["error"] = *r.error;
    j["ms"] = r.ms;
    jobs.push_back(std::move(j));
    if (r.error)
      ++errors;
    else if (r.equal)
      ++passed;
    else
      ++failed;
    total_ms += r.ms;
    if (r.kind == "verify main" && !r.error) {
      ++mains;
      if (r.checks.value("orientation_c", false)) ++orient_c;
      if (r.checks.value("orientation_c_inverse", false)) ++orient_ci;
    }
  }
  std::string orientation = "untested";
  if (mains > 0) {
    if (orient_c == mains && orient_ci < mains)
      orientation = "c";
    else if (orient_ci == mains && orient_c < mains)
      orientation = "c-inverse";
    else if (orient_c == mains)
      orientation = "undetermined (both hold)";
    else
      orientation = "not uniform";
  }
  RunOutcome out;
  auto& rep = out.report;
  rep["schema"] = 1;
  rep["jobs"] = jobs;
  rep["summary"] = {{"total", results.size()}, {"passed", passed}, {"failed", failed}, {"errors", errors},
                    {"ms", total_ms}};
  rep["conventions"] = {{"root_number", "q^{-a/2} sum chi^{-1}(u/gamma) psi(u/gamma), val(gamma) = a + n(psi)"},
                        {"psi", "psi_std(Tr(c0 x)), n(psi) = val(c0)"},
                        {"gauss_point", "chi(1+x) = psi(x/c), c determined mod U^floor(a/2)"},
                        {"deligne_y", "y = c^{-1}"},
                        {"main_orientation", orientation},
                        {"float_only", flags.float_only},
                        {"flip_convention", flags.flip_convention},
                        {"seed", flags.seed}};
  out.exit_code = (failed || errors) ? 1 : 0;
  return out;
}

}  // namespace epsfact
