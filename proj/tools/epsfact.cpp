#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "epsfact/conductors.hpp"
#include "epsfact/epsilon.hpp"
#include "epsfact/errors.hpp"
#include "epsfact/runner.hpp"
#include "epsfact/session.hpp"
#include "epsfact/theorems.hpp"

using namespace epsfact;

namespace {

struct Global {
  std::string out;
  std::string cache_dir;
  i64 max_cyc_level = 100000;
  RunFlags flags;
  bool no_timing = false;
};

RootOfUnity parse_zeta(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("expected den,num, got '" + s + "'");
  return RootOfUnity(std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1)));
}

struct CharFlags {
  i64 p = 0;
  int d = 1;
  int N = 0;
  std::string pi = "1,0";
  std::string teich = "1,0";
  std::vector<std::string> wild;
  std::string psi = "std";
  std::string kernel = "reduced";
};

void add_char_flags(CLI::App* c, CharFlags& f) {
  c->add_option("--p", f.p, "residue characteristic")->required();
  c->add_option("--d", f.d, "degree of the unramified field");
  c->add_option("--N", f.N, "precision (0 picks the least that fits)");
  c->add_option("--pi", f.pi, "chi(p) as den,num");
  c->add_option("--teich", f.teich, "image of the Teichmueller generator as den,num");
  c->add_option("--wild", f.wild, "images of the wild generators as den,num (repeatable)");
  c->add_option("--psi", f.psi, "std, an integer, p^k or p^k*u");
  c->add_option("--kernel", f.kernel, "naive, histogram or reduced");
}

std::pair<MulCharacter, AddCharacter> build_char(const CharFlags& f) {
  auto make = [&](int N) {
    RingPtr R = ring_make(f.p, f.d, N);
    std::vector<RootOfUnity> w(R->gens().wild.size());
    if (f.wild.size() > w.size()) throw UsageError("too many wild images");
    for (std::size_t i = 0; i < f.wild.size(); ++i) w[i] = parse_zeta(f.wild[i]);
    MulCharacter chi(R, parse_zeta(f.pi), parse_zeta(f.teich), w);
    AddCharacter psi = AddCharacter::standard(R);
    if (f.psi != "std") {
      Value v;
      v.atom = f.psi;
      psi = AddCharacter(R, parse_shift(R, v, 0));
    }
    return std::make_pair(chi, psi);
  };
  if (f.N > 0) return make(f.N);
  for (int N = 2;; ++N) {
    try {
      return make(N);
    } catch (const Error&) {
      // too small for the conductor or for the orders of the wild images
      if (N > 24) throw;
    }
  }
}

void emit(const Global& g, const nlohmann::ordered_json& j) {
  std::string text = j.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream o(g.out, std::ios::binary);
  if (!o) throw UsageError("cannot write " + g.out);
  o << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact local root numbers and verification of the twisting formulas"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--out", g.out, "write the JSON result to this file");
  app.add_option("--cache-dir", g.cache_dir, "discrete-log table cache")->envname("EPSFACT_CACHE");
  app.add_option("--max-cyc-level", g.max_cyc_level, "cap on cyclotomic levels");
  app.add_option("--jobs", g.flags.jobs, "parallel jobs");
  app.add_option("--seed", g.flags.seed, "seed recorded in reports");
  app.add_flag("--float-only", g.flags.float_only, "compare with tolerance instead of exactly");
  app.add_flag("--flip-convention", g.flags.flip_convention, "negate every rhs (negative control)");
  app.add_flag("--no-timing", g.no_timing, "write ms = 0 so reports are byte-identical");

  CharFlags cw;
  auto* char_w = app.add_subcommand("char-w", "root number W(chi, psi)");
  add_char_flags(char_w, cw);
  CharFlags gpf;
  auto* gp = app.add_subcommand("gauss-point", "solve chi(1+x) = psi(x/c)");
  add_char_flags(gp, gpf);

  int lam_d = 1, lam_n = 0;
  i64 lam_p = 1;
  auto* lam = app.add_subcommand("lambda", "lambda factor of an unramified extension");
  lam->add_option("--d", lam_d, "degree")->required();
  lam->add_option("--n", lam_n, "n(psi)");
  lam->add_option("--p", lam_p, "prime (cosmetic)");

  std::string session_path, rho_name, psi_name;
  int depth = 0;
  auto* indw = app.add_subcommand("ind-w", "W(Ind theta, psi) for a Heisenberg datum of a session");
  indw->add_option("--session", session_path)->required();
  indw->add_option("--rho", rho_name)->required();
  indw->add_option("--psi", psi_name)->required();

  int c_m = 0, c_aeta = 0, c_jchi = -1;
  auto* cond = app.add_subcommand("conductor", "conductors of a Heisenberg representation");
  cond->add_option("--m", c_m, "dimension")->required();
  cond->add_option("--a-eta", c_aeta, "conductor of eta")->required();
  cond->add_option("--j-chi", c_jchi, "jump of the twist (omit for the minimal datum)");

  i64 dc_dim = 0, dc_p = 0, dc_q = 0;
  auto* dim = app.add_subcommand("dim-check", "admissible dimensions of U-isotropic Heisenberg representations");
  dim->add_option("--dim", dc_dim)->required();
  dim->add_option("--p", dc_p)->required();
  dim->add_option("--q", dc_q)->required();

  auto* dh = app.add_subcommand("dh-gamma", "solve for gamma with W(chi rho) = chi(gamma) W(rho)");
  dh->add_option("--session", session_path)->required();
  dh->add_option("--rho", rho_name)->required();
  dh->add_option("--psi", psi_name)->required();
  dh->add_option("--depth", depth)->required();

  std::string verify_kind;
  auto* ver = app.add_subcommand("verify", "run the jobs of one kind from a session");
  ver->add_option("kind", verify_kind, "deligne, main, sigma, invariant, dh-gamma or converse")
      ->required()
      ->check(CLI::IsMember({"deligne", "main", "sigma", "invariant", "dh-gamma", "converse"}));
  ver->add_option("--session", session_path)->required();

  auto* suite = app.add_subcommand("suite", "run every job of a session");
  suite->add_option("--session", session_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!g.cache_dir.empty()) set_dlog_cache_dir(std::filesystem::path(g.cache_dir));
    set_max_cyclotomic_level(g.max_cyc_level);
    g.flags.timing = !g.no_timing;

    if (char_w->parsed() || gp->parsed()) {
      const CharFlags& f = char_w->parsed() ? cw : gpf;
      auto [chi, psi] = build_char(f);
      nlohmann::ordered_json j;
      j["chi"] = chi.str();
      j["psi"] = psi.str();
      j["conductor"] = chi.conductor();
      if (char_w->parsed()) {
        GaussOptions o;
        o.kernel = parse_kernel(f.kernel);
        RootNumber w = w_char(chi, psi, o);
        j["w"] = w.str();
        auto z = w.embed();
        j["float"] = {static_cast<double>(z.real()), static_cast<double>(z.imag())};
      } else {
        GaussPoint pt = gauss_point(chi, psi);
        j["c"] = pt.c.str();
        j["modulus"] = pt.modulus;
        j["val"] = pt.c.val;
      }
      emit(g, j);
      return 0;
    }
    if (lam->parsed()) {
      RootNumber l = lambda_unramified(lam_d, lam_n, lam_p);
      emit(g, {{"d", lam_d}, {"n", lam_n}, {"lambda", l.str()}});
      return 0;
    }
    if (cond->parsed()) {
      ConductorReport r = c_jchi < 0 ? heis_minimal_conductors(c_m, c_aeta) : twist_conductor(c_m, c_aeta - 1, c_jchi);
      emit(g, r.to_json());
      return 0;
    }
    if (dim->parsed()) {
      DimCheck d = dim_theorem_check(dc_dim, dc_p, dc_q);
      emit(g, {{"dim", dc_dim}, {"p", dc_p}, {"q", dc_q}, {"valid", d.valid}, {"r", d.r}, {"m", d.m}});
      return d.valid ? 0 : 1;
    }
    if (indw->parsed() || dh->parsed()) {
      Environment env = resolve(load_session(session_path));
      const HeisenbergDatum& rho = env.heis.at(rho_name);
      const AddCharacter& psi = env.psis.at(psi_name);
      nlohmann::ordered_json j;
      j["rho"] = rho.str();
      j["psi"] = psi.str();
      if (indw->parsed()) {
        j["w"] = w_induced(rho.E, rho.theta, psi, env.gauss).str();
        emit(g, j);
        return 0;
      }
      GammaSolution s = dh_gamma(rho, psi, depth);
      j["valuation"] = s.valuation;
      j["modulus"] = s.modulus;
      nlohmann::ordered_json sols = nlohmann::ordered_json::array();
      for (const auto& x : s.solutions) sols.push_back(x.str());
      j["solutions"] = sols;
      j["probes"] = s.probes.size();
      j["notes"] = s.notes;
      emit(g, j);
      return s.unique() ? 0 : 1;
    }
    if (ver->parsed() || suite->parsed()) {
      Session s = load_session(session_path);
      if (ver->parsed()) g.flags.kind = verify_kind;
      RunOutcome o = run_session(s, g.flags);
      emit(g, o.report);
      return o.exit_code;
    }
  } catch (const std::out_of_range& e) {
    std::cerr << "epsfact: unknown name: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "epsfact: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
