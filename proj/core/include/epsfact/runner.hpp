#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "epsfact/characters.hpp"
#include "epsfact/epsilon.hpp"
#include "epsfact/heisenberg.hpp"
#include "epsfact/session.hpp"

namespace epsfact {

// Declarations of a session, materialised. Built once before any job runs.
struct Environment {
  std::map<std::string, RingPtr> rings;
  std::map<std::string, AddCharacter> psis;
  std::map<std::string, MulCharacter> chars;
  std::map<std::string, EtaChar> etas;
  std::map<std::string, HeisenbergDatum> heis;
  double tol = 1e-9;
  GaussOptions gauss;
};

Environment resolve(const Session& s);

// psi shift syntax: integer n (p^v(n) * unit), p^k, p^k*u, or a coefficient list.
FieldElem parse_shift(const RingPtr& R, const Value& v, int line);
GaussKernel parse_kernel(const std::string& name);

struct RunFlags {
  int jobs = 1;
  unsigned long long seed = 0x5eed;
  bool float_only = false;
  bool flip_convention = false;
  bool timing = true;
  std::optional<std::string> kind;  // run only jobs of this kind (e.g. "main")
};

struct JobResult {
  std::string id;
  std::string kind;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  std::string digest;
  std::string lhs, rhs;
  bool equal = false;
  std::optional<std::string> error;
  nlohmann::ordered_json checks = nlohmann::ordered_json::object();
  nlohmann::ordered_json value;
  std::vector<std::string> notes;
  long long ms = 0;
};

JobResult run_job(const Statement& job, Environment& env, const RunFlags& flags);

struct RunOutcome {
  nlohmann::ordered_json report;
  int exit_code = 0;
};

RunOutcome run_session(const Session& s, const RunFlags& flags);

}  // namespace epsfact
