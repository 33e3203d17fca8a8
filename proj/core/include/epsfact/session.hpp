#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epsfact/arith.hpp"

namespace epsfact {

// A value in a session line: bare atom, zeta(den,num), or [v,...].
struct Value {
  enum class Kind { Atom, Zeta, List };
  Kind kind = Kind::Atom;
  std::string atom;
  i64 den = 1, num = 0;
  std::vector<Value> items;
  int column = 0;  // source position, ignored by ==

  bool operator==(const Value& o) const;
  std::string str() const;
};

struct Arg {
  std::string key;  // empty for positional arguments
  Value value;
  bool operator==(const Arg& o) const = default;
};

// One non-empty line: `ring F p=5 d=1 N=4`, `verify main rho std`, `option tol=1e-9`, ...
struct Statement {
  std::string keyword;
  std::string name;  // declared name; job kind for verify/eval; empty for option
  std::vector<Arg> args;
  int line = 0;  // ignored by ==

  bool operator==(const Statement& o) const { return keyword == o.keyword && name == o.name && args == o.args; }
  bool is_job() const { return keyword == "verify" || keyword == "eval"; }
  const Value* get(std::string_view key) const;
  std::vector<const Value*> positional() const;
  std::string str() const;
};

struct Session {
  std::vector<Statement> decls;  // ring, psi, char, eta, heis, option
  std::vector<Statement> jobs;   // verify, eval
  bool operator==(const Session& o) const = default;
  std::string print() const;
};

// Throws SyntaxError for malformed lines, unknown keys, duplicate or unresolved names.
Session parse_session(std::string_view text);
Session load_session(const std::filesystem::path& path);

i64 value_int(const Value& v, int line);
double value_real(const Value& v, int line);

}  // namespace epsfact
