#include "epsfact/session.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "epsfact/errors.hpp"

namespace epsfact {

bool Value::operator==(const Value& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Atom: return atom == o.atom;
    case Kind::Zeta: return den == o.den && num == o.num;
    case Kind::List: return items == o.items;
  }
  return false;
}

std::string Value::str() const {
  switch (kind) {
    case Kind::Atom: return atom;
    case Kind::Zeta: return "zeta(" + std::to_string(den) + "," + std::to_string(num) + ")";
    case Kind::List: {
      std::string s = "[";
      for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + items[i].str();
      return s + "]";
    }
  }
  return {};
}

const Value* Statement::get(std::string_view key) const {
  for (const auto& a : args)
    if (a.key == key) return &a.value;
  return nullptr;
}

std::vector<const Value*> Statement::positional() const {
  std::vector<const Value*> out;
  for (const auto& a : args)
    if (a.key.empty()) out.push_back(&a.value);
  return out;
}

std::string Statement::str() const {
  std::string s = keyword;
  if (!name.empty()) s += " " + name;
  for (const auto& a : args) s += " " + (a.key.empty() ? "" : a.key + "=") + a.value.str();
  return s;
}

std::string Session::print() const {
  std::string s;
  for (const auto& d : decls) s += d.str() + "\n";
  for (const auto& j : jobs) s += j.str() + "\n";
  return s;
}

namespace {

bool atom_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '^' || c == '*' || c == '+' ||
         c == '-' || c == '/' || c == ':';
}

class LineParser {
 public:
  LineParser(std::string_view s, int line) : s_(s), line_(line) {}

  [[noreturn]] void fail(std::size_t pos, const std::string& msg) const {
    throw SyntaxError(line_, static_cast<int>(pos) + 1, msg);
  }

  void skip_ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\r')) ++i_;
  }
  bool at_end() {
    skip_ws();
    return i_ >= s_.size() || s_[i_] == '#';
  }
  std::size_t pos() const { return i_; }

  std::string word(const char* what) {
    skip_ws();
    std::size_t b = i_;
    while (i_ < s_.size() && atom_char(s_[i_])) ++i_;
    if (b == i_) fail(b, std::string("expected ") + what);
    return std::string(s_.substr(b, i_ - b));
  }

  i64 integer() {
    std::size_t b = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    i64 v = 0;
    const char* first = s_.data() + b + (b < s_.size() && s_[b] == '+' ? 1 : 0);
    auto [p, ec] = std::from_chars(first, s_.data() + i_, v);
    if (ec != std::errc() || p != s_.data() + i_) fail(b, "expected integer");
    return v;
  }

  void expect(char c) {
    if (i_ >= s_.size() || s_[i_] != c) fail(i_, std::string("expected '") + c + "'");
    ++i_;
  }

  Value value() {
    Value v;
    v.column = static_cast<int>(i_) + 1;
    if (i_ < s_.size() && s_[i_] == '[') {
      ++i_;
      v.kind = Value::Kind::List;
      if (i_ < s_.size() && s_[i_] == ']') {
        ++i_;
        return v;
      }
      while (true) {
        v.items.push_back(value());
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        expect(']');
        return v;
      }
    }
    std::size_t b = i_;
    while (i_ < s_.size() && atom_char(s_[i_])) ++i_;
    if (b == i_) fail(b, "expected a value");
    v.atom = std::string(s_.substr(b, i_ - b));
    if (v.atom == "zeta") {
      expect('(');
      v.kind = Value::Kind::Zeta;
      v.den = integer();
      if (v.den < 1) fail(b, "zeta: denominator must be positive");
      expect(',');
      v.num = integer();
      expect(')');
      v.atom.clear();
    }
    return v;
  }

  Arg arg() {
    skip_ws();
    std::size_t b = i_;
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    Arg a;
    if (j > b && j < s_.size() && s_[j] == '=') {
      a.key = std::string(s_.substr(b, j - b));
      i_ = j + 1;
    }
    a.value = value();
    if (i_ < s_.size() && !(s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\r' || s_[i_] == '#'))
      fail(i_, "unexpected character '" + std::string(1, s_[i_]) + "'");
    return a;
  }

 private:
  std::string_view s_;
  int line_;
  std::size_t i_ = 0;
};

enum class Ref { Ring, Psi, Char, Eta, Heis };

struct Schema {
  std::vector<std::string> keys;
  std::vector<Ref> positional;                 // required positional references
  std::map<std::string, Ref> key_refs;         // keys holding a reference
  std::map<std::string, Ref> list_refs;        // keys holding a list of references
  std::vector<std::string> required;
};

const std::map<std::string, Schema>& decl_schemas() {
  static const std::map<std::string, Schema> s{
      {"ring", {{"p", "d", "N"}, {}, {}, {}, {"p", "N"}}},
      {"psi", {{"ring", "shift"}, {}, {{"ring", Ref::Ring}}, {}, {"ring"}}},
      {"char", {{"ring", "pi", "teich", "wild"}, {}, {{"ring", Ref::Ring}}, {}, {"ring"}}},
      {"eta", {{"ring", "teich", "wild"}, {}, {{"ring", Ref::Ring}}, {}, {"ring"}}},
      {"heis", {{"eta", "selector", "twist", "precision"}, {}, {{"eta", Ref::Eta}, {"twist", Ref::Char}}, {}, {"eta"}}},
      {"option", {{"tol", "max_cyc_level", "kernel", "threads"}, {}, {}, {}, {}}},
  };
  return s;
}

const std::map<std::string, Schema>& job_schemas() {
  static const std::map<std::string, Schema> s{
      {"verify deligne", {{}, {Ref::Char, Ref::Char, Ref::Psi}, {}, {}, {}}},
      {"verify main", {{"orientation"}, {Ref::Heis, Ref::Psi}, {}, {}, {}}},
      {"verify sigma", {{"sigma"}, {Ref::Heis, Ref::Psi}, {}, {{"sigma", Ref::Char}}, {"sigma"}}},
      {"verify invariant", {{}, {Ref::Heis, Ref::Heis, Ref::Psi}, {}, {}, {}}},
      {"verify dh-gamma",
       {{"depth", "probes", "holdout"}, {Ref::Heis, Ref::Psi}, {}, {{"probes", Ref::Char}, {"holdout", Ref::Char}},
        {"depth"}}},
      {"verify converse", {{"chars", "k", "family"}, {Ref::Heis, Ref::Psi}, {}, {{"chars", Ref::Char}}, {}}},
      {"eval char-w", {{}, {Ref::Char, Ref::Psi}, {}, {}, {}}},
      {"eval gauss-point", {{}, {Ref::Char, Ref::Psi}, {}, {}, {}}},
      {"eval ind-w", {{}, {Ref::Heis, Ref::Psi}, {}, {}, {}}},
      {"eval conductor", {{}, {Ref::Heis}, {}, {}, {}}},
  };
  return s;
}

const char* ref_name(Ref r) {
  switch (r) {
    case Ref::Ring: return "ring";
    case Ref::Psi: return "psi";
    case Ref::Char: return "char";
    case Ref::Eta: return "eta";
    case Ref::Heis: return "heis";
  }
  return "?";
}

Ref decl_ref(const std::string& kw) {
  if (kw == "ring") return Ref::Ring;
  if (kw == "psi") return Ref::Psi;
  if (kw == "char") return Ref::Char;
  if (kw == "eta") return Ref::Eta;
  return Ref::Heis;
}

class Checker {
 public:
  void resolve(const Value& v, Ref want, int line) const {
    if (v.kind != Value::Kind::Atom) throw SyntaxError(line, v.column, std::string("expected a ") + ref_name(want) + " name");
    auto it = names_.find(v.atom);
    if (it == names_.end()) throw SyntaxError(line, v.column, "unresolved name '" + v.atom + "'");
    if (it->second != want)
      throw SyntaxError(line, v.column, "'" + v.atom + "' is a " + ref_name(it->second) + ", expected " + ref_name(want));
  }

  void check(const Statement& st, const Schema& sc) const {
    std::set<std::string> seen;
    std::size_t npos = 0;
    for (const auto& a : st.args) {
      if (a.key.empty()) {
        if (npos >= sc.positional.size())
          throw SyntaxError(st.line, a.value.column, "unexpected positional argument");
        resolve(a.value, sc.positional[npos++], st.line);
        continue;
      }
      if (std::find(sc.keys.begin(), sc.keys.end(), a.key) == sc.keys.end())
        throw SyntaxError(st.line, a.value.column, "unknown key '" + a.key + "'");
      if (!seen.insert(a.key).second) throw SyntaxError(st.line, a.value.column, "repeated key '" + a.key + "'");
      if (auto r = sc.key_refs.find(a.key); r != sc.key_refs.end()) resolve(a.value, r->second, st.line);
      if (auto r = sc.list_refs.find(a.key); r != sc.list_refs.end()) {
        if (a.value.kind != Value::Kind::List) throw SyntaxError(st.line, a.value.column, "expected a list");
        for (const auto& it : a.value.items) resolve(it, r->second, st.line);
      }
      if (a.key == "family") {
        if (a.value.kind != Value::Kind::List) throw SyntaxError(st.line, a.value.column, "expected a list of lists");
        for (const auto& s : a.value.items) {
          if (s.kind != Value::Kind::List) throw SyntaxError(st.line, s.column, "expected a list");
          for (const auto& it : s.items) resolve(it, Ref::Char, st.line);
        }
      }
    }
    if (npos < sc.positional.size())
      throw SyntaxError(st.line, 1, std::string("missing ") + ref_name(sc.positional[npos]) + " argument");
    for (const auto& k : sc.required)
      if (!seen.count(k)) throw SyntaxError(st.line, 1, "missing key '" + k + "'");
  }

  void declare(const Statement& st, int column) {
    if (!names_.emplace(st.name, decl_ref(st.keyword)).second)
      throw SyntaxError(st.line, column, "duplicate name '" + st.name + "'");
  }

 private:
  std::map<std::string, Ref> names_;
};

}  // namespace

Session parse_session(std::string_view text) {
  Session out;
  Checker chk;
  int line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view ln = text.substr(start, end - start);
    ++line;
    start = end + 1;
    LineParser lp(ln, line);
    if (lp.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    Statement st;
    st.line = line;
    std::size_t kw_pos = lp.pos();
    st.keyword = lp.word("a keyword");
    bool job = st.keyword == "verify" || st.keyword == "eval";
    const Schema* sc = nullptr;
    int name_col = 0;
    if (job) {
      st.name = lp.word("a job kind");
      auto it = job_schemas().find(st.keyword + " " + st.name);
      if (it == job_schemas().end()) lp.fail(lp.pos() - st.name.size(), "unknown job '" + st.keyword + " " + st.name + "'");
      sc = &it->second;
    } else {
      auto it = decl_schemas().find(st.keyword);
      if (it == decl_schemas().end()) lp.fail(kw_pos, "unknown keyword '" + st.keyword + "'");
      sc = &it->second;
      if (st.keyword != "option") {
        lp.skip_ws();
        name_col = static_cast<int>(lp.pos()) + 1;
        st.name = lp.word("a name");
        for (char c : st.name)
          if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
            lp.fail(static_cast<std::size_t>(name_col - 1), "invalid name '" + st.name + "'");
      }
    }
    while (!lp.at_end()) st.args.push_back(lp.arg());
    if (!job && st.keyword != "option")
      for (const auto& a : st.args)
        if (a.key.empty()) throw SyntaxError(line, a.value.column, "declarations take key=value arguments only");
    chk.check(st, *sc);
    if (job) {
      out.jobs.push_back(std::move(st));
    } else {
      if (st.keyword != "option") chk.declare(st, name_col);
      out.decls.push_back(std::move(st));
    }
    if (end == text.size()) break;
  }
  return out;
}

Session load_session(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open session file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_session(ss.str());
}

i64 value_int(const Value& v, int line) {
  if (v.kind != Value::Kind::Atom) throw SyntaxError(line, v.column, "expected integer");
  i64 x = 0;
  const char* b = v.atom.data();
  const char* e = b + v.atom.size();
  if (b != e && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || p != e) throw SyntaxError(line, v.column, "expected integer, got '" + v.atom + "'");
  return x;
}

double value_real(const Value& v, int line) {
  if (v.kind != Value::Kind::Atom) throw SyntaxError(line, v.column, "expected number");
  try {
    std::size_t n = 0;
    double x = std::stod(v.atom, &n);
    if (n != v.atom.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw SyntaxError(line, v.column, "expected number, got '" + v.atom + "'");
  }
}

}  // namespace epsfact
