#include "retrakt/types.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <stdexcept>

namespace retrakt {

// ======================= construction & canonical form =======================

StrictPtr type_var(std::string name) {
  auto t = std::make_shared<StrictType>();
  t->kind = StrictType::Kind::Var;
  t->name = std::move(name);
  return t;
}

StrictPtr omega() {
  static const StrictPtr w = [] {
    auto t = std::make_shared<StrictType>();
    t->kind = StrictType::Kind::Omega;
    return t;
  }();
  return w;
}

bool is_omega(const StrictPtr& t) { return t->kind == StrictType::Kind::Omega; }

StrictPtr make_arrow(Intersection domain, StrictPtr codomain) {
  if (is_omega(codomain)) return omega();  // sigma -> w ~ w
  auto t = std::make_shared<StrictType>();
  t->kind = StrictType::Kind::Arrow;
  t->domain = std::move(domain);
  t->codomain = std::move(codomain);
  return t;
}

int cmp(const StrictPtr& a, const StrictPtr& b) {
  if (a == b) return 0;
  auto ka = static_cast<int>(a->kind), kb = static_cast<int>(b->kind);
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a->kind) {
    case StrictType::Kind::Var: return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
    case StrictType::Kind::Omega: return 0;
    case StrictType::Kind::Arrow: {
      int c = cmp(a->domain, b->domain);
      if (c != 0) return c;
      return cmp(a->codomain, b->codomain);
    }
  }
  return 0;
}

int cmp(const Intersection& a, const Intersection& b) {
  size_t n = std::min(a.members.size(), b.members.size());
  for (size_t i = 0; i < n; ++i) {
    int c = cmp(a.members[i], b.members[i]);
    if (c != 0) return c;
  }
  if (a.members.size() != b.members.size()) return a.members.size() < b.members.size() ? -1 : 1;
  return 0;
}

bool type_eq(const StrictPtr& a, const StrictPtr& b) { return cmp(a, b) == 0; }
bool inter_eq(const Intersection& a, const Intersection& b) { return cmp(a, b) == 0; }

Intersection make_inter(std::vector<StrictPtr> members) {
  if (members.empty()) throw std::invalid_argument("intersection must be nonempty");
  std::sort(members.begin(), members.end(), [](const StrictPtr& x, const StrictPtr& y) { return cmp(x, y) < 0; });
  members.erase(std::unique(members.begin(), members.end(),
                            [](const StrictPtr& x, const StrictPtr& y) { return cmp(x, y) == 0; }),
                members.end());
  // Drop w next to anything else.
  if (members.size() > 1) {
    std::vector<StrictPtr> kept;
    for (auto& m : members)
      if (!is_omega(m)) kept.push_back(m);
    if (!kept.empty()) members = std::move(kept);
  }
  // Drop members implied by another one; of an equivalent pair keep the
  // earlier member.
  if (members.size() > 1) {
    std::vector<StrictPtr> kept;
    for (size_t i = 0; i < members.size(); ++i) {
      bool redundant = false;
      for (size_t j = 0; j < members.size() && !redundant; ++j) {
        if (i == j || !strict_le(members[j], members[i])) continue;
        redundant = j < i || !strict_le(members[i], members[j]);
      }
      if (!redundant) kept.push_back(members[i]);
    }
    members = std::move(kept);
  }
  return Intersection{std::move(members)};
}

Intersection single(StrictPtr t) { return Intersection{{std::move(t)}}; }

// ======================= strict subtyping =======================

bool strict_le(const StrictPtr& a, const StrictPtr& b) {
  if (is_omega(b)) return true;
  switch (a->kind) {
    case StrictType::Kind::Var:
      return b->kind == StrictType::Kind::Var && a->name == b->name;
    case StrictType::Kind::Omega:
      return false;  // w <= b with b canonical and not w never holds
    case StrictType::Kind::Arrow:
      if (b->kind != StrictType::Kind::Arrow) return false;
      return subtype_strict(b->domain, a->domain) && strict_le(a->codomain, b->codomain);
  }
  return false;
}

bool subtype_strict(const Intersection& a, const Intersection& b) {
  for (const auto& nu : b.members) {
    if (is_omega(nu)) continue;
    bool found = false;
    for (const auto& mu : a.members) {
      if (strict_le(mu, nu)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool equiv_strict(const Intersection& a, const Intersection& b) {
  return subtype_strict(a, b) && subtype_strict(b, a);
}

bool equiv_strict(const StrictPtr& a, const StrictPtr& b) {
  return strict_le(a, b) && strict_le(b, a);
}

int top_arrows(const StrictPtr& t) {
  int n = 0;
  StrictPtr cur = t;
  while (cur->kind == StrictType::Kind::Arrow) {
    ++n;
    cur = cur->codomain;
  }
  return n;
}

static bool has_meet(const StrictPtr& t);
static bool has_meet(const Intersection& s) {
  if (s.members.size() > 1) return true;
  for (const auto& m : s.members)
    if (has_meet(m)) return true;
  return false;
}
static bool has_meet(const StrictPtr& t) {
  return t->kind == StrictType::Kind::Arrow && (has_meet(t->domain) || has_meet(t->codomain));
}

int rank(const StrictPtr& t) {
  if (t->kind != StrictType::Kind::Arrow) return 0;
  if (!has_meet(t)) return 0;
  return std::max(rank(t->domain) + 1, rank(t->codomain));
}

int rank(const Intersection& t) {
  int r = t.members.size() > 1 ? 1 : 0;
  for (const auto& m : t.members) r = std::max(r, rank(m));
  return r;
}

SpineSplit split_spine(const StrictPtr& t, int m) {
  SpineSplit out;
  StrictPtr cur = t;
  for (int i = 0; i < m; ++i) {
    if (cur->kind != StrictType::Kind::Arrow) throw std::invalid_argument("split_spine: not enough arrows");
    out.params.push_back(cur->domain);
    cur = cur->codomain;
  }
  out.core = cur;
  return out;
}

StrictPtr join_spine(const std::vector<Intersection>& params, const StrictPtr& core) {
  StrictPtr t = core;
  for (auto it = params.rbegin(); it != params.rend(); ++it) t = make_arrow(*it, t);
  return t;
}

// ======================= standard types =======================

StdPtr std_var(std::string name) {
  auto t = std::make_shared<StdType>();
  t->kind = StdType::Kind::Var;
  t->name = std::move(name);
  return t;
}

StdPtr std_omega() {
  static const StdPtr w = [] {
    auto t = std::make_shared<StdType>();
    t->kind = StdType::Kind::Omega;
    return t;
  }();
  return w;
}

StdPtr std_arrow(StdPtr domain, StdPtr codomain) {
  auto t = std::make_shared<StdType>();
  t->kind = StdType::Kind::Arrow;
  t->left = std::move(domain);
  t->right = std::move(codomain);
  return t;
}

StdPtr std_meet(StdPtr left, StdPtr right) {
  auto t = std::make_shared<StdType>();
  t->kind = StdType::Kind::Meet;
  t->left = std::move(left);
  t->right = std::move(right);
  return t;
}

Intersection to_strict(const StdPtr& s) {
  switch (s->kind) {
    case StdType::Kind::Var: return single(type_var(s->name));
    case StdType::Kind::Omega: return single(omega());
    case StdType::Kind::Meet: {
      Intersection l = to_strict(s->left), r = to_strict(s->right);
      std::vector<StrictPtr> all = l.members;
      all.insert(all.end(), r.members.begin(), r.members.end());
      return make_inter(std::move(all));
    }
    case StdType::Kind::Arrow: {
      Intersection dom = to_strict(s->left);
      Intersection cod = to_strict(s->right);
      std::vector<StrictPtr> arrows;
      for (const auto& mu : cod.members) arrows.push_back(make_arrow(dom, mu));
      return make_inter(std::move(arrows));
    }
  }
  throw std::logic_error("to_strict: bad kind");
}

StdPtr to_std(const StrictPtr& t) {
  switch (t->kind) {
    case StrictType::Kind::Var: return std_var(t->name);
    case StrictType::Kind::Omega: return std_omega();
    case StrictType::Kind::Arrow: return std_arrow(to_std(t->domain), to_std(t->codomain));
  }
  throw std::logic_error("to_std: bad kind");
}

StdPtr to_std(const Intersection& t) {
  StdPtr out = to_std(t.members.front());
  for (size_t i = 1; i < t.members.size(); ++i) out = std_meet(out, to_std(t.members[i]));
  return out;
}

// One strict member on the right against an intersection on the left,
// in the preorder extended with distributivity.
static bool std_le_one(const Intersection& a, const StrictPtr& nu) {
  if (is_omega(nu)) return true;
  if (nu->kind == StrictType::Kind::Var) {
    for (const auto& mu : a.members)
      if (mu->kind == StrictType::Kind::Var && mu->name == nu->name) return true;
    return false;
  }
  // Arrow target: pick a nonempty subset of arrow members whose domains are
  // all above nu's domain and whose codomains jointly dominate nu's codomain.
  std::vector<const StrictType*> arrows;
  for (const auto& mu : a.members)
    if (mu->kind == StrictType::Kind::Arrow) arrows.push_back(mu.get());
  if (arrows.empty()) return false;
  if (static_cast<int>(arrows.size()) > kStdWidthCap)
    throw std::invalid_argument("subtype_std: intersection wider than the supported cap");
  const size_t n = arrows.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool dom_ok = true;
    std::vector<StrictPtr> cods;
    for (size_t i = 0; i < n && dom_ok; ++i) {
      if (!(mask & (1u << i))) continue;
      if (!subtype_std_inter(nu->domain, arrows[i]->domain)) dom_ok = false;
      cods.push_back(arrows[i]->codomain);
    }
    if (!dom_ok) continue;
    if (std_le_one(Intersection{std::move(cods)}, nu->codomain)) return true;
  }
  return false;
}

bool subtype_std_inter(const Intersection& a, const Intersection& b) {
  for (const auto& nu : b.members)
    if (!std_le_one(a, nu)) return false;
  return true;
}

bool subtype_std(const StdPtr& a, const StdPtr& b) {
  return subtype_std_inter(to_strict(a), to_strict(b));
}

bool equiv_std(const StdPtr& a, const StdPtr& b) { return subtype_std(a, b) && subtype_std(b, a); }

bool equiv_std_inter(const Intersection& a, const Intersection& b) {
  return subtype_std_inter(a, b) && subtype_std_inter(b, a);
}

// ======================= parsing =======================

namespace {

struct TypeLexer {
  const std::string& src;
  size_t pos = 0;
  explicit TypeLexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("type parse error at column " + std::to_string(pos + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool try_str(const char* s) {
    skip_ws();
    size_t n = std::strlen(s);
    if (src.compare(pos, n, s) == 0) {
      pos += n;
      return true;
    }
    return false;
  }
};

struct TypeParser {
  TypeLexer lex;
  explicit TypeParser(const std::string& s) : lex(s) {}

  StdPtr parse() {
    StdPtr t = type();
    lex.skip_ws();
    if (lex.pos < lex.src.size()) lex.fail("unexpected trailing input");
    return t;
  }

  StdPtr type() {
    StdPtr lhs = inter();
    if (lex.try_str("->")) return std_arrow(lhs, type());
    return lhs;
  }

  StdPtr inter() {
    StdPtr t = atom();
    while (lex.peek() == '&') {
      ++lex.pos;
      t = std_meet(t, atom());
    }
    return t;
  }

  StdPtr atom() {
    char c = lex.peek();
    if (c == '(') {
      ++lex.pos;
      StdPtr t = type();
      if (lex.peek() != ')') lex.fail("expected ')'");
      ++lex.pos;
      return t;
    }
    if (c == '\'') {
      ++lex.pos;
      std::string name;
      while (lex.pos < lex.src.size() &&
             (std::isalnum(static_cast<unsigned char>(lex.src[lex.pos])) || lex.src[lex.pos] == '_'))
        name += lex.src[lex.pos++];
      if (name.empty()) lex.fail("expected a variable name after '");
      return std_var(name);
    }
    if (c == 'w') {
      size_t next = lex.pos + 1;
      if (next >= lex.src.size() || !(std::isalnum(static_cast<unsigned char>(lex.src[next])) || lex.src[next] == '_')) {
        ++lex.pos;
        return std_omega();
      }
    }
    lex.fail("expected a type");
  }
};

}  // namespace

StdPtr parse_type(const std::string& src) { return TypeParser(src).parse(); }

Intersection parse_intersection(const std::string& src) { return to_strict(parse_type(src)); }

StrictPtr parse_strict_type(const std::string& src) {
  Intersection i = parse_intersection(src);
  if (i.members.size() != 1)
    throw std::invalid_argument("expected a single strict type, got an intersection: " + src);
  return i.members.front();
}

// ======================= printing =======================

static void print_strict(const StrictPtr& t, std::string& out, bool in_inter);

// A multi-member domain needs no parens ('&' binds tighter than '->'),
// but an arrow member inside an intersection does.
static void print_inter(const Intersection& t, std::string& out) {
  for (size_t i = 0; i < t.members.size(); ++i) {
    if (i) out += " & ";
    print_strict(t.members[i], out, t.members.size() > 1);
  }
}

static void print_strict(const StrictPtr& t, std::string& out, bool in_inter) {
  switch (t->kind) {
    case StrictType::Kind::Var: out += "'" + t->name; return;
    case StrictType::Kind::Omega: out += "w"; return;
    case StrictType::Kind::Arrow: {
      if (in_inter) out += "(";
      bool dom_parens = t->domain.members.size() == 1 &&
                        t->domain.members.front()->kind == StrictType::Kind::Arrow;
      if (dom_parens) out += "(";
      print_inter(t->domain, out);
      if (dom_parens) out += ")";
      out += " -> ";
      print_strict(t->codomain, out, false);
      if (in_inter) out += ")";
      return;
    }
  }
}

std::string print_type(const StrictPtr& t) {
  std::string out;
  print_strict(t, out, false);
  return out;
}

std::string print_type(const Intersection& t) {
  std::string out;
  print_inter(t, out);
  return out;
}

std::string print_type(const StdPtr& t) {
  switch (t->kind) {
    case StdType::Kind::Var: return "'" + t->name;
    case StdType::Kind::Omega: return "w";
    case StdType::Kind::Arrow: {
      std::string l = print_type(t->left);
      if (t->left->kind == StdType::Kind::Arrow) l = "(" + l + ")";
      return l + " -> " + print_type(t->right);
    }
    case StdType::Kind::Meet: {
      std::string l = print_type(t->left);
      std::string r = print_type(t->right);
      if (t->left->kind == StdType::Kind::Arrow) l = "(" + l + ")";
      if (t->right->kind == StdType::Kind::Arrow || t->right->kind == StdType::Kind::Meet)
        r = "(" + r + ")";
      return l + " & " + r;
    }
  }
  throw std::logic_error("print_type: bad kind");
}

}  // namespace retrakt
