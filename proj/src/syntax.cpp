#include "trustlogic/syntax.hpp"

#include <algorithm>
#include <cctype>

namespace trustlogic {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  unsigned char first = static_cast<unsigned char>(s[0]);
  if (first >= 0x80 || !std::isalpha(first)) return false;
  for (char c : s.substr(1)) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u >= 0x80 || (!std::isalnum(u) && c != '_')) return false;
  }
  return true;
}

Dataset::Dataset(std::vector<VarName> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

Dataset::Dataset(std::initializer_list<const char*> names) {
  names_.assign(names.begin(), names.end());
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

bool Dataset::contains(const VarName& name) const {
  return std::binary_search(names_.begin(), names_.end(), name);
}

bool Dataset::subset_of(const Dataset& other) const {
  return std::includes(other.names_.begin(), other.names_.end(),
                       names_.begin(), names_.end());
}

Dataset Dataset::union_with(const Dataset& other) const {
  Dataset out;
  out.names_.reserve(names_.size() + other.names_.size());
  std::set_union(names_.begin(), names_.end(), other.names_.begin(),
                 other.names_.end(), std::back_inserter(out.names_));
  return out;
}

std::string Dataset::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) out += ',';
    out += names_[i];
  }
  return out;
}

FormulaPtr Formula::atom(std::string name) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = FormulaKind::Atom;
  f->atom_ = std::move(name);
  return f;
}

FormulaPtr Formula::negation(Ptr body) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = FormulaKind::Not;
  f->a_ = std::move(body);
  return f;
}

FormulaPtr Formula::implies(Ptr lhs, Ptr rhs) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = FormulaKind::Implies;
  f->a_ = std::move(lhs);
  f->b_ = std::move(rhs);
  return f;
}

FormulaPtr Formula::belief(Dataset trust, Dataset data, Ptr body) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = FormulaKind::Belief;
  f->trust_ = std::move(trust);
  f->data_ = std::move(data);
  f->a_ = std::move(body);
  return f;
}

FormulaPtr Formula::announce(Dataset data, Ptr body) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = FormulaKind::Announce;
  f->data_ = std::move(data);
  f->a_ = std::move(body);
  return f;
}

bool operator==(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::Atom:
      return a.atom_name() == b.atom_name();
    case FormulaKind::Not:
      return *a.body() == *b.body();
    case FormulaKind::Implies:
      return *a.lhs() == *b.lhs() && *a.rhs() == *b.rhs();
    case FormulaKind::Belief:
      return a.trust() == b.trust() && a.data() == b.data() &&
             *a.body() == *b.body();
    case FormulaKind::Announce:
      return a.data() == b.data() && *a.body() == *b.body();
  }
  return false;
}

FormulaPtr falsum() {
  static const FormulaPtr f = [] {
    auto bottom = Formula::atom(std::string(kFalsumAtom));
    return Formula::negation(Formula::implies(bottom, bottom));
  }();
  return f;
}

namespace {

enum class Tok {
  Ident,
  KwFalse,
  Bang,
  Arrow,
  Iff,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  End
};

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }
  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[i_]))) {
      ++i_;
    }
    std::size_t start = i_;
    if (i_ >= src_.size()) {
      cur_ = {Tok::End, "", start};
      return;
    }
    unsigned char c = static_cast<unsigned char>(src_[i_]);
    if (c >= 0x80) throw ParseError(start, "non-ASCII byte in input");
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i_;
      while (j < src_.size()) {
        unsigned char u = static_cast<unsigned char>(src_[j]);
        if (u < 0x80 && (std::isalnum(u) || src_[j] == '_')) {
          ++j;
        } else {
          break;
        }
      }
      std::string word(src_.substr(i_, j - i_));
      if (c == '_') {
        if (word == kFalsumAtom) {
          throw ParseError(start, "'__f' is reserved and cannot be written");
        }
        throw ParseError(start, "identifiers must start with a letter");
      }
      i_ = j;
      cur_ = {word == "false" ? Tok::KwFalse : Tok::Ident, std::move(word),
              start};
      return;
    }
    switch (src_[i_]) {
      case '!': ++i_; cur_ = {Tok::Bang, "!", start}; return;
      case '(': ++i_; cur_ = {Tok::LParen, "(", start}; return;
      case ')': ++i_; cur_ = {Tok::RParen, ")", start}; return;
      case '{': ++i_; cur_ = {Tok::LBrace, "{", start}; return;
      case '}': ++i_; cur_ = {Tok::RBrace, "}", start}; return;
      case '[': ++i_; cur_ = {Tok::LBracket, "[", start}; return;
      case ']': ++i_; cur_ = {Tok::RBracket, "]", start}; return;
      case ',': ++i_; cur_ = {Tok::Comma, ",", start}; return;
      case '-':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
          i_ += 2;
          cur_ = {Tok::Arrow, "->", start};
          return;
        }
        throw ParseError(start, "expected '->'");
      case '<':
        if (i_ + 2 < src_.size() && src_[i_ + 1] == '-' && src_[i_ + 2] == '>') {
          i_ += 3;
          cur_ = {Tok::Iff, "<->", start};
          return;
        }
        throw ParseError(start, "expected '<->'");
      default:
        throw ParseError(start, std::string("unexpected character '") +
                                    src_[i_] + "'");
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token cur_{Tok::End, "", 0};
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  FormulaPtr run() {
    FormulaPtr f = formula();
    const Token& t = lex_.peek();
    if (t.type != Tok::End) {
      throw ParseError(t.pos, "unexpected trailing input");
    }
    return f;
  }

 private:
  FormulaPtr formula() {
    FormulaPtr l = implication();
    if (lex_.peek().type == Tok::Iff) {
      lex_.take();
      FormulaPtr r = formula();
      // A <-> B  expands to  !((A -> B) -> !(B -> A))
      return Formula::negation(Formula::implies(
          Formula::implies(l, r),
          Formula::negation(Formula::implies(r, l))));
    }
    return l;
  }

  FormulaPtr implication() {
    FormulaPtr l = unary();
    if (lex_.peek().type == Tok::Arrow) {
      lex_.take();
      return Formula::implies(std::move(l), implication());
    }
    return l;
  }

  FormulaPtr unary() {
    const Token& t = lex_.peek();
    switch (t.type) {
      case Tok::Bang:
        lex_.take();
        return Formula::negation(unary());
      case Tok::LBracket: {
        Dataset x = delimited_set(Tok::LBracket, Tok::RBracket);
        return Formula::announce(std::move(x), unary());
      }
      case Tok::KwFalse:
        lex_.take();
        return falsum();
      case Tok::LParen: {
        lex_.take();
        FormulaPtr f = formula();
        expect(Tok::RParen, "expected ')'");
        return f;
      }
      case Tok::Ident: {
        Token id = lex_.take();
        if (id.text == "B" && lex_.peek().type == Tok::LBrace) {
          Dataset trust = delimited_set(Tok::LBrace, Tok::RBrace);
          Dataset data = delimited_set(Tok::LBrace, Tok::RBrace);
          return Formula::belief(std::move(trust), std::move(data), unary());
        }
        if (id.text == "K" && lex_.peek().type == Tok::LBrace) {
          // K{X} f  is  B{}{X} f
          Dataset data = delimited_set(Tok::LBrace, Tok::RBrace);
          return Formula::belief(Dataset{}, std::move(data), unary());
        }
        return Formula::atom(std::move(id.text));
      }
      default:
        throw ParseError(t.pos, "expected a formula");
    }
  }

  Dataset delimited_set(Tok open, Tok close) {
    expect(open, open == Tok::LBrace ? "expected '{'" : "expected '['");
    std::vector<VarName> names;
    if (lex_.peek().type != close) {
      for (;;) {
        const Token& t = lex_.peek();
        if (t.type != Tok::Ident) {
          throw ParseError(t.pos, "expected a variable name");
        }
        names.push_back(lex_.take().text);
        if (lex_.peek().type == Tok::Comma) {
          lex_.take();
          continue;
        }
        break;
      }
    }
    expect(close, close == Tok::RBrace ? "expected '}'" : "expected ']'");
    return Dataset(std::move(names));
  }

  void expect(Tok type, const char* message) {
    const Token& t = lex_.peek();
    if (t.type != type) throw ParseError(t.pos, message);
    lex_.take();
  }

  Lexer lex_;
};

bool is_falsum(const Formula& f) {
  if (f.kind() != FormulaKind::Not) return false;
  const Formula& b = *f.body();
  return b.kind() == FormulaKind::Implies &&
         b.lhs()->kind() == FormulaKind::Atom &&
         b.lhs()->atom_name() == kFalsumAtom &&
         b.rhs()->kind() == FormulaKind::Atom &&
         b.rhs()->atom_name() == kFalsumAtom;
}

void print_rec(const Formula& f, std::string& out);

// Wraps implications, the only construct binding looser than the prefix
// operators, so that prefix bodies and implication left sides reparse.
void print_sub(const Formula& f, std::string& out) {
  if (f.kind() == FormulaKind::Implies) {
    out += '(';
    print_rec(f, out);
    out += ')';
  } else {
    print_rec(f, out);
  }
}

void print_rec(const Formula& f, std::string& out) {
  if (is_falsum(f)) {
    out += "false";
    return;
  }
  switch (f.kind()) {
    case FormulaKind::Atom:
      out += f.atom_name();
      return;
    case FormulaKind::Not:
      out += '!';
      print_sub(*f.body(), out);
      return;
    case FormulaKind::Implies:
      print_sub(*f.lhs(), out);
      out += " -> ";
      print_rec(*f.rhs(), out);
      return;
    case FormulaKind::Belief:
      out += "B{";
      out += f.trust().to_text();
      out += "}{";
      out += f.data().to_text();
      out += "} ";
      print_sub(*f.body(), out);
      return;
    case FormulaKind::Announce:
      out += '[';
      out += f.data().to_text();
      out += "] ";
      print_sub(*f.body(), out);
      return;
  }
}

void collect_vars(const Formula& f, std::vector<VarName>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return;
    case FormulaKind::Not:
      collect_vars(*f.body(), out);
      return;
    case FormulaKind::Implies:
      collect_vars(*f.lhs(), out);
      collect_vars(*f.rhs(), out);
      return;
    case FormulaKind::Belief:
      out.insert(out.end(), f.trust().begin(), f.trust().end());
      out.insert(out.end(), f.data().begin(), f.data().end());
      collect_vars(*f.body(), out);
      return;
    case FormulaKind::Announce:
      out.insert(out.end(), f.data().begin(), f.data().end());
      collect_vars(*f.body(), out);
      return;
  }
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).run(); }

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

std::size_t node_count(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return 1;
    case FormulaKind::Not:
    case FormulaKind::Belief:
    case FormulaKind::Announce:
      return 1 + node_count(*f.body());
    case FormulaKind::Implies:
      return 1 + node_count(*f.lhs()) + node_count(*f.rhs());
  }
  return 0;
}

Dataset free_variables(const Formula& f) {
  std::vector<VarName> vars;
  collect_vars(f, vars);
  return Dataset(std::move(vars));
}

}  // namespace trustlogic
