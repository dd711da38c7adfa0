#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trustlogic {

// Thrown on malformed formula text. `position()` is the byte offset into the
// input at which the problem was detected.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : std::runtime_error("parse error at offset " + std::to_string(position) +
                           ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

using VarName = std::string;

// True iff `s` is a valid name: ASCII letter followed by ASCII letters,
// digits, or underscores.
bool is_identifier(std::string_view s);

// A finite set of data-variable names. Members are kept sorted and
// duplicate-free, so two Datasets are equal iff their member vectors are.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<VarName> names);
  Dataset(std::initializer_list<const char*> names);

  bool empty() const { return names_.empty(); }
  std::size_t size() const { return names_.size(); }
  bool contains(const VarName& name) const;
  bool subset_of(const Dataset& other) const;
  Dataset union_with(const Dataset& other) const;
  const std::vector<VarName>& names() const { return names_; }

  // Comma-separated members in sorted order, no surrounding braces.
  std::string to_text() const;

  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
  friend auto operator<=>(const Dataset&, const Dataset&) = default;

 private:
  std::vector<VarName> names_;
};

enum class FormulaKind { Atom, Not, Implies, Belief, Announce };

// Immutable formula tree over the five primitive constructors. Knowledge
// K{X}, biconditional <-> and the constant false are surface sugar that the
// parser eliminates, so they never appear as nodes. Nodes are shared via
// shared_ptr and never mutated after construction.
class Formula {
 public:
  using Ptr = std::shared_ptr<const Formula>;

  static Ptr atom(std::string name);
  static Ptr negation(Ptr body);
  static Ptr implies(Ptr lhs, Ptr rhs);
  static Ptr belief(Dataset trust, Dataset data, Ptr body);
  static Ptr announce(Dataset data, Ptr body);

  FormulaKind kind() const { return kind_; }
  const std::string& atom_name() const { return atom_; }  // Atom
  const Ptr& body() const { return a_; }                  // Not/Belief/Announce
  const Ptr& lhs() const { return a_; }                   // Implies
  const Ptr& rhs() const { return b_; }                   // Implies
  const Dataset& trust() const { return trust_; }         // Belief
  const Dataset& data() const { return data_; }           // Belief/Announce

 private:
  Formula() = default;
  FormulaKind kind_ = FormulaKind::Atom;
  std::string atom_;
  Dataset trust_;
  Dataset data_;
  Ptr a_;
  Ptr b_;
};

using FormulaPtr = Formula::Ptr;

bool operator==(const Formula& a, const Formula& b);
inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

// Atom reserved for encoding the constant false as !(__f -> __f). The parser
// rejects it in user input; `falsum()` is the only way it enters a tree.
inline constexpr std::string_view kFalsumAtom = "__f";
FormulaPtr falsum();

// Parses the concrete grammar:
//   formula := imp ('<->' formula)?
//   imp     := unary ('->' imp)?                  right-associative
//   unary   := '!' unary | 'B' '{'set'}' '{'set'}' unary
//            | 'K' '{'set'}' unary | '[' set ']' unary | primary
//   primary := ident | 'false' | '(' formula ')'
// Prefix operators bind tighter than '->'; '<->' is lowest. Datasets are
// comma-separated identifier lists and may be empty.
FormulaPtr parse_formula(std::string_view text);

// Canonical text: datasets sorted, minimal parentheses. parse(print(f)) == f
// for every tree the parser or the generators can produce.
std::string print_formula(const Formula& f);

// Number of nodes in the syntax tree (occurrences, not distinct subtrees).
std::size_t node_count(const Formula& f);

// Union of every dataset mentioned by Belief and Announce nodes.
Dataset free_variables(const Formula& f);

}  // namespace trustlogic
