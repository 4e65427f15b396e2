// Copyright 2026 The IdiomForge Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IFORGE_TERM_HPP
#define IFORGE_TERM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace iforge {

/// The closed operator set of the lane-expression language. Every value a
/// register lane can hold is built from 32-bit literals, opaque symbols and
/// these binary operators.
enum class Op : uint8_t { Add, Sub, And, Or, Xor, CmpEq };

/// Concrete 32-bit semantics of an operator, shared between symbolic
/// constant folding and the concrete interpreter. Add/Sub wrap mod 2^32;
/// CmpEq yields all-ones on equality, zero otherwise.
uint32_t eval_op(Op op, uint32_t a, uint32_t b);

/// Surface token for an operator: "+", "-", "&", "|", "^", "==".
const char *op_token(Op op);

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// An immutable symbolic lane value: a 32-bit integer literal, an opaque
/// symbol, the pattern-only wildcard, or a binary operator application.
/// Terms are values; share and copy freely across threads.
class Term {
public:
  enum class Kind : uint8_t { Int, Sym, Wild, App };

  static TermPtr integer(int32_t value);
  /// Wraps an arbitrary integer mod 2^32 into the canonical two's-complement
  /// range before constructing the literal.
  static TermPtr integer_wrapped(int64_t value);
  static TermPtr symbol(std::string name);
  static TermPtr wildcard();
  static TermPtr app(Op op, TermPtr lhs, TermPtr rhs);

  Kind kind() const { return kind_; }
  int32_t value() const { return value_; }
  uint32_t bits() const { return static_cast<uint32_t>(value_); }
  const std::string &name() const { return name_; }
  Op op() const { return op_; }
  const TermPtr &lhs() const { return lhs_; }
  const TermPtr &rhs() const { return rhs_; }

  bool is_int() const { return kind_ == Kind::Int; }
  bool is_sym() const { return kind_ == Kind::Sym; }
  bool is_wild() const { return kind_ == Kind::Wild; }
  bool is_app() const { return kind_ == Kind::App; }

  /// True when no wildcard occurs anywhere in the term.
  bool is_ground() const;

private:
  Kind kind_;
  int32_t value_ = 0;
  std::string name_;
  Op op_ = Op::Add;
  TermPtr lhs_, rhs_;

  explicit Term(Kind k) : kind_(k) {}
};

/// Structural equality. Purely syntactic: (a+0) != a.
bool term_equal(const TermPtr &a, const TermPtr &b);

/// Total order used by normalize_ac: Int < Sym < Wild < App, then by
/// value / name / (op, lhs, rhs). Returns <0, 0, >0.
int term_compare(const TermPtr &a, const TermPtr &b);

/// One-way pattern match: every wildcard in `pattern` matches any subject
/// term; everything else must agree structurally. The subject is expected
/// to be ground (states never contain wildcards).
bool match_term(const TermPtr &pattern, const TermPtr &subject);

/// Applies `op` with partial evaluation: two integer literals fold to the
/// wrapped 32-bit result; otherwise the built-in identities fire in fixed
/// order (xor(t,t)->0, sub(t,t)->0, cmpeq(t,t)->-1 for structurally equal
/// operands); otherwise the application is kept unevaluated. There is
/// deliberately no richer simplification (no x+0 -> x): goal matching is
/// syntactic and richer identities would change which goals match.
TermPtr fold_binop(Op op, const TermPtr &lhs, const TermPtr &rhs);

/// Flattens nested chains of the AC operators (+, &, |, ^), sorts the
/// operands by term_compare and reassociates to the left, folding
/// constants on the way. Idempotent and value-preserving. Off by default;
/// goal matching applies it to both sides only when a query asks for it.
TermPtr normalize_ac(const TermPtr &t);

/// Parses the expression grammar:
///   expr := term (op term)*      op: + - & | ^ ==
///   term := INT | IDENT | '_' | '(' expr ')'
/// There is no precedence; chains at one level fold left to right, and
/// nesting is written with parentheses. INT is decimal, optionally
/// negative, reduced mod 2^32. Throws ParseError with a column offset.
TermPtr parse_term(std::string_view text);

/// Canonical rendering; round-trips through parse_term. Applications are
/// always parenthesized: "((d+b)+(c+a))".
std::string print_term(const TermPtr &t);

/// Evaluates a ground term under a symbol environment with 32-bit
/// wrapping semantics. Throws std::out_of_range on an unbound symbol and
/// std::logic_error on a wildcard.
uint32_t eval_term(const TermPtr &t, const std::map<std::string, uint32_t> &env);

} // namespace iforge

#endif // IFORGE_TERM_HPP
