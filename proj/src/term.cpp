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

#include "iforge/term.hpp"
#include "iforge/error.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <vector>

namespace iforge {

uint32_t eval_op(Op op, uint32_t a, uint32_t b) {
  switch (op) {
  case Op::Add:
    return a + b;
  case Op::Sub:
    return a - b;
  case Op::And:
    return a & b;
  case Op::Or:
    return a | b;
  case Op::Xor:
    return a ^ b;
  case Op::CmpEq:
    return a == b ? 0xFFFFFFFFu : 0u;
  }
  return 0; // unreachable
}

const char *op_token(Op op) {
  switch (op) {
  case Op::Add:
    return "+";
  case Op::Sub:
    return "-";
  case Op::And:
    return "&";
  case Op::Or:
    return "|";
  case Op::Xor:
    return "^";
  case Op::CmpEq:
    return "==";
  }
  return "?";
}

TermPtr Term::integer(int32_t value) {
  auto t = std::shared_ptr<Term>(new Term(Kind::Int));
  t->value_ = value;
  return t;
}

TermPtr Term::integer_wrapped(int64_t value) {
  return integer(static_cast<int32_t>(static_cast<uint32_t>(value)));
}

TermPtr Term::symbol(std::string name) {
  auto t = std::shared_ptr<Term>(new Term(Kind::Sym));
  t->name_ = std::move(name);
  return t;
}

TermPtr Term::wildcard() {
  static const TermPtr instance = std::shared_ptr<Term>(new Term(Kind::Wild));
  return instance;
}

TermPtr Term::app(Op op, TermPtr lhs, TermPtr rhs) {
  auto t = std::shared_ptr<Term>(new Term(Kind::App));
  t->op_ = op;
  t->lhs_ = std::move(lhs);
  t->rhs_ = std::move(rhs);
  return t;
}

bool Term::is_ground() const {
  switch (kind_) {
  case Kind::Wild:
    return false;
  case Kind::App:
    return lhs_->is_ground() && rhs_->is_ground();
  default:
    return true;
  }
}

bool term_equal(const TermPtr &a, const TermPtr &b) {
  if (a.get() == b.get())
    return true;
  if (a->kind() != b->kind())
    return false;
  switch (a->kind()) {
  case Term::Kind::Int:
    return a->value() == b->value();
  case Term::Kind::Sym:
    return a->name() == b->name();
  case Term::Kind::Wild:
    return true;
  case Term::Kind::App:
    return a->op() == b->op() && term_equal(a->lhs(), b->lhs()) &&
           term_equal(a->rhs(), b->rhs());
  }
  return false;
}

int term_compare(const TermPtr &a, const TermPtr &b) {
  if (a.get() == b.get())
    return 0;
  int ka = static_cast<int>(a->kind());
  int kb = static_cast<int>(b->kind());
  if (ka != kb)
    return ka < kb ? -1 : 1;
  switch (a->kind()) {
  case Term::Kind::Int:
    if (a->value() != b->value())
      return a->value() < b->value() ? -1 : 1;
    return 0;
  case Term::Kind::Sym:
    return a->name().compare(b->name());
  case Term::Kind::Wild:
    return 0;
  case Term::Kind::App: {
    int oa = static_cast<int>(a->op());
    int ob = static_cast<int>(b->op());
    if (oa != ob)
      return oa < ob ? -1 : 1;
    if (int c = term_compare(a->lhs(), b->lhs()))
      return c;
    return term_compare(a->rhs(), b->rhs());
  }
  }
  return 0;
}

bool match_term(const TermPtr &pattern, const TermPtr &subject) {
  if (pattern->is_wild())
    return true;
  if (pattern->kind() != subject->kind())
    return false;
  switch (pattern->kind()) {
  case Term::Kind::Int:
    return pattern->value() == subject->value();
  case Term::Kind::Sym:
    return pattern->name() == subject->name();
  case Term::Kind::App:
    return pattern->op() == subject->op() &&
           match_term(pattern->lhs(), subject->lhs()) &&
           match_term(pattern->rhs(), subject->rhs());
  default:
    return false;
  }
}

TermPtr fold_binop(Op op, const TermPtr &lhs, const TermPtr &rhs) {
  if (lhs->is_int() && rhs->is_int())
    return Term::integer(
        static_cast<int32_t>(eval_op(op, lhs->bits(), rhs->bits())));
  // Identities, in fixed order. Exactly the set needed to make
  // xor-with-self and compare-equal-with-self fold to constants on
  // registers whose contents are not otherwise usable.
  if (op == Op::Xor && term_equal(lhs, rhs))
    return Term::integer(0);
  if (op == Op::Sub && term_equal(lhs, rhs))
    return Term::integer(0);
  if (op == Op::CmpEq && term_equal(lhs, rhs))
    return Term::integer(-1);
  return Term::app(op, lhs, rhs);
}

namespace {

bool is_ac(Op op) {
  return op == Op::Add || op == Op::And || op == Op::Or || op == Op::Xor;
}

void flatten_chain(Op op, const TermPtr &t, std::vector<TermPtr> &out) {
  if (t->is_app() && t->op() == op) {
    flatten_chain(op, t->lhs(), out);
    flatten_chain(op, t->rhs(), out);
  } else {
    out.push_back(t);
  }
}

} // namespace

TermPtr normalize_ac(const TermPtr &t) {
  if (!t->is_app())
    return t;
  TermPtr lhs = normalize_ac(t->lhs());
  TermPtr rhs = normalize_ac(t->rhs());
  if (!is_ac(t->op()))
    return fold_binop(t->op(), lhs, rhs);
  std::vector<TermPtr> operands;
  flatten_chain(t->op(), lhs, operands);
  flatten_chain(t->op(), rhs, operands);
  std::stable_sort(operands.begin(), operands.end(),
                   [](const TermPtr &a, const TermPtr &b) {
                     return term_compare(a, b) < 0;
                   });
  TermPtr acc = operands.front();
  for (size_t i = 1; i < operands.size(); ++i)
    acc = fold_binop(t->op(), acc, operands[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------

namespace {

class ExprParser {
public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  TermPtr parse() {
    TermPtr t = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("trailing input after expression");
    return t;
  }

private:
  std::string_view text_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string &msg) {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" +
                         std::string(text_) + "\"",
                     -1, static_cast<int>(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }

  char peek() { return text_[pos_]; }

  // Operator token starting at pos_, if any. Does not consume.
  bool peek_op(Op &op, size_t &len) {
    skip_ws();
    if (pos_ >= text_.size())
      return false;
    switch (text_[pos_]) {
    case '+':
      op = Op::Add;
      len = 1;
      return true;
    case '-':
      op = Op::Sub;
      len = 1;
      return true;
    case '&':
      op = Op::And;
      len = 1;
      return true;
    case '|':
      op = Op::Or;
      len = 1;
      return true;
    case '^':
      op = Op::Xor;
      len = 1;
      return true;
    case '=':
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        op = Op::CmpEq;
        len = 2;
        return true;
      }
      fail("single '=' is not an operator (use '==')");
    default:
      return false;
    }
  }

  TermPtr parse_expr() {
    TermPtr acc = parse_atom();
    Op op;
    size_t len;
    while (peek_op(op, len)) {
      pos_ += len;
      TermPtr rhs = parse_atom();
      // No precedence: chains associate left in source order.
      acc = Term::app(op, acc, rhs);
    }
    return acc;
  }

  TermPtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size())
      fail("expected a term");
    char c = peek();
    if (c == '(') {
      ++pos_;
      TermPtr inner = parse_expr();
      skip_ws();
      if (pos_ >= text_.size() || peek() != ')')
        fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '_') {
      ++pos_;
      if (pos_ < text_.size() &&
          (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
        fail("identifiers must start with a letter ('_' alone is the wildcard)");
      return Term::wildcard();
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c)))
      return parse_int();
    if (std::isalpha(static_cast<unsigned char>(c)))
      return parse_ident();
    fail(std::string("unexpected character '") + c + "'");
  }

  TermPtr parse_int() {
    size_t start = pos_;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected digits after '-'");
    }
    uint64_t magnitude = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
      magnitude = magnitude * 10 + static_cast<uint64_t>(peek() - '0');
      if (magnitude > (1ull << 40)) {
        pos_ = start;
        fail("integer literal out of range");
      }
      ++pos_;
    }
    int64_t v = negative ? -static_cast<int64_t>(magnitude)
                         : static_cast<int64_t>(magnitude);
    return Term::integer_wrapped(v);
  }

  TermPtr parse_ident() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      ++pos_;
    return Term::symbol(std::string(text_.substr(start, pos_ - start)));
  }
};

} // namespace

TermPtr parse_term(std::string_view text) { return ExprParser(text).parse(); }

std::string print_term(const TermPtr &t) {
  switch (t->kind()) {
  case Term::Kind::Int:
    return std::to_string(t->value());
  case Term::Kind::Sym:
    return t->name();
  case Term::Kind::Wild:
    return "_";
  case Term::Kind::App:
    return "(" + print_term(t->lhs()) + op_token(t->op()) +
           print_term(t->rhs()) + ")";
  }
  return "?";
}

uint32_t eval_term(const TermPtr &t, const std::map<std::string, uint32_t> &env) {
  switch (t->kind()) {
  case Term::Kind::Int:
    return t->bits();
  case Term::Kind::Sym: {
    auto it = env.find(t->name());
    if (it == env.end())
      throw std::out_of_range("unknown symbol: " + t->name());
    return it->second;
  }
  case Term::Kind::Wild:
    throw std::logic_error("cannot evaluate a wildcard");
  case Term::Kind::App:
    return eval_op(t->op(), eval_term(t->lhs(), env), eval_term(t->rhs(), env));
  }
  return 0;
}

} // namespace iforge
