// Copyright 2026 The qctrl-bench Authors
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

#include "qctrl/symbolic/expression.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>

namespace qctrl::symbolic {

int arity(Op op) {
  switch (op) {
    case Op::kConst:
    case Op::kTime:
    case Op::kTotalTime:
    case Op::kCoeff:
      return 0;
    case Op::kAdd:
    case Op::kSub:
    case Op::kMul:
    case Op::kDiv:
    case Op::kPow:
      return 2;
    default:
      return 1;
  }
}

bool is_function(Op op) { return op >= Op::kSin; }

std::string_view function_name(Op op) {
  switch (op) {
    case Op::kSin: return "sin";
    case Op::kCos: return "cos";
    case Op::kExp: return "exp";
    case Op::kLog: return "log";
    case Op::kErf: return "erf";
    case Op::kTanh: return "tanh";
    case Op::kSinc: return "sinc";
    case Op::kTheta: return "theta";
    default: return "";
  }
}

namespace {

std::optional<Op> lookup_function(std::string_view name) {
  static const std::pair<std::string_view, Op> kTable[] = {
      {"sin", Op::kSin},        {"cos", Op::kCos},          {"exp", Op::kExp},
      {"log", Op::kLog},        {"erf", Op::kErf},          {"tanh", Op::kTanh},
      {"sinc", Op::kSinc},      {"theta", Op::kTheta},      {"Theta", Op::kTheta},
      {"heaviside", Op::kTheta}, {"Heaviside", Op::kTheta}, {"\xCE\x98", Op::kTheta},
  };
  for (const auto& [key, op] : kTable) {
    if (key == name) return op;
  }
  return std::nullopt;
}

enum class Tok {
  kNumber,
  kIdent,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kCaret,
  kLParen,
  kRParen,
  kComma,
  kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string_view text;
  std::size_t offset = 0;
};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Shortest text that parses back to the same double.
std::string format_exact(double v) {
  if (v == std::numbers::pi) return "pi";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%#.6g", v);
  return buf;
}

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecNeg = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

int precedence(Op op) {
  switch (op) {
    case Op::kAdd:
    case Op::kSub:
      return kPrecAdd;
    case Op::kMul:
    case Op::kDiv:
      return kPrecMul;
    case Op::kNeg:
      return kPrecNeg;
    case Op::kPow:
      return kPrecPow;
    default:
      return kPrecAtom;
  }
}

char binary_symbol(Op op) {
  switch (op) {
    case Op::kAdd: return '+';
    case Op::kSub: return '-';
    case Op::kMul: return '*';
    case Op::kDiv: return '/';
    default: return '^';
  }
}

}  // namespace

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Result<Expression, Rejection> run() {
    expr_.source_ = std::string(src_);
    advance();
    if (failed_) return *error_;
    parse_expr();
    if (failed_) return *error_;
    if (cur_.kind == Tok::kRParen) {
      fail(RejectCode::kUnbalancedParentheses, "unmatched ')'", cur_);
      return *error_;
    }
    if (cur_.kind != Tok::kEnd) {
      fail(RejectCode::kUnexpectedToken,
           "unexpected '" + std::string(cur_.text) + "' after complete expression", cur_);
      return *error_;
    }
    return std::move(expr_);
  }

 private:
  void fail(RejectCode code, std::string message, const Token& at) {
    if (failed_) return;
    failed_ = true;
    error_ = Rejection{code, std::move(message), Span{at.offset, at.text.size()}, {}};
  }

  void fail_at(RejectCode code, std::string message, std::size_t offset, std::size_t length) {
    if (failed_) return;
    failed_ = true;
    error_ = Rejection{code, std::move(message), Span{offset, length}, {}};
  }

  void advance() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r')) {
      ++pos_;
    }
    const std::size_t start = pos_;
    auto make = [&](Tok kind, std::size_t len) {
      pos_ = start + len;
      cur_ = Token{kind, src_.substr(start, len), start};
    };
    if (pos_ >= src_.size()) {
      cur_ = Token{Tok::kEnd, {}, src_.size()};
      return;
    }
    const char c = src_[pos_];
    const std::string_view rest = src_.substr(pos_);
    if (is_digit(c) || (c == '.' && rest.size() > 1 && is_digit(rest[1]))) {
      std::size_t i = 0;
      while (i < rest.size() && is_digit(rest[i])) ++i;
      if (i < rest.size() && rest[i] == '.') {
        ++i;
        while (i < rest.size() && is_digit(rest[i])) ++i;
      }
      if (i < rest.size() && (rest[i] == 'e' || rest[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < rest.size() && (rest[j] == '+' || rest[j] == '-')) ++j;
        if (j < rest.size() && is_digit(rest[j])) {
          while (j < rest.size() && is_digit(rest[j])) ++j;
          i = j;
        }
      }
      make(Tok::kNumber, i);
      return;
    }
    if (is_alpha(c)) {
      std::size_t i = 1;
      while (i < rest.size() && (is_alpha(rest[i]) || is_digit(rest[i]) || rest[i] == '_')) ++i;
      make(Tok::kIdent, i);
      return;
    }
    // Two-byte UTF-8 names: pi and capital theta.
    if (rest.starts_with("\xCF\x80") || rest.starts_with("\xCE\x98")) {
      make(Tok::kIdent, 2);
      return;
    }
    if (rest.starts_with("\xE2\x88\x92")) return make(Tok::kMinus, 3);  // U+2212
    if (rest.starts_with("\xC3\x97")) return make(Tok::kStar, 2);       // U+00D7
    if (rest.starts_with("\xC2\xB7")) return make(Tok::kStar, 2);       // U+00B7
    if (rest.starts_with("**")) return make(Tok::kCaret, 2);
    switch (c) {
      case '+': return make(Tok::kPlus, 1);
      case '-': return make(Tok::kMinus, 1);
      case '*': return make(Tok::kStar, 1);
      case '/': return make(Tok::kSlash, 1);
      case '^': return make(Tok::kCaret, 1);
      case '(': return make(Tok::kLParen, 1);
      case ')': return make(Tok::kRParen, 1);
      case ',': return make(Tok::kComma, 1);
      default: break;
    }
    std::string what;
    switch (c) {
      case '<':
      case '>':
      case '=':
      case '!':
        what = "comparison or assignment operator";
        break;
      case '&':
      case '|':
        what = "logical operator";
        break;
      case '?':
      case ':':
        what = "conditional expression";
        break;
      case '%':
        what = "modulo operator";
        break;
      case '[':
      case ']':
      case '{':
      case '}':
        what = "indexing or brace construct";
        break;
      case ';':
        what = "statement separator";
        break;
      case '"':
      case '\'':
      case '`':
        what = "string literal";
        break;
      default:
        break;
    }
    const std::size_t len = (static_cast<unsigned char>(c) >= 0x80) ? utf8_length(rest) : 1;
    if (!what.empty()) {
      fail_at(RejectCode::kDisallowedConstruct,
              what + " '" + std::string(rest.substr(0, len)) + "' is not part of the grammar",
              start, len);
    } else {
      fail_at(RejectCode::kUnexpectedCharacter,
              "unexpected character '" + printable(rest.substr(0, len)) + "'", start, len);
    }
    cur_ = Token{Tok::kEnd, {}, start};
  }

  static std::size_t utf8_length(std::string_view s) {
    const auto lead = static_cast<unsigned char>(s[0]);
    std::size_t n = 1;
    if ((lead & 0xE0) == 0xC0) n = 2;
    else if ((lead & 0xF0) == 0xE0) n = 3;
    else if ((lead & 0xF8) == 0xF0) n = 4;
    return std::min(n, s.size());
  }

  static std::string printable(std::string_view s) {
    std::string out;
    for (char ch : s) {
      const auto u = static_cast<unsigned char>(ch);
      if (u < 0x20 || u == 0x7F) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\x%02X", u);
        out += buf;
      } else {
        out += ch;
      }
    }
    return out;
  }

  int emit(Node node) {
    if (expr_.nodes_.size() >= kMaxNodes) {
      fail_at(RejectCode::kTooManyNodes,
              "expression exceeds " + std::to_string(kMaxNodes) + " nodes", node.span.offset,
              node.span.length);
      return -1;
    }
    expr_.nodes_.push_back(node);
    return static_cast<int>(expr_.nodes_.size()) - 1;
  }

  bool enter(const Token& at) {
    if (++depth_ > kMaxNesting) {
      fail(RejectCode::kNestingTooDeep,
           "nesting deeper than " + std::to_string(kMaxNesting) + " levels", at);
      return false;
    }
    return true;
  }
  void leave() { --depth_; }

  int parse_expr() {
    int lhs = parse_term();
    while (!failed_ && (cur_.kind == Tok::kPlus || cur_.kind == Tok::kMinus)) {
      const Token op = cur_;
      advance();
      const int rhs = parse_term();
      if (failed_) return -1;
      lhs = emit(Node{op.kind == Tok::kPlus ? Op::kAdd : Op::kSub, 0.0, -1, lhs, rhs,
                      Span{op.offset, op.text.size()}});
    }
    return lhs;
  }

  int parse_term() {
    int lhs = parse_unary();
    while (!failed_ && (cur_.kind == Tok::kStar || cur_.kind == Tok::kSlash)) {
      const Token op = cur_;
      advance();
      const int rhs = parse_unary();
      if (failed_) return -1;
      lhs = emit(Node{op.kind == Tok::kStar ? Op::kMul : Op::kDiv, 0.0, -1, lhs, rhs,
                      Span{op.offset, op.text.size()}});
    }
    return lhs;
  }

  int parse_unary() {
    if (failed_) return -1;
    if (cur_.kind == Tok::kPlus) {
      fail(RejectCode::kDisallowedConstruct, "unary '+' is not part of the grammar", cur_);
      return -1;
    }
    if (cur_.kind == Tok::kMinus) {
      const Token op = cur_;
      if (!enter(op)) return -1;
      advance();
      const int operand = parse_unary();
      leave();
      if (failed_) return -1;
      return emit(Node{Op::kNeg, 0.0, -1, operand, -1, Span{op.offset, op.text.size()}});
    }
    return parse_power();
  }

  int parse_power() {
    const int base = parse_primary();
    if (failed_) return -1;
    if (cur_.kind != Tok::kCaret) return base;
    const Token op = cur_;
    if (!enter(op)) return -1;
    advance();
    const int exponent = parse_unary();
    leave();
    if (failed_) return -1;
    return emit(Node{Op::kPow, 0.0, -1, base, exponent, Span{op.offset, op.text.size()}});
  }

  int parse_primary() {
    if (failed_) return -1;
    const Token tok = cur_;
    const Span span{tok.offset, tok.text.size()};
    switch (tok.kind) {
      case Tok::kNumber: {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
        if (ec != std::errc() || ptr != tok.text.data() + tok.text.size() || !std::isfinite(v)) {
          fail(RejectCode::kInvalidNumber, "invalid numeric literal '" + std::string(tok.text) + "'",
               tok);
          return -1;
        }
        advance();
        return emit(Node{Op::kConst, v, -1, -1, -1, span});
      }
      case Tok::kIdent:
        return parse_identifier(tok);
      case Tok::kLParen: {
        if (!enter(tok)) return -1;
        advance();
        if (cur_.kind == Tok::kRParen) {
          fail(RejectCode::kEmptyArgument, "empty parentheses", cur_);
          return -1;
        }
        const int inner = parse_expr();
        leave();
        if (failed_) return -1;
        if (cur_.kind != Tok::kRParen) {
          if (cur_.kind == Tok::kEnd) {
            fail(RejectCode::kUnbalancedParentheses, "missing ')' for '(' at offset " +
                                                          std::to_string(tok.offset), tok);
          } else {
            fail(RejectCode::kUnexpectedToken,
                 "expected ')' but found '" + std::string(cur_.text) + "'", cur_);
          }
          return -1;
        }
        advance();
        return inner;
      }
      case Tok::kRParen:
        fail(depth_ == 0 ? RejectCode::kUnbalancedParentheses : RejectCode::kEmptyArgument,
             depth_ == 0 ? "unmatched ')'" : "missing operand before ')'", tok);
        return -1;
      case Tok::kEnd:
        fail(RejectCode::kUnexpectedEnd, "expression ends where an operand is expected", tok);
        return -1;
      case Tok::kComma:
        fail(RejectCode::kUnexpectedToken, "unexpected ','", tok);
        return -1;
      default:
        fail(RejectCode::kUnexpectedToken,
             "unexpected '" + std::string(tok.text) + "' where an operand is expected", tok);
        return -1;
    }
  }

  int parse_identifier(const Token& tok) {
    const std::string_view name = tok.text;
    const Span span{tok.offset, tok.text.size()};
    advance();
    if (failed_) return -1;
    if (cur_.kind == Tok::kLParen) {
      const auto fn = lookup_function(name);
      if (!fn) {
        fail(RejectCode::kDisallowedFunction,
             "function '" + std::string(name) +
                 "' is not allowed (permitted: sin, cos, exp, log, erf, tanh, sinc, theta)",
             tok);
        return -1;
      }
      const Token open = cur_;
      if (!enter(open)) return -1;
      advance();
      if (cur_.kind == Tok::kRParen) {
        fail(RejectCode::kEmptyArgument, "function '" + std::string(name) + "' has no argument",
             cur_);
        return -1;
      }
      if (cur_.kind == Tok::kComma) {
        fail(RejectCode::kEmptyArgument, "empty argument to '" + std::string(name) + "'", cur_);
        return -1;
      }
      const int arg = parse_expr();
      leave();
      if (failed_) return -1;
      if (cur_.kind == Tok::kComma) {
        fail(RejectCode::kWrongArity, "function '" + std::string(name) + "' takes one argument",
             cur_);
        return -1;
      }
      if (cur_.kind != Tok::kRParen) {
        if (cur_.kind == Tok::kEnd) {
          fail(RejectCode::kUnbalancedParentheses,
               "missing ')' for call to '" + std::string(name) + "'", open);
        } else {
          fail(RejectCode::kUnexpectedToken,
               "expected ')' but found '" + std::string(cur_.text) + "'", cur_);
        }
        return -1;
      }
      advance();
      return emit(Node{*fn, 0.0, -1, arg, -1, span});
    }
    if (name == "t") return emit(Node{Op::kTime, 0.0, -1, -1, -1, span});
    if (name == "T") return emit(Node{Op::kTotalTime, 0.0, -1, -1, -1, span});
    if (name == "pi" || name == "\xCF\x80") {
      return emit(Node{Op::kConst, std::numbers::pi, -1, -1, -1, span});
    }
    if (lookup_function(name)) {
      fail(RejectCode::kDisallowedConstruct,
           "function '" + std::string(name) + "' used without an argument list", tok);
      return -1;
    }
    if (!is_alpha(name.front())) {
      fail(RejectCode::kUnknownIdentifier, "unknown identifier '" + std::string(name) + "'", tok);
      return -1;
    }
    int index = expr_.coefficient_index(name);
    if (index < 0) {
      expr_.coefficients_.emplace_back(name);
      index = static_cast<int>(expr_.coefficients_.size()) - 1;
    }
    return emit(Node{Op::kCoeff, 0.0, index, -1, -1, span});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token cur_;
  int depth_ = 0;
  bool failed_ = false;
  std::optional<Rejection> error_;
  Expression expr_;
};

Result<Expression, Rejection> parse(std::string_view source) {
  if (source.size() > kMaxSourceBytes) {
    return Rejection{RejectCode::kSourceTooLong,
                     "source is " + std::to_string(source.size()) + " bytes, limit is " +
                         std::to_string(kMaxSourceBytes),
                     Span{0, source.size()},
                     {}};
  }
  if (source.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return Rejection{RejectCode::kEmptySource, "expression is empty", Span{0, source.size()}, {}};
  }
  return Parser(source).run();
}

int Expression::coefficient_index(std::string_view name) const {
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Result<double, EvalFault> Expression::evaluate(double t, double total_time,
                                               std::span<const double> values) const {
  if (nodes_.empty()) return EvalFault{-1, "empty expression"};
  if (values.size() != coefficients_.size()) {
    return EvalFault{-1, "expected " + std::to_string(coefficients_.size()) +
                             " coefficient values, got " + std::to_string(values.size())};
  }
  std::vector<double> v(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    const int idx = static_cast<int>(i);
    const double a = n.lhs >= 0 ? v[static_cast<std::size_t>(n.lhs)] : 0.0;
    const double b = n.rhs >= 0 ? v[static_cast<std::size_t>(n.rhs)] : 0.0;
    double r = 0.0;
    switch (n.op) {
      case Op::kConst: r = n.value; break;
      case Op::kTime: r = t; break;
      case Op::kTotalTime: r = total_time; break;
      case Op::kCoeff: r = values[static_cast<std::size_t>(n.coeff)]; break;
      case Op::kNeg: r = -a; break;
      case Op::kAdd: r = a + b; break;
      case Op::kSub: r = a - b; break;
      case Op::kMul: r = a * b; break;
      case Op::kDiv:
        if (b == 0.0) return EvalFault{idx, "division by zero"};
        r = a / b;
        break;
      case Op::kPow:
        if (a == 0.0 && b < 0.0) return EvalFault{idx, "zero raised to a negative power"};
        if (a < 0.0) {
          const double rounded = std::round(b);
          if (std::abs(b - rounded) > 1e-12) {
            return EvalFault{idx, "negative base with non-integer exponent"};
          }
          r = std::pow(a, rounded);
        } else {
          r = std::pow(a, b);
        }
        break;
      case Op::kSin: r = std::sin(a); break;
      case Op::kCos: r = std::cos(a); break;
      case Op::kExp: r = std::exp(a); break;
      case Op::kLog:
        if (!(a > 0.0)) return EvalFault{idx, "log of a non-positive value"};
        r = std::log(a);
        break;
      case Op::kErf: r = std::erf(a); break;
      case Op::kTanh: r = std::tanh(a); break;
      case Op::kSinc: r = a == 0.0 ? 1.0 : std::sin(a) / a; break;
      case Op::kTheta: r = a >= 0.0 ? 1.0 : 0.0; break;
    }
    if (!std::isfinite(r)) return EvalFault{idx, "non-finite intermediate value"};
    v[i] = r;
  }
  return v.back();
}

Result<double, EvalFault> Expression::evaluate(double t, double total_time,
                                               const std::map<std::string, double>& params) const {
  std::vector<double> values(coefficients_.size());
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const auto it = params.find(coefficients_[i]);
    if (it == params.end()) return EvalFault{-1, "coefficient '" + coefficients_[i] + "' is unbound"};
    values[i] = it->second;
  }
  return evaluate(t, total_time, values);
}

namespace {

struct Rendered {
  std::string text;
  int prec = kPrecAtom;
};

std::string wrap_if(const Rendered& r, bool parens) {
  return parens ? "(" + r.text + ")" : r.text;
}

std::string render_nodes(const std::vector<Node>& nodes, const std::vector<std::string>& names,
                         std::span<const double> values) {
  const bool substitute = !values.empty();
  std::vector<Rendered> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    Rendered r;
    switch (n.op) {
      case Op::kConst: r.text = format_exact(n.value); break;
      case Op::kTime: r.text = "t"; break;
      case Op::kTotalTime: r.text = "T"; break;
      case Op::kCoeff: {
        if (substitute) {
          const double v = values[static_cast<std::size_t>(n.coeff)];
          r.text = format_g6(v);
          if (std::signbit(v)) r.prec = kPrecNeg;
        } else {
          r.text = names[static_cast<std::size_t>(n.coeff)];
        }
        break;
      }
      case Op::kNeg: {
        const Rendered& a = out[static_cast<std::size_t>(n.lhs)];
        r.text = "-" + wrap_if(a, a.prec < kPrecNeg);
        r.prec = kPrecNeg;
        break;
      }
      case Op::kAdd:
      case Op::kSub:
      case Op::kMul:
      case Op::kDiv: {
        const int p = precedence(n.op);
        const Rendered& a = out[static_cast<std::size_t>(n.lhs)];
        const Rendered& b = out[static_cast<std::size_t>(n.rhs)];
        // A negative substituted literal on the right reads better bracketed.
        const bool b_neg_literal = b.prec == kPrecNeg;
        const bool spaced = p == kPrecAdd;
        r.text = wrap_if(a, a.prec < p) + (spaced ? " " : "") + binary_symbol(n.op) +
                 (spaced ? " " : "") + wrap_if(b, b.prec <= p || b_neg_literal);
        r.prec = p;
        break;
      }
      case Op::kPow: {
        const Rendered& a = out[static_cast<std::size_t>(n.lhs)];
        const Rendered& b = out[static_cast<std::size_t>(n.rhs)];
        r.text = wrap_if(a, a.prec <= kPrecPow) + "^" + wrap_if(b, b.prec < kPrecPow);
        r.prec = kPrecPow;
        break;
      }
      default: {
        const Rendered& a = out[static_cast<std::size_t>(n.lhs)];
        r.text = std::string(function_name(n.op)) + "(" + a.text + ")";
        break;
      }
    }
    out[i] = std::move(r);
  }
  return out.empty() ? std::string() : out.back().text;
}

}  // namespace

std::string Expression::render() const { return render_nodes(nodes_, coefficients_, {}); }

std::string Expression::render(std::span<const double> values) const {
  if (values.size() != coefficients_.size()) {
    throw std::invalid_argument("Expression::render: coefficient count mismatch");
  }
  if (values.empty()) return render();
  return render_nodes(nodes_, coefficients_, values);
}

bool Expression::structurally_equal(const Expression& other) const {
  if (nodes_.size() != other.nodes_.size()) return false;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& a = nodes_[i];
    const Node& b = other.nodes_[i];
    if (a.op != b.op || a.lhs != b.lhs || a.rhs != b.rhs) return false;
    if (a.op == Op::kConst && a.value != b.value) return false;
    if (a.op == Op::kCoeff &&
        coefficients_[static_cast<std::size_t>(a.coeff)] !=
            other.coefficients_[static_cast<std::size_t>(b.coeff)]) {
      return false;
    }
  }
  return true;
}

std::vector<int> Expression::additive_terms() const {
  std::vector<int> terms;
  if (nodes_.empty()) return terms;
  std::vector<int> stack{root()};
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.op == Op::kAdd || n.op == Op::kSub) {
      stack.push_back(n.rhs);
      stack.push_back(n.lhs);
    } else {
      terms.push_back(i);
    }
  }
  return terms;
}

bool Expression::references_coefficient(int node) const {
  std::vector<int> stack{node};
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (i < 0) continue;
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.op == Op::kCoeff) return true;
    stack.push_back(n.lhs);
    stack.push_back(n.rhs);
  }
  return false;
}

}  // namespace qctrl::symbolic
