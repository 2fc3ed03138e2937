#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "thoma/error.hpp"
#include "thoma/poly_core/polynomial.hpp"

namespace thoma {

/// Parsed expression tree.
struct ExprAST {
  enum class Kind { number, generator, param, add, sub, mul, neg, pow };
  Kind kind = Kind::number;
  mpq_class number;
  Gen gen{};
  std::optional<ShiftLevel> level;  // for qs generators
  Param param = Param::theta;
  int exponent = 1;
  std::size_t offset = 0;
  std::vector<std::unique_ptr<ExprAST>> kids;
};

using ExprPtr = std::unique_ptr<ExprAST>;

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    skip_ws();
    if (at_end()) fail("empty expression", pos_);
    ExprPtr e = expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return e;
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, at, line, col);
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static ExprPtr node(ExprAST::Kind k, std::size_t at) {
    auto e = std::make_unique<ExprAST>();
    e->kind = k;
    e->offset = at;
    return e;
  }
  static ExprPtr binary(ExprAST::Kind k, ExprPtr l, ExprPtr r, std::size_t at) {
    auto e = node(k, at);
    e->kids.push_back(std::move(l));
    e->kids.push_back(std::move(r));
    return e;
  }

  std::string digits() {
    std::string d;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) d += src_[pos_++];
    return d;
  }
  int natural(const char* what) {
    skip_ws();
    const std::size_t at = pos_;
    const std::string d = digits();
    if (d.empty()) fail(std::string("expected ") + what, at);
    if (d.size() > 9) fail("number too large", at);
    return std::stoi(d);
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('+'))
        e = binary(ExprAST::Kind::add, std::move(e), term(), at);
      else if (accept('-'))
        e = binary(ExprAST::Kind::sub, std::move(e), term(), at);
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (!accept('*')) return e;
      e = binary(ExprAST::Kind::mul, std::move(e), factor(), at);
    }
  }

  // factor := '-' factor | atom ('^' ['-'] nat)?
  ExprPtr factor() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept('-')) {
      auto e = node(ExprAST::Kind::neg, at);
      e->kids.push_back(factor());
      return e;
    }
    ExprPtr base = atom();
    skip_ws();
    const std::size_t cat = pos_;
    if (!accept('^')) return base;
    const bool negative = accept('-');
    const int n = natural("exponent");
    auto e = node(ExprAST::Kind::pow, cat);
    e->exponent = negative ? -n : n;
    e->kids.push_back(std::move(base));
    return e;
  }

  ExprPtr atom() {
    skip_ws();
    const std::size_t at = pos_;
    if (at_end()) fail("unexpected end of input", at);
    if (accept('(')) {
      ExprPtr e = expr();
      if (!accept(')')) fail("expected ')'", pos_);
      return e;
    }
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (peek() == '/') {
        ++pos_;
        const std::string den = digits();
        if (den.empty()) fail("expected denominator", pos_);
        if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator", at);
        num += "/" + den;
      }
      auto e = node(ExprAST::Kind::number, at);
      e->number = mpq_class(num);
      e->number.canonicalize();
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'", at);
    std::string name;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) name += src_[pos_++];
    const std::size_t dat = pos_;
    const std::string idx = digits();
    auto index = [&](const char* gen) {
      if (idx.empty()) fail(std::string("generator ") + gen + " needs an index", dat);
      if (idx.size() > 9) fail("index too large", dat);
      return std::stoi(idx);
    };
    auto param = [&](Param p) {
      auto e = node(ExprAST::Kind::param, at);
      e->param = p;
      return e;
    };
    if (name == "q") {
      const int k = index("q");
      if (k == 0) {
        auto e = node(ExprAST::Kind::number, at);
        e->number = 1;
        return e;
      }
      auto e = node(ExprAST::Kind::generator, at);
      e->gen = Gen::q(k);
      return e;
    }
    if (name == "qs") {
      const int k = index("qs");
      skip_ws();
      if (!accept('@')) fail("generator qs needs a level '@N,M'", pos_);
      const int N = natural("level N");
      if (!accept(',')) fail("expected ',' in level", pos_);
      const int M = natural("level M");
      if (k == 0) {
        auto e = node(ExprAST::Kind::number, at);
        e->number = 1;
        return e;
      }
      auto e = node(ExprAST::Kind::generator, at);
      e->gen = Gen::qs(k);
      e->level = ShiftLevel{N, M};
      return e;
    }
    if (name == "a" || name == "b") {
      const int i = index(name.c_str());
      if (i == 0) fail("coordinate index must be positive", dat);
      auto e = node(ExprAST::Kind::generator, at);
      e->gen = Gen::x(name == "a" ? i : -i);
      return e;
    }
    if (name == "s" && (idx == "1" || idx == "2")) return param(idx == "1" ? Param::s1 : Param::s2);
    if (idx.empty()) {
      if (name == "theta") return param(Param::theta);
      if (name == "pa") return param(Param::a);
      if (name == "ptau") return param(Param::tau);
    }
    fail("unknown identifier '" + name + idx + "'", at);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

inline void collect_levels(const ExprAST& e, std::optional<ShiftLevel>& level, const ExprParser& ps) {
  if (e.kind == ExprAST::Kind::generator && e.level) {
    if (level && *level != *e.level)
      ps.fail("level mismatch: " + level_string(*level) + " vs " + level_string(*e.level), e.offset);
    level = e.level;
  }
  for (const auto& k : e.kids) collect_levels(*k, level, ps);
}

inline RawPoly lower(const ExprAST& e, const RawFamily& fam, const ExprParser& ps) {
  using K = ExprAST::Kind;
  switch (e.kind) {
    case K::number: return RawPoly::constant(fam, Coeff(e.number));
    case K::param: return RawPoly::constant(fam, Coeff::param(e.param));
    case K::generator: return RawPoly::generator(fam, e.gen);
    case K::add: return lower(*e.kids[0], fam, ps) + lower(*e.kids[1], fam, ps);
    case K::sub: return lower(*e.kids[0], fam, ps) - lower(*e.kids[1], fam, ps);
    case K::mul: return lower(*e.kids[0], fam, ps) * lower(*e.kids[1], fam, ps);
    case K::neg: return -lower(*e.kids[0], fam, ps);
    case K::pow: {
      const RawPoly base = lower(*e.kids[0], fam, ps);
      if (e.exponent >= 0) return base.pow(static_cast<unsigned>(e.exponent));
      const auto& t = base.terms();
      if (t.size() != 1 || !t.begin()->first.is_unit())
        ps.fail("negative exponent needs an invertible base", e.offset);
      try {
        return RawPoly::constant(fam, t.begin()->second.inverse().pow(static_cast<unsigned>(-e.exponent)));
      } catch (const Error&) {
        ps.fail("negative exponent needs an invertible base", e.offset);
      }
    }
  }
  return RawPoly(fam);
}

}  // namespace detail

/// Parse an expression into its syntax tree.
inline ExprPtr parse_expr(std::string_view src) { return detail::ExprParser(src).parse(); }

/// Parse and lower to a raw polynomial (generic family, at most one shift level).
inline RawPoly parse_raw(std::string_view src) {
  detail::ExprParser ps(src);
  ExprPtr e = ps.parse();
  std::optional<ShiftLevel> level;
  detail::collect_levels(*e, level, ps);
  return detail::lower(*e, RawFamily{level}, ps);
}

using AnyPoly = std::variant<MomentPoly, ExtPoly, NatPoly>;

/// Choose the family from the generators that occur.
inline AnyPoly classify(const RawPoly& p) {
  bool has_q = false, has_qs = false, has_x = false;
  int n = 0, m = 0;
  for (Gen g : p.variables()) {
    has_q |= g.kind == GenKind::q;
    has_qs |= g.kind == GenKind::qs;
    if (g.kind == GenKind::x) {
      has_x = true;
      if (g.index > 0) n = std::max(n, g.index);
      else m = std::max(m, -g.index);
    }
  }
  if (has_q && (has_qs || has_x))
    throw Error(ErrorCode::unknown_generator, "moments q_k cannot be mixed with qs or coordinates");
  if (has_qs) return p.as(ExtFamily{*p.family().level});
  if (has_x) return p.as(NatFamily{{n, m}});
  return p.as(MomentFamily{});
}

inline AnyPoly parse_poly(std::string_view src) { return classify(parse_raw(src)); }

inline RawPoly to_raw(const AnyPoly& p) {
  return std::visit(
      [](const auto& q) {
        RawFamily fam;
        if constexpr (std::is_same_v<std::decay_t<decltype(q)>, ExtPoly>) fam.level = q.family().level;
        return q.as(fam);
      },
      p);
}

}  // namespace thoma
