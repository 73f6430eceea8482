#include "itroots/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace itroots {

Expr Expr::constant(Rat v) {
  Expr e;
  e.op_ = Op::Const;
  e.value_ = std::move(v);
  return e;
}

Expr Expr::coord(int i) {
  Expr e;
  e.op_ = Op::Coord;
  e.coord_ = i;
  return e;
}

Expr Expr::add(Expr a, Expr b) {
  Expr e;
  e.op_ = Op::Add;
  e.kids_ = {std::move(a), std::move(b)};
  return e;
}
Expr Expr::sub(Expr a, Expr b) {
  Expr e;
  e.op_ = Op::Sub;
  e.kids_ = {std::move(a), std::move(b)};
  return e;
}
Expr Expr::mul(Expr a, Expr b) {
  Expr e;
  e.op_ = Op::Mul;
  e.kids_ = {std::move(a), std::move(b)};
  return e;
}
Expr Expr::min(Expr a, Expr b) {
  Expr e;
  e.op_ = Op::Min;
  e.kids_ = {std::move(a), std::move(b)};
  return e;
}
Expr Expr::max(Expr a, Expr b) {
  Expr e;
  e.op_ = Op::Max;
  e.kids_ = {std::move(a), std::move(b)};
  return e;
}
Expr Expr::neg(Expr a) {
  Expr e;
  e.op_ = Op::Neg;
  e.kids_ = {std::move(a)};
  return e;
}

Rat Expr::evaluate(const Point& x) const {
  switch (op_) {
    case Op::Const:
      return value_;
    case Op::Coord:
      return x.coords.at(coord_);
    case Op::Add:
      return kids_[0].evaluate(x) + kids_[1].evaluate(x);
    case Op::Sub:
      return kids_[0].evaluate(x) - kids_[1].evaluate(x);
    case Op::Mul:
      return kids_[0].evaluate(x) * kids_[1].evaluate(x);
    case Op::Min:
      return rat_min(kids_[0].evaluate(x), kids_[1].evaluate(x));
    case Op::Max:
      return rat_max(kids_[0].evaluate(x), kids_[1].evaluate(x));
    case Op::Neg:
      return -kids_[0].evaluate(x);
  }
  throw std::logic_error("Expr::evaluate: bad op");
}

std::pair<Rat, Rat> Expr::interval_unit_cube() const {
  switch (op_) {
    case Op::Const:
      return {value_, value_};
    case Op::Coord:
      return {Rat(0), Rat(1)};
    case Op::Add: {
      auto [alo, ahi] = kids_[0].interval_unit_cube();
      auto [blo, bhi] = kids_[1].interval_unit_cube();
      return {alo + blo, ahi + bhi};
    }
    case Op::Sub: {
      auto [alo, ahi] = kids_[0].interval_unit_cube();
      auto [blo, bhi] = kids_[1].interval_unit_cube();
      return {alo - bhi, ahi - blo};
    }
    case Op::Mul: {
      auto [alo, ahi] = kids_[0].interval_unit_cube();
      auto [blo, bhi] = kids_[1].interval_unit_cube();
      Rat c1 = alo * blo, c2 = alo * bhi, c3 = ahi * blo, c4 = ahi * bhi;
      return {rat_min(rat_min(c1, c2), rat_min(c3, c4)),
              rat_max(rat_max(c1, c2), rat_max(c3, c4))};
    }
    case Op::Min: {
      auto [alo, ahi] = kids_[0].interval_unit_cube();
      auto [blo, bhi] = kids_[1].interval_unit_cube();
      return {rat_min(alo, blo), rat_min(ahi, bhi)};
    }
    case Op::Max: {
      auto [alo, ahi] = kids_[0].interval_unit_cube();
      auto [blo, bhi] = kids_[1].interval_unit_cube();
      return {rat_max(alo, blo), rat_max(ahi, bhi)};
    }
    case Op::Neg: {
      auto [alo, ahi] = kids_[0].interval_unit_cube();
      return {-ahi, -alo};
    }
  }
  throw std::logic_error("Expr::interval_unit_cube: bad op");
}

Rat Expr::lipschitz_unit_cube() const {
  switch (op_) {
    case Op::Const:
      return Rat(0);
    case Op::Coord:
      return Rat(1);
    case Op::Add:
    case Op::Sub:
      return kids_[0].lipschitz_unit_cube() + kids_[1].lipschitz_unit_cube();
    case Op::Mul: {
      auto [alo, ahi] = kids_[0].interval_unit_cube();
      auto [blo, bhi] = kids_[1].interval_unit_cube();
      Rat sup_a = rat_max(rat_abs(alo), rat_abs(ahi));
      Rat sup_b = rat_max(rat_abs(blo), rat_abs(bhi));
      return kids_[0].lipschitz_unit_cube() * sup_b + kids_[1].lipschitz_unit_cube() * sup_a;
    }
    case Op::Min:
    case Op::Max:
      return rat_max(kids_[0].lipschitz_unit_cube(), kids_[1].lipschitz_unit_cube());
    case Op::Neg:
      return kids_[0].lipschitz_unit_cube();
  }
  throw std::logic_error("Expr::lipschitz_unit_cube: bad op");
}

std::string Expr::to_string() const {
  switch (op_) {
    case Op::Const:
      return rat_to_string(value_);
    case Op::Coord:
      return "x" + std::to_string(coord_ + 1);
    case Op::Add:
      return "(" + kids_[0].to_string() + " + " + kids_[1].to_string() + ")";
    case Op::Sub:
      return "(" + kids_[0].to_string() + " - " + kids_[1].to_string() + ")";
    case Op::Mul:
      return "(" + kids_[0].to_string() + " * " + kids_[1].to_string() + ")";
    case Op::Min:
      return "min(" + kids_[0].to_string() + ", " + kids_[1].to_string() + ")";
    case Op::Max:
      return "max(" + kids_[0].to_string() + ", " + kids_[1].to_string() + ")";
    case Op::Neg:
      return "(-" + kids_[0].to_string() + ")";
  }
  return "?";
}

namespace {

// Recursive-descent parser for the component grammar.
class Parser {
 public:
  Parser(const std::string& src, int m) : src_(src), m_(m) {}

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        e = Expr::add(std::move(e), parse_term());
      } else if (peek() == '-') {
        ++pos_;
        e = Expr::sub(std::move(e), parse_term());
      } else {
        return e;
      }
    }
  }

  void expect_end() {
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
  }

 private:
  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        e = Expr::mul(std::move(e), parse_factor());
      } else {
        return e;
      }
    }
  }

  Expr parse_factor() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (c == '-') {
      ++pos_;
      return Expr::neg(parse_factor());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name = parse_name();
      if (name == "min" || name == "max") {
        skip_ws();
        if (peek() != '(') fail("expected '(' after " + name);
        ++pos_;
        Expr a = parse_expr();
        skip_ws();
        if (peek() != ',') fail("expected ',' in " + name);
        ++pos_;
        Expr b = parse_expr();
        skip_ws();
        if (peek() != ')') fail("expected ')' closing " + name);
        ++pos_;
        return name == "min" ? Expr::min(std::move(a), std::move(b))
                             : Expr::max(std::move(a), std::move(b));
      }
      if (name.size() >= 2 && name[0] == 'x') {
        int idx = std::stoi(name.substr(1));
        if (idx < 1 || idx > m_) fail("coordinate " + name + " out of range for m=" +
                                      std::to_string(m_));
        return Expr::coord(idx - 1);
      }
      fail("unknown symbol '" + name + "'");
    }
    fail("unexpected character");
    return Expr::constant(Rat(0));  // unreachable
  }

  Expr parse_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::string num = src_.substr(start, pos_ - start);
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      std::size_t dstart = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (dstart == pos_) fail("expected denominator");
      num += "/" + src_.substr(dstart, pos_ - dstart);
    }
    return Expr::constant(rat_from_string(num));
  }

  std::string parse_name() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])))) {
      ++pos_;
    }
    return src_.substr(start, pos_ - start);
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("expression parse error at offset " + std::to_string(pos_) +
                                ": " + msg);
  }

  const std::string& src_;
  int m_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_top_level(const std::string& src) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : src) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ',' || c == ';') && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

Point ExprMap::evaluate(const Point& x) const {
  if (x.dim() != arity) throw std::invalid_argument("ExprMap::evaluate: dimension mismatch");
  std::vector<Rat> out;
  out.reserve(comps.size());
  for (const auto& e : comps) out.push_back(e.evaluate(x));
  return Point(std::move(out));
}

Rat ExprMap::lipschitz_inf() const {
  Rat l(0);
  for (const auto& e : comps) l = rat_max(l, e.lipschitz_unit_cube());
  return l;
}

bool ExprMap::certified_self_map_of_unit_cube() const {
  if (static_cast<int>(comps.size()) != arity) return false;
  for (const auto& e : comps) {
    auto [lo, hi] = e.interval_unit_cube();
    if (lo < 0 || hi > 1) return false;
  }
  return true;
}

ExprMap ExprMap::parse(const std::string& src, int m) {
  if (src == "id") return identity(m);
  ExprMap out;
  out.arity = m;
  for (const auto& part : split_top_level(src)) {
    Parser p(part, m);
    out.comps.push_back(p.parse_expr());
    p.expect_end();
  }
  if (static_cast<int>(out.comps.size()) != m) {
    throw std::invalid_argument("ExprMap::parse: expected " + std::to_string(m) +
                                " components, got " + std::to_string(out.comps.size()));
  }
  return out;
}

ExprMap ExprMap::identity(int m) {
  ExprMap out;
  out.arity = m;
  for (int i = 0; i < m; ++i) out.comps.push_back(Expr::coord(i));
  return out;
}

std::string ExprMap::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) s += ", ";
    s += comps[i].to_string();
  }
  return s;
}

Evaluable as_evaluable(const ExprMap& m) {
  return Evaluable{m.arity, [m](const Point& x) { return m.evaluate(x); }};
}

}  // namespace itroots
