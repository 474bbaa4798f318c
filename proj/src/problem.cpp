#include "charpoly/problem.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "charpoly/error.hpp"

namespace charpoly {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;
  std::size_t line_start = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidInput("line " + std::to_string(line) + ", column " + std::to_string(pos - line_start + 1) + ": " + msg);
  }
  bool at_end() const { return pos >= text.size(); }
  char peek() const { return at_end() ? '\0' : text[pos]; }
  // Skips blanks and comments but not newlines.
  void skip_blanks() {
    while (!at_end()) {
      char c = text[pos];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos;
      } else if (c == '#') {
        while (!at_end() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }
  bool accept(char c) {
    skip_blanks();
    if (peek() != c) return false;
    ++pos;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_line_end() {
    skip_blanks();
    return at_end() || peek() == '\n';
  }
  void end_line() {
    if (!at_line_end()) fail("unexpected text at end of statement");
    if (!at_end()) {
      ++pos;
      ++line;
      line_start = pos;
    }
  }
  std::optional<std::string> ident() {
    skip_blanks();
    if (!std::isalpha(static_cast<unsigned char>(peek()))) return std::nullopt;
    std::size_t start = pos;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    return std::string(text.substr(start, pos - start));
  }
  std::string expect_ident(const char* what) {
    auto id = ident();
    if (!id) fail(std::string("expected ") + what);
    return *id;
  }
  std::optional<std::string> digits() {
    skip_blanks();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) return std::nullopt;
    std::size_t start = pos;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return std::string(text.substr(start, pos - start));
  }
  Rational rational() {
    skip_blanks();
    std::size_t start = pos;
    if (peek() == '-' || peek() == '+') ++pos;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
    std::string lit(text.substr(start, pos - start));
    try {
      return parse_rational(lit);
    } catch (const InvalidInput&) {
      pos = start;
      fail("expected a rational number");
    }
  }
};

class ExprParser {
 public:
  ExprParser(Cursor& cur, const FramePtr& frame) : cur_(cur), frame_(frame) {}

  Poly expr() {
    Poly acc = term();
    while (true) {
      if (cur_.accept('+'))
        acc += term();
      else if (cur_.accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

 private:
  Poly term() {
    Poly acc = unary();
    while (true) {
      if (cur_.accept('*')) {
        acc *= unary();
      } else if (cur_.accept('/')) {
        std::size_t at = cur_.pos;
        Poly d = unary();
        if (d.is_zero() || d.total_degree() > 0) {
          cur_.pos = at;
          cur_.fail("division only by nonzero constants");
        }
        try {
          acc = acc.scaled(d.terms().begin()->second.inverse());
        } catch (const DomainError&) {
          cur_.pos = at;
          cur_.fail("divisor vanishes in the field");
        }
      } else {
        return acc;
      }
    }
  }
  Poly unary() {
    if (cur_.accept('-')) return -unary();
    if (cur_.accept('+')) return unary();
    return power();
  }
  Poly power() {
    Poly base = atom();
    if (cur_.accept('^')) {
      auto d = cur_.digits();
      if (!d) cur_.fail("exponent must be a nonnegative integer literal");
      if (d->size() > 4) cur_.fail("exponent too large");
      return base.pow(std::stoi(*d));
    }
    return base;
  }
  Poly atom() {
    cur_.skip_blanks();
    std::size_t at = cur_.pos;
    if (cur_.accept('(')) {
      Poly p = expr();
      cur_.expect(')');
      return p;
    }
    if (auto d = cur_.digits()) {
      Rational q;
      q.set_str(*d, 10);
      try {
        return Poly::constant(frame_, Scalar(frame_->field, q));
      } catch (const DomainError&) {
        cur_.pos = at;
        cur_.fail("literal not representable in the field");
      }
    }
    if (auto id = cur_.ident()) {
      const auto& u = frame_->u_names;
      const auto& y = frame_->y_names;
      for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] == *id) return Poly::u(frame_, static_cast<int>(i));
      for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] == *id) return Poly::y(frame_, static_cast<int>(j));
      cur_.pos = at;
      cur_.fail("unknown identifier '" + *id + "'");
    }
    cur_.fail("expected a number, a variable or '('");
  }

  Cursor& cur_;
  const FramePtr& frame_;
};

Field parse_field(Cursor& cur) {
  auto id = cur.expect_ident("field name (Q, Fp <p> or F<p>)");
  std::string digits;
  if (id == "Q") return Field::rationals();
  if (id == "Fp") {
    auto d = cur.digits();
    if (!d) cur.fail("expected the characteristic after Fp");
    digits = *d;
  } else if (id.size() > 1 && id[0] == 'F' &&
             id.find_first_not_of("0123456789", 1) == std::string::npos) {
    digits = id.substr(1);
  } else {
    cur.fail("unknown field '" + id + "'");
  }
  if (digits.size() > 10) cur.fail("characteristic too large");
  try {
    return Field::prime(std::stoull(digits));
  } catch (const InvalidInput& e) {
    cur.fail(e.what());
  }
}

std::vector<std::string> parse_names(Cursor& cur) {
  std::vector<std::string> names;
  while (true) {
    cur.skip_blanks();
    if (cur.at_line_end() || cur.peek() == ';') break;
    cur.accept(',');
    names.push_back(cur.expect_ident("variable name"));
  }
  return names;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  Cursor cur{text};
  ProblemFile p;
  std::optional<Field> field;
  bool have_vars = false;
  std::set<std::string> gen_names;
  while (true) {
    cur.skip_blanks();
    if (cur.at_end()) break;
    if (cur.peek() == '\n') {
      cur.end_line();
      continue;
    }
    std::size_t stmt = cur.pos;
    auto kw = cur.ident();
    if (!kw) cur.fail("expected a statement keyword");
    if (*kw == "field") {
      if (field) cur.fail("duplicate field declaration");
      if (have_vars) cur.fail("field must be declared before vars");
      field = parse_field(cur);
    } else if (*kw == "vars") {
      if (have_vars) cur.fail("duplicate vars declaration");
      if (cur.expect_ident("'u'") != "u") cur.fail("expected 'u'");
      cur.expect(':');
      auto u = parse_names(cur);
      cur.expect(';');
      if (cur.expect_ident("'y'") != "y") cur.fail("expected 'y'");
      cur.expect(':');
      auto y = parse_names(cur);
      try {
        p.frame = Frame::make(u, y, field.value_or(Field::rationals()));
      } catch (const InvalidInput& e) {
        cur.pos = stmt;
        cur.fail(e.what());
      }
      have_vars = true;
    } else if (*kw == "gen") {
      if (!have_vars) cur.fail("vars must be declared before gen");
      std::size_t at = cur.pos;
      auto name = cur.expect_ident("generator name");
      bool clash = std::find(p.frame->u_names.begin(), p.frame->u_names.end(), name) != p.frame->u_names.end() ||
                   std::find(p.frame->y_names.begin(), p.frame->y_names.end(), name) != p.frame->y_names.end();
      if (!gen_names.insert(name).second || clash) {
        cur.pos = at;
        cur.skip_blanks();
        cur.fail("duplicate name '" + name + "'");
      }
      cur.expect('=');
      ExprParser ep(cur, p.frame);
      p.gen_names.push_back(name);
      p.gens.push_back(ep.expr());
    } else if (*kw == "form") {
      if (!have_vars) cur.fail("vars must be declared before form");
      if (p.form) cur.fail("duplicate form declaration");
      p.form_name = cur.expect_ident("form name");
      cur.expect('=');
      cur.expect('(');
      std::vector<Rational> coeffs;
      do coeffs.push_back(cur.rational());
      while (cur.accept(','));
      cur.expect(')');
      if (static_cast<int>(coeffs.size()) != p.frame->e()) cur.fail("form needs one coefficient per u-variable");
      p.form = std::move(coeffs);
    } else if (*kw == "pair") {
      if (p.pair_b) cur.fail("duplicate pair declaration");
      if (cur.expect_ident("'b'") != "b") cur.fail("expected 'b'");
      cur.expect('=');
      p.pair_b = cur.rational();
    } else if (*kw == "budget") {
      auto key = cur.expect_ident("budget key");
      cur.expect('=');
      auto d = cur.digits();
      if (!d || d->size() > 9) cur.fail("budget value must be a nonnegative integer");
      if (!p.budgets.emplace(key, std::stol(*d)).second) cur.fail("duplicate budget '" + key + "'");
    } else {
      cur.pos = stmt;
      cur.fail("unknown statement '" + *kw + "'");
    }
    cur.end_line();
  }
  if (p.gens.empty()) throw InvalidInput("no generators");
  return p;
}

Poly parse_poly(std::string_view text, const FramePtr& frame) {
  Cursor cur{text};
  ExprParser ep(cur, frame);
  Poly p = ep.expr();
  if (!cur.at_line_end() || !cur.at_end()) cur.fail("unexpected trailing text");
  return p;
}

std::string print_problem(const ProblemFile& p) {
  std::ostringstream out;
  const Field& k = p.field();
  out << "field " << (k.is_rational() ? "Q" : "Fp " + std::to_string(k.characteristic())) << "\n";
  out << "vars u:";
  for (const auto& n : p.frame->u_names) out << " " << n;
  out << " ; y:";
  for (const auto& n : p.frame->y_names) out << " " << n;
  out << "\n";
  for (std::size_t i = 0; i < p.gens.size(); ++i) out << "gen " << p.gen_names[i] << " = " << p.gens[i].to_string() << "\n";
  if (p.form) {
    out << "form " << p.form_name << " = (";
    for (std::size_t i = 0; i < p.form->size(); ++i) out << (i ? ", " : "") << rational_to_string((*p.form)[i]);
    out << ")\n";
  }
  if (p.pair_b) out << "pair b = " << rational_to_string(*p.pair_b) << "\n";
  for (const auto& [key, v] : p.budgets) out << "budget " << key << " = " << v << "\n";
  return out.str();
}

bool operator==(const ProblemFile& a, const ProblemFile& b) {
  return a.frame->u_names == b.frame->u_names && a.frame->y_names == b.frame->y_names && a.field() == b.field() &&
         a.gen_names == b.gen_names && a.gens == b.gens && a.form_name == b.form_name && a.form == b.form &&
         a.pair_b == b.pair_b && a.budgets == b.budgets;
}

}  // namespace charpoly
