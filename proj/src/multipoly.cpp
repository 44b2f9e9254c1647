#include "tensorpoly/multipoly.hpp"

#include <sstream>

#include "tensorpoly/errors.hpp"

namespace tensorpoly {

Monomial Monomial::var(const VarId& name, int exponent) {
  Monomial m;
  m.set(name, exponent);
  return m;
}

void Monomial::set(const VarId& name, int exponent) {
  if (exponent < 0) throw InputError("negative exponent for variable " + name);
  if (exponent == 0)
    exps_.erase(name);
  else
    exps_[name] = exponent;
}

int Monomial::exponent(const VarId& name) const {
  auto it = exps_.find(name);
  return it == exps_.end() ? 0 : it->second;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [name, e] : exps_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out = *this;
  for (const auto& [name, e] : other.exps_) out.exps_[name] += e;
  return out;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  auto ia = a.exponents().begin(), ea = a.exponents().end();
  auto ib = b.exponents().begin(), eb = b.exponents().end();
  while (ia != ea || ib != eb) {
    // Next variable name in the merged ascending walk.
    bool take_a = ib == eb || (ia != ea && ia->first < ib->first);
    bool take_b = ia == ea || (ib != eb && ib->first < ia->first);
    int xa = 0, xb = 0;
    if (take_a) {
      xa = ia->second;
      ++ia;
    } else if (take_b) {
      xb = ib->second;
      ++ib;
    } else {
      xa = ia->second;
      xb = ib->second;
      ++ia;
      ++ib;
    }
    if (xa != xb) return xa < xb;
  }
  return false;
}

MultiPoly::MultiPoly(long constant) {
  if (constant != 0) terms_[Monomial{}] = constant;
}

MultiPoly::MultiPoly(const Coeff& constant) {
  if (constant != 0) terms_[Monomial{}] = constant;
}

MultiPoly MultiPoly::variable(const VarId& name) {
  MultiPoly p;
  p.terms_[Monomial::var(name)] = 1;
  return p;
}

MultiPoly MultiPoly::monomial(const Monomial& m, Coeff c) {
  MultiPoly p;
  if (c != 0) p.terms_[m] = std::move(c);
  return p;
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void MultiPoly::add_term(const Monomial& m, const Coeff& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::add_shifted(const MultiPoly& base, const Monomial& m) {
  for (const auto& [bm, bc] : base.terms_) add_term(bm * m, bc);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
  MultiPoly out = *this;
  out += other;
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const {
  MultiPoly out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, -c);
  return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
  MultiPoly out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    base = base * base;
    exponent >>= 1u;
  }
  return result;
}

MultiPoly MultiPoly::substitute(const std::map<VarId, MultiPoly>& assignments) const {
  if (assignments.empty()) return *this;
  MultiPoly out;
  for (const auto& [m, c] : terms_) {
    MultiPoly term(c);
    Monomial passthrough;
    for (const auto& [name, e] : m.exponents()) {
      auto it = assignments.find(name);
      if (it == assignments.end())
        passthrough.set(name, e);
      else
        term = term * it->second.pow(static_cast<unsigned>(e));
    }
    out.add_shifted(term, passthrough);
  }
  return out;
}

std::vector<VarId> MultiPoly::variables() const {
  std::map<VarId, int> seen;
  for (const auto& [m, c] : terms_)
    for (const auto& [name, e] : m.exponents()) seen[name] = 1;
  std::vector<VarId> out;
  out.reserve(seen.size());
  for (const auto& [name, unused] : seen) out.push_back(name);
  return out;
}

namespace {

std::string render_monomial(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, e] : m.exponents()) {
    if (!first) os << "*";
    first = false;
    os << name;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

}  // namespace

std::string MultiPoly::canonical_text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Monomial& m = it->first;
    const Coeff& c = it->second;
    Coeff abs = c < 0 ? Coeff(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (m.is_constant()) {
      os << abs.get_str();
    } else {
      if (abs != 1) os << abs.get_str() << "*";
      os << render_monomial(m);
    }
  }
  return os.str();
}

}  // namespace tensorpoly
