#include "crnrob/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace crnrob {

bool GrlexLess::operator()(const ExpVec& a, const ExpVec& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  if (c != 0) p.terms_[ExpVec(nvars, 0)] = c;
  return p;
}

Poly Poly::variable(int nvars, int var, int power) {
  Poly p(nvars);
  ExpVec e(nvars, 0);
  e.at(var) = power;
  p.terms_[e] = 1;
  return p;
}

Poly Poly::monomial(int nvars, const ExpVec& exps, const Rational& c) {
  Poly p(nvars);
  if (c != 0) p.terms_[exps] = c;
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == ExpVec(nvars_, 0);
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

void Poly::add_term(const ExpVec& exps, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_[exps] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(nvars_);
  ExpVec e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  Poly r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  Poly r = Poly::constant(nvars_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

int Poly::degree(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  // grlex order: the last term has maximal total degree
  const ExpVec& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

bool Poly::uses_var(int var) const {
  for (const auto& [e, c] : terms_)
    if (e[var] > 0) return true;
  return false;
}

std::vector<int> Poly::used_vars() const {
  std::vector<int> vars;
  for (int v = 0; v < nvars_; ++v)
    if (uses_var(v)) vars.push_back(v);
  return vars;
}

std::vector<Poly> Poly::coefficients_in(int var) const {
  int d = std::max(degree(var), 0);
  std::vector<Poly> coeffs(d + 1, Poly(nvars_));
  for (const auto& [e, c] : terms_) {
    ExpVec rest = e;
    int k = rest[var];
    rest[var] = 0;
    coeffs[k].add_term(rest, c);
  }
  return coeffs;
}

Poly Poly::derivative(int var) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    ExpVec d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

Poly Poly::eval_var(int var, const Rational& value) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Rational scaled = c;
    if (e[var] > 0) {
      Rational p = 1;
      for (int i = 0; i < e[var]; ++i) p *= value;
      scaled *= p;
    }
    ExpVec rest = e;
    rest[var] = 0;
    r.add_term(rest, scaled);
  }
  return r;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (int v = 0; v < nvars_; ++v) {
      for (int i = 0; i < e[v]; ++i) term *= point[v];
    }
    acc += term;
  }
  return acc;
}

double Poly::eval_double(const std::vector<double>& point) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = to_double(c);
    for (int v = 0; v < nvars_; ++v) {
      for (int i = 0; i < e[v]; ++i) term *= point[v];
    }
    acc += term;
  }
  return acc;
}

Poly Poly::substituted(int var, const Poly& num, const Poly& den) const {
  int d = degree(var);
  if (d <= 0) return *this;
  std::vector<Poly> coeffs = coefficients_in(var);
  // Horner-style with homogenization by den
  Poly acc = coeffs[d];
  for (int k = d - 1; k >= 0; --k) {
    acc = acc * num + coeffs[k] * den.pow(d - k);
  }
  return acc;
}

std::optional<Poly> Poly::divided_exactly(const Poly& d) const {
  if (d.is_zero()) return std::nullopt;
  if (is_zero()) return Poly(nvars_);
  Poly rem = *this;
  Poly quot(nvars_);
  const auto& dlead = *d.terms_.rbegin();
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms_.rbegin();
    ExpVec qe(nvars_);
    for (int i = 0; i < nvars_; ++i) {
      qe[i] = rlead.first[i] - dlead.first[i];
      if (qe[i] < 0) return std::nullopt;
    }
    Rational qc = rlead.second / dlead.second;
    Poly qterm = Poly::monomial(nvars_, qe, qc);
    quot += qterm;
    rem -= qterm * d;
  }
  return quot;
}

Rational Poly::content() const {
  Rational g = 0;
  for (const auto& [e, c] : terms_) g = rational_gcd(g, c);
  return g;
}

Poly Poly::primitive_part() const {
  if (is_zero()) return *this;
  Rational g = content();
  if (terms_.rbegin()->second < 0) g = -g;
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = c / g;
  return r;
}

ExpVec Poly::monomial_content() const {
  ExpVec m(nvars_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      m = e;
      first = false;
    } else {
      for (int i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
    }
  }
  return m;
}

Poly Poly::divided_by_monomial(const ExpVec& m) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    ExpVec d = e;
    for (int i = 0; i < nvars_; ++i) {
      d[i] -= m[i];
      if (d[i] < 0) throw std::invalid_argument("monomial does not divide polynomial");
    }
    r.terms_[d] = c;
  }
  return r;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  // print highest-degree terms first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    bool has_vars = std::any_of(e.begin(), e.end(), [](int k) { return k > 0; });
    if (mag != 1 || !has_vars) {
      out << crnrob::to_string(mag);
      if (has_vars) out << "*";
    }
    bool firstv = true;
    for (int v = 0; v < nvars_; ++v) {
      if (e[v] == 0) continue;
      if (!firstv) out << "*";
      firstv = false;
      out << names.at(v);
      if (e[v] > 1) out << "^" << e[v];
    }
  }
  return out.str();
}

namespace {

// Fraction-free determinant of a square matrix of polynomials (Bareiss).
Poly bareiss_determinant(std::vector<std::vector<Poly>> m, int nvars) {
  int n = static_cast<int>(m.size());
  if (n == 0) return Poly::constant(nvars, 1);
  Poly prev = Poly::constant(nvars, 1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i) {
        if (!m[i][k].is_zero()) {
          piv = i;
          break;
        }
      }
      if (piv < 0) return Poly(nvars);  // singular
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Poly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = num.divided_exactly(prev);
        if (!q) throw std::logic_error("bareiss: inexact division");
        m[i][j] = *q;
      }
      m[i][k] = Poly(nvars);
    }
    prev = m[k][k];
  }
  Poly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

}  // namespace

Poly resultant(const Poly& f, const Poly& g, int var) {
  int nvars = f.nvars();
  int df = f.degree(var);
  int dg = g.degree(var);
  if (df <= 0 || dg <= 0) throw std::invalid_argument("resultant: both arguments must use the variable");
  std::vector<Poly> fc = f.coefficients_in(var);
  std::vector<Poly> gc = g.coefficients_in(var);
  int n = df + dg;
  std::vector<std::vector<Poly>> syl(n, std::vector<Poly>(n, Poly(nvars)));
  for (int i = 0; i < dg; ++i)
    for (int k = 0; k <= df; ++k) syl[i][i + df - k] = fc[k];
  for (int i = 0; i < df; ++i)
    for (int k = 0; k <= dg; ++k) syl[dg + i][i + dg - k] = gc[k];
  return bareiss_determinant(std::move(syl), nvars);
}

}  // namespace crnrob
