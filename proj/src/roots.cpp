#include "crnrob/roots.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace crnrob {

UPoly::UPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

UPoly UPoly::from_poly(const Poly& p, int var) {
  std::vector<Rational> coeffs;
  for (const auto& [e, coef] : p.terms()) {
    for (int v = 0; v < p.nvars(); ++v) {
      if (v != var && e[v] != 0)
        throw std::invalid_argument("from_poly: polynomial is not univariate in the requested variable");
    }
    int k = e[var];
    if (static_cast<int>(coeffs.size()) <= k) coeffs.resize(k + 1, Rational(0));
    coeffs[k] = coef;
  }
  return UPoly(std::move(coeffs));
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double UPoly::eval_double(double x) const {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

UPoly UPoly::derivative() const {
  if (c.size() <= 1) return UPoly();
  std::vector<Rational> d(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * Rational(static_cast<long>(k));
  return UPoly(std::move(d));
}

std::string UPoly::to_string(const std::string& name) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t k = 0; k < c.size(); ++k) {  // ascending powers: "1 - x" style
    if (c[k] == 0) continue;
    Rational mag = abs(c[k]);
    if (first) {
      if (c[k] < 0) out << "-";
      first = false;
    } else {
      out << (c[k] < 0 ? " - " : " + ");
    }
    if (mag != 1 || k == 0) {
      out << crnrob::to_string(mag);
      if (k > 0) out << "*";
    }
    if (k > 0) {
      out << name;
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> r(std::max(a.c.size(), b.c.size()), Rational(0));
  for (size_t k = 0; k < a.c.size(); ++k) r[k] = a.c[k];
  for (size_t k = 0; k < b.c.size(); ++k) r[k] -= b.c[k];
  return UPoly(std::move(r));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> r(a.c.size() + b.c.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return UPoly(std::move(r));
}

UPoly upoly_rem(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("upoly_rem: division by zero polynomial");
  UPoly r = a;
  int db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    Rational q = r.c.back() / b.c.back();
    int shift = r.degree() - db;
    for (int k = 0; k <= db; ++k) r.c[k + shift] -= q * b.c[k];
    r.trim();
  }
  return r;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = upoly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) {
    Rational lead = a.c.back();
    for (auto& ck : a.c) ck /= lead;
  }
  return a;
}

double IsolatedRoot::approx() const {
  if (exact) return to_double(value);
  return (to_double(lo) + to_double(hi)) / 2.0;
}

std::string IsolatedRoot::to_string() const {
  if (exact) return crnrob::to_string(value);
  std::ostringstream out;
  out << "(" << crnrob::to_string(lo) << ", " << crnrob::to_string(hi) << ")";
  return out.str();
}

namespace {

std::vector<UPoly> sturm_chain(const UPoly& q) {
  std::vector<UPoly> chain;
  chain.push_back(q);
  chain.push_back(q.derivative());
  while (!chain.back().is_zero() && chain.back().degree() >= 0) {
    const UPoly& s0 = chain[chain.size() - 2];
    const UPoly& s1 = chain.back();
    if (s1.is_zero()) break;
    UPoly r = upoly_rem(s0, s1);
    if (r.is_zero()) break;
    for (auto& ck : r.c) ck = -ck;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_changes_at(const std::vector<UPoly>& chain, const Rational& x) {
  int changes = 0;
  int prev = 0;
  for (const auto& s : chain) {
    int sg = sign(s.eval(x));
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++changes;
    prev = sg;
  }
  return changes;
}

/// Upper bound on the absolute value of all real roots (Cauchy bound).
Rational cauchy_bound(const UPoly& q) {
  Rational m = 0;
  Rational lead = abs(q.c.back());
  for (size_t k = 0; k + 1 < q.c.size(); ++k) {
    Rational a = abs(q.c[k]) / lead;
    if (a > m) m = a;
  }
  return m + 1;
}

}  // namespace

int sturm_count(const UPoly& q, const Rational& a, const Rational& b) {
  UPoly g = upoly_gcd(q, q.derivative());
  UPoly sq = q;
  if (g.degree() > 0) {
    // squarefree part via exact division q / gcd
    // synthetic division: q = g * h
    UPoly h;
    {
      UPoly r = q;
      std::vector<Rational> hh(q.degree() - g.degree() + 1, Rational(0));
      while (!r.is_zero() && r.degree() >= g.degree()) {
        Rational qq = r.c.back() / g.c.back();
        int shift = r.degree() - g.degree();
        hh[shift] = qq;
        for (int k = 0; k <= g.degree(); ++k) r.c[k + shift] -= qq * g.c[k];
        r.trim();
      }
      h = UPoly(std::move(hh));
    }
    sq = h;
  }
  auto chain = sturm_chain(sq);
  int n = sign_changes_at(chain, a) - sign_changes_at(chain, b);
  // Sturm counts roots in (a, b]; make the interval open by excluding b.
  if (sq.eval(b) == 0) n -= 1;
  return n;
}

int sturm_count_above(const UPoly& q, const Rational& a) {
  Rational bound = cauchy_bound(q);
  if (bound <= a) return 0;
  return sturm_count(q, a, bound + 1);
}

Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("simplest_rational_in: empty interval");
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_rational_in(-hi, -lo);
  // 0 < lo <= hi: continued-fraction style descent
  Integer fl = lo.get_num() / lo.get_den();  // floor for positive lo
  if (Rational(fl) >= lo) return Rational(fl);
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // both in (fl, fl+1): recurse on reciprocal of fractional parts
  Rational rlo = lo - Rational(fl);
  Rational rhi = hi - Rational(fl);
  Rational inner = simplest_rational_in(1 / rhi, 1 / rlo);
  return Rational(fl) + 1 / inner;
}

RootReport analyze_roots(const UPoly& q_in, const Rational& width) {
  if (q_in.is_zero()) throw std::invalid_argument("analyze_roots: zero polynomial");
  RootReport report;
  UPoly q = q_in;

  // factor out x^k exactly
  size_t zero_lead = 0;
  while (zero_lead < q.c.size() && q.c[zero_lead] == 0) ++zero_lead;
  if (zero_lead > 0) {
    report.has_zero_root = true;
    IsolatedRoot zr;
    zr.exact = true;
    zr.value = 0;
    zr.lo = zr.hi = 0;
    report.nonneg_roots.push_back(zr);
    q.c.erase(q.c.begin(), q.c.begin() + static_cast<long>(zero_lead));
  }
  if (q.degree() < 1) return report;
  if (q.eval(Rational(0)) == 0) throw std::logic_error("analyze_roots: unexpected zero root");

  // squarefree part
  UPoly g = upoly_gcd(q, q.derivative());
  if (g.degree() > 0) {
    UPoly r = q;
    std::vector<Rational> hh(q.degree() - g.degree() + 1, Rational(0));
    while (!r.is_zero() && r.degree() >= g.degree()) {
      Rational qq = r.c.back() / g.c.back();
      int shift = r.degree() - g.degree();
      hh[shift] = qq;
      for (int k = 0; k <= g.degree(); ++k) r.c[k + shift] -= qq * g.c[k];
      r.trim();
    }
    q = UPoly(std::move(hh));
  }

  auto chain = sturm_chain(q);
  auto count = [&](const Rational& a, const Rational& b) {
    int n = sign_changes_at(chain, a) - sign_changes_at(chain, b);
    if (q.eval(b) == 0) n -= 1;  // open at b
    return n;
  };

  Rational bound = cauchy_bound(q) + 1;
  int total = count(Rational(0), bound);
  if (total == 0) return report;

  // bisect (0, bound) into intervals holding exactly one root each
  struct Seg {
    Rational a, b;
    int n;
  };
  std::vector<Seg> work{{Rational(0), bound, total}};
  std::vector<IsolatedRoot> positive;
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    if (s.n == 0) continue;
    Rational mid = (s.a + s.b) / 2;
    if (q.eval(mid) == 0) {
      IsolatedRoot r;
      r.exact = true;
      r.value = mid;
      r.lo = r.hi = mid;
      positive.push_back(r);
      int left = count(s.a, mid);
      int right = s.n - 1 - left;
      if (left > 0) work.push_back({s.a, mid, left});
      if (right > 0) work.push_back({mid, s.b, right});
      continue;
    }
    if (s.n == 1) {
      // refine, attempting exact rational recovery along the way
      Rational a = s.a, b = s.b;
      int guard = 0;
      while (b - a > width) {
        Rational m = (a + b) / 2;
        Rational vm = q.eval(m);
        if (vm == 0) {
          a = b = m;
          break;
        }
        if (sign(vm) == sign(q.eval(a)) || q.eval(a) == 0) {
          // q(a)==0 only possible when a == 0 excluded above
          a = m;
        } else {
          b = m;
        }
        if (++guard % 8 == 0) {
          Rational cand = simplest_rational_in(a, b);
          if (q.eval(cand) == 0) {
            a = b = cand;
            break;
          }
        }
        if (guard > 4096) break;
      }
      IsolatedRoot r;
      if (a == b) {
        r.exact = true;
        r.value = a;
        r.lo = r.hi = a;
      } else {
        Rational cand = simplest_rational_in(a, b);
        if (q.eval(cand) == 0) {
          r.exact = true;
          r.value = cand;
          r.lo = r.hi = cand;
        } else {
          r.exact = false;
          r.lo = a;
          r.hi = b;
        }
      }
      positive.push_back(r);
      continue;
    }
    int left = count(s.a, mid);
    int right = s.n - left;
    if (left > 0) work.push_back({s.a, mid, left});
    if (right > 0) work.push_back({mid, s.b, right});
  }

  std::sort(positive.begin(), positive.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) {
    Rational xv = x.exact ? x.value : (x.lo + x.hi) / 2;
    Rational yv = y.exact ? y.value : (y.lo + y.hi) / 2;
    return xv < yv;
  });
  for (auto& r : positive) report.nonneg_roots.push_back(std::move(r));
  report.has_positive_root = !positive.empty();
  return report;
}

}  // namespace crnrob
