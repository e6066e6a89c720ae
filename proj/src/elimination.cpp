#include "crnrob/elimination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <array>
#include <deque>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace crnrob {

std::vector<std::string> SymbolicSystem::var_names() const {
  std::vector<std::string> names;
  for (const auto& s : net->species()) names.push_back(s.name);
  for (int k = 0; k < nlaws; ++k) names.push_back("T" + std::to_string(k + 1));
  names.push_back("lambda");
  return names;
}

SymbolicSystem SymbolicSystem::build(const ReactionNetwork& net) {
  SymbolicSystem sys;
  sys.net = &net;
  StoichiometricMatrix S = stoichiometric_matrix(net);
  sys.laws = canonical_law_basis(S);
  sys.positive = positive_laws(kernel_basis(S));
  sys.nspecies = net.species_count();
  sys.nlaws = static_cast<int>(sys.laws.size());
  return sys;
}

std::vector<Poly> steady_state_equations(const SymbolicSystem& sys) {
  const ReactionNetwork& net = *sys.net;
  const int d = sys.nspecies;
  std::vector<Poly> eqs(d, Poly(sys.nvars()));
  for (const Reaction& r : net.reactions()) {
    ExpVec mono(sys.nvars(), 0);
    for (int s = 0; s < d; ++s) mono[sys.species_var(s)] = r.reactant.coeffs[s];
    for (int s = 0; s < d; ++s) {
      int change = r.product.coeffs[s] - r.reactant.coeffs[s];
      if (change != 0) eqs[s].add_term(mono, r.rate.value * change);
    }
  }
  return eqs;
}

std::vector<Poly> law_equations(const SymbolicSystem& sys) {
  std::vector<Poly> eqs;
  for (int k = 0; k < sys.nlaws; ++k) {
    Poly e(sys.nvars());
    for (int s = 0; s < sys.nspecies; ++s) {
      if (sys.laws[k].coeffs[s] != 0)
        e += Poly::variable(sys.nvars(), sys.species_var(s)) * sys.laws[k].coeffs[s];
    }
    e -= Poly::variable(sys.nvars(), sys.total_var(k));
    eqs.push_back(std::move(e));
  }
  return eqs;
}

RatExpr RatExpr::simplified() const {
  if (num.is_zero()) return RatExpr(Poly(num.nvars()), Poly::constant(num.nvars(), 1));
  Poly n = num, d = den;
  // shared monomial factor
  ExpVec mn = n.monomial_content(), md = d.monomial_content();
  ExpVec shared(mn.size());
  bool any = false;
  for (size_t i = 0; i < mn.size(); ++i) {
    shared[i] = std::min(mn[i], md[i]);
    any = any || shared[i] > 0;
  }
  if (any) {
    n = n.divided_by_monomial(shared);
    d = d.divided_by_monomial(shared);
  }
  // scale so the denominator is primitive with positive leading coefficient
  Rational cd = d.content();
  if (!d.is_zero() && d.terms().rbegin()->second < 0) cd = -cd;
  if (cd != 0 && cd != 1) {
    n = n * (1 / cd);
    d = d * (1 / cd);
  }
  if (auto q = n.divided_exactly(d)) return RatExpr(std::move(*q), Poly::constant(n.nvars(), 1));
  if (auto q = d.divided_exactly(n)) {
    // num/den = 1/q
    return RatExpr(Poly::constant(n.nvars(), 1), std::move(*q));
  }
  return RatExpr(std::move(n), std::move(d));
}

RatExpr RatExpr::substituted(int var, const Poly& p, const Poly& q) const {
  int dn = std::max(num.degree(var), 0);
  int dd = std::max(den.degree(var), 0);
  int m = std::max(dn, dd);
  Poly n2 = num.substituted(var, p, q);
  Poly d2 = den.substituted(var, p, q);
  if (m > dn) n2 = n2 * q.pow(m - dn);
  if (m > dd) d2 = d2 * q.pow(m - dd);
  return RatExpr(std::move(n2), std::move(d2)).simplified();
}

std::string RatExpr::to_string(const std::vector<std::string>& names) const {
  if (den.is_constant() && den.constant_value() == 1) return num.to_string(names);
  return "(" + num.to_string(names) + ") / (" + den.to_string(names) + ")";
}

namespace {

struct PoolEq {
  Poly p;
  bool from_law = false;
};

struct WorkComponent {
  std::vector<PoolEq> equations;
  std::map<int, RatExpr> solved;
  std::set<int> zeroed;
  bool boundary = false;
  int splits = 0;
  std::vector<std::string> notes;
};

/// Pins species var v to zero everywhere; false when a solved denominator
/// vanishes (degenerate branch).
bool pin_zero(WorkComponent& comp, int v) {
  comp.zeroed.insert(v);
  comp.boundary = true;
  for (auto& e : comp.equations) e.p = e.p.eval_var(v, Rational(0));
  for (auto& [s, expr] : comp.solved) {
    Poly d = expr.den.eval_var(v, Rational(0));
    if (d.is_zero()) return false;
    expr = RatExpr(expr.num.eval_var(v, Rational(0)), std::move(d)).simplified();
  }
  return true;
}

void substitute_everywhere(WorkComponent& comp, int v, const RatExpr& expr) {
  for (auto& e : comp.equations) {
    e.p = e.p.substituted(v, expr.num, expr.den).primitive_part();
  }
  for (auto& [s, se] : comp.solved) se = se.substituted(v, expr.num, expr.den);
  comp.solved[v] = expr;
}

}  // namespace

std::vector<VarietyComponent> decompose_steady_variety(const SymbolicSystem& sys,
                                                       const DecomposeOptions& opts) {
  const int d = sys.nspecies;
  WorkComponent root;
  for (auto& e : steady_state_equations(sys)) root.equations.push_back({std::move(e), false});
  if (opts.use_laws) {
    for (auto& e : law_equations(sys)) root.equations.push_back({std::move(e), true});
  }

  std::deque<WorkComponent> queue{std::move(root)};
  std::vector<VarietyComponent> out;

  while (!queue.empty() && static_cast<int>(out.size() + queue.size()) <= opts.max_components) {
    WorkComponent comp = std::move(queue.front());
    queue.pop_front();

    bool degenerate = false;
    bool progress = true;
    while (progress && !degenerate) {
      progress = false;

      // normalize: drop zeros and duplicates, split off boundary branches on
      // species monomial factors
      std::vector<PoolEq> kept;
      for (auto& e : comp.equations) {
        Poly p = e.p.primitive_part();
        if (p.is_zero()) continue;
        ExpVec mc = p.monomial_content();
        ExpVec species_mc(sys.nvars(), 0);
        bool has_species_factor = false;
        for (int s = 0; s < d; ++s) {
          if (mc[sys.species_var(s)] > 0) {
            species_mc[sys.species_var(s)] = mc[sys.species_var(s)];
            has_species_factor = true;
          }
        }
        if (has_species_factor) {
          if (comp.splits < 6) {
            for (int s = 0; s < d; ++s) {
              if (species_mc[sys.species_var(s)] == 0) continue;
              // pinning the factor variable to zero satisfies the whole
              // product, so the child keeps every other equation
              WorkComponent child = comp;
              child.equations.clear();
              for (const auto& other : comp.equations) {
                if (other.p == e.p) continue;
                child.equations.push_back(other);
              }
              child.splits = comp.splits + 1;
              if (pin_zero(child, sys.species_var(s))) queue.push_back(std::move(child));
            }
          }
          p = p.divided_by_monomial(species_mc);
          if (p.is_constant()) {
            // equation reduces to a nonzero constant once the monomial is
            // removed: this component requires one of the boundary branches
            if (!p.is_zero()) {
              degenerate = true;
              break;
            }
            continue;
          }
        }
        bool dup = false;
        for (const auto& k : kept) {
          if (k.p == p) {
            dup = true;
            break;
          }
        }
        if (!dup) kept.push_back({std::move(p), e.from_law});
        progress = progress || has_species_factor;
      }
      if (degenerate) break;
      comp.equations = std::move(kept);

      // best linear solve move; steady-state relations are preferred over
      // law equations so the recorded expressions stay free of the totals
      // wherever possible
      struct Move {
        std::array<int, 7> score;
        int eq = -1, var = -1;
      };
      std::optional<Move> best;
      for (size_t ei = 0; ei < comp.equations.size(); ++ei) {
        const Poly& e = comp.equations[ei].p;
        for (int s = 0; s < d; ++s) {
          int v = sys.species_var(s);
          if (comp.solved.count(v) || comp.zeroed.count(v)) continue;
          if (opts.keep_free && *opts.keep_free == s) continue;
          if (e.degree(v) != 1) continue;
          auto coeffs = e.coefficients_in(v);
          const Poly& a = coeffs[1];
          int cat = a.is_constant() ? 0 : (a.terms().size() == 1 ? 1 : 2);
          Move m;
          m.score = {comp.equations[ei].from_law ? 1 : 0,
                     cat,
                     static_cast<int>(a.used_vars().size()),
                     e.total_degree(),
                     static_cast<int>(e.terms().size()),
                     s,
                     static_cast<int>(ei)};
          m.eq = static_cast<int>(ei);
          m.var = v;
          if (!best || m.score < best->score) best = m;
        }
      }
      if (best) {
        Poly e = comp.equations[best->eq].p;
        comp.equations.erase(comp.equations.begin() + best->eq);
        auto coeffs = e.coefficients_in(best->var);
        RatExpr expr = RatExpr(-coeffs[0], coeffs[1]).simplified();
        substitute_everywhere(comp, best->var, expr);
        progress = true;
      }
    }
    if (degenerate) continue;

    VarietyComponent result;
    result.solved = std::move(comp.solved);
    result.zero_species.assign(comp.zeroed.begin(), comp.zeroed.end());
    result.boundary = comp.boundary;
    for (auto& e : comp.equations) result.constraints.push_back(std::move(e.p));
    result.notes = std::move(comp.notes);
    for (int s = 0; s < d; ++s) {
      int v = sys.species_var(s);
      if (!result.solved.count(v) && !comp.zeroed.count(v)) result.free_species.push_back(s);
    }
    // drop exact duplicates (branching can revisit the same locus)
    bool dup = false;
    for (const auto& prev : out) {
      if (prev.zero_species == result.zero_species && prev.constraints == result.constraints &&
          prev.free_species == result.free_species) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(result));
  }
  return out;
}

double component_residual(const SymbolicSystem& sys, const VarietyComponent& comp,
                          const Eigen::VectorXd& x, const Eigen::VectorXd& totals) {
  std::vector<double> point(sys.nvars(), 0.0);
  for (int s = 0; s < sys.nspecies; ++s) point[sys.species_var(s)] = x[s];
  for (int k = 0; k < sys.nlaws; ++k) point[sys.total_var(k)] = totals[k];
  double scale = std::max(1.0, x.lpNorm<Eigen::Infinity>());

  // every relation is checked in cleared form, |sum| / max |monomial|, so
  // ill-conditioned divisions cannot blow up an otherwise-satisfied relation
  auto eval_parts = [&](const Poly& p) {
    double maxterm = 0.0, sum = 0.0;
    for (const auto& [e, coef] : p.terms()) {
      double t = to_double(coef);
      for (int vv = 0; vv < sys.nvars(); ++vv)
        for (int i = 0; i < e[vv]; ++i) t *= point[vv];
      sum += t;
      maxterm = std::max(maxterm, std::abs(t));
    }
    return std::pair<double, double>(sum, maxterm);
  };

  double worst = 0.0;
  for (int s : comp.zero_species) worst = std::max(worst, std::abs(x[s]) / scale);
  for (const auto& [v, expr] : comp.solved) {
    auto [nsum, nmax] = eval_parts(expr.num);
    auto [dsum, dmax] = eval_parts(expr.den);
    double lhs = x[v] * dsum;
    double normal = std::max({nmax, std::abs(x[v]) * dmax, 1e-30});
    worst = std::max(worst, std::abs(lhs - nsum) / normal);
  }
  for (const auto& c : comp.constraints) {
    auto [sum, maxterm] = eval_parts(c);
    if (maxterm > 0) worst = std::max(worst, std::abs(sum) / maxterm);
  }
  return worst;
}

namespace {

/// Divides out any common polynomial factor of the x-coefficients (a factor
/// depending only on the totals). Keeps the projection minimal.
Poly strip_total_content(const Poly& p, int xvar, std::vector<std::string>* notes) {
  Poly current = p;
  bool changed = true;
  while (changed) {
    changed = false;
    auto coeffs = current.coefficients_in(xvar);
    const Poly* smallest = nullptr;
    for (const auto& c : coeffs) {
      if (c.is_zero()) continue;
      if (c.is_constant()) return current;  // gcd is a unit
      if (!smallest || c.total_degree() < smallest->total_degree()) smallest = &c;
    }
    if (!smallest) return current;
    Poly candidate = smallest->primitive_part();
    Poly reduced(current.nvars());
    bool divides_all = true;
    for (size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].is_zero()) continue;
      auto q = coeffs[k].divided_exactly(candidate);
      if (!q) {
        divides_all = false;
        break;
      }
      reduced += *q * Poly::variable(current.nvars(), xvar, static_cast<int>(k));
    }
    if (divides_all) {
      current = reduced.primitive_part();
      if (notes) notes->push_back("removed a totals-only content factor from the projection");
      changed = true;
    }
  }
  return current;
}

bool uses_only(const Poly& p, const std::set<int>& allowed) {
  for (int v : p.used_vars())
    if (!allowed.count(v)) return false;
  return true;
}

}  // namespace

std::optional<OutputElimination> eliminate_to_univariate(const SymbolicSystem& sys,
                                                         const VarietyComponent& comp, int output) {
  OutputElimination out;
  out.output = output;
  out.zero_species = comp.zero_species;
  out.boundary = comp.boundary;
  const int xvar = sys.species_var(output);

  std::set<int> allowed{xvar};
  for (int k = 0; k < sys.nlaws; ++k) allowed.insert(sys.total_var(k));

  // species pinned to zero on this component: the projection is x = 0
  if (std::find(comp.zero_species.begin(), comp.zero_species.end(), output) != comp.zero_species.end()) {
    out.projection = Poly::variable(sys.nvars(), xvar);
    out.solved = comp.solved;
    out.exprs_available = comp.free_species.empty();
    return out;
  }
  // solved as a constant (ACR-style projection)
  if (auto it = comp.solved.find(xvar); it != comp.solved.end()) {
    if (it->second.is_constant()) {
      out.projection =
          Poly::variable(sys.nvars(), xvar) - Poly::constant(sys.nvars(), it->second.constant_value());
      out.solved = comp.solved;
      out.solved.erase(xvar);
      out.exprs_available = comp.free_species.empty();
      return out;
    }
    return std::nullopt;  // callers should decompose with keep_free = output
  }

  std::vector<Poly> eqs = comp.constraints;
  std::map<int, RatExpr> solved = comp.solved;
  std::vector<int> pending;
  for (int s : comp.free_species)
    if (s != output) pending.push_back(s);

  auto substitute_all = [&](int v, const RatExpr& expr) {
    for (auto& e : eqs) e = e.substituted(v, expr.num, expr.den).primitive_part();
    for (auto& [s, se] : solved) se = se.substituted(v, expr.num, expr.den);
    solved[v] = expr;
  };

  bool exprs_ok = true;
  int guard = 0;
  while (!pending.empty() && guard++ < 32) {
    // linear move first
    int best_eq = -1, best_var = -1;
    std::array<int, 4> best_score{};
    for (size_t ei = 0; ei < eqs.size(); ++ei) {
      for (int s : pending) {
        int v = sys.species_var(s);
        if (eqs[ei].degree(v) != 1) continue;
        auto coeffs = eqs[ei].coefficients_in(v);
        int cat = coeffs[1].is_constant() ? 0 : (coeffs[1].terms().size() == 1 ? 1 : 2);
        std::array<int, 4> score{cat, eqs[ei].total_degree(), s, static_cast<int>(ei)};
        if (best_eq < 0 || score < best_score) {
          best_score = score;
          best_eq = static_cast<int>(ei);
          best_var = s;
        }
      }
    }
    if (best_eq >= 0) {
      Poly e = eqs[best_eq];
      eqs.erase(eqs.begin() + best_eq);
      auto coeffs = e.coefficients_in(sys.species_var(best_var));
      substitute_all(sys.species_var(best_var), RatExpr(-coeffs[0], coeffs[1]).simplified());
      pending.erase(std::find(pending.begin(), pending.end(), best_var));
      continue;
    }
    // resultant fallback; per-species expressions are lost on this path
    int v = -1;
    std::vector<int> using_eqs;
    for (int s : pending) {
      using_eqs.clear();
      for (size_t ei = 0; ei < eqs.size(); ++ei)
        if (eqs[ei].uses_var(sys.species_var(s))) using_eqs.push_back(static_cast<int>(ei));
      if (using_eqs.size() >= 2) {
        v = s;
        break;
      }
      if (using_eqs.size() == 1) {
        // the lone constraint can always be satisfied by choosing this
        // species; it contributes nothing to the projection
        eqs.erase(eqs.begin() + using_eqs[0]);
        pending.erase(std::find(pending.begin(), pending.end(), s));
        exprs_ok = false;
        out.notes.push_back("dropped an unconstrained free species during projection");
        v = -2;
        break;
      }
      pending.erase(std::find(pending.begin(), pending.end(), s));
      v = -2;
      break;
    }
    if (v == -2) continue;
    if (v < 0) break;
    std::sort(using_eqs.begin(), using_eqs.end(), [&](int a, int b) {
      return eqs[a].degree(sys.species_var(v)) < eqs[b].degree(sys.species_var(v));
    });
    Poly r = resultant(eqs[using_eqs[0]], eqs[using_eqs[1]], sys.species_var(v)).primitive_part();
    std::vector<Poly> next;
    for (size_t ei = 0; ei < eqs.size(); ++ei) {
      if (static_cast<int>(ei) == using_eqs[0] || static_cast<int>(ei) == using_eqs[1]) continue;
      if (eqs[ei].uses_var(sys.species_var(v))) {
        next.push_back(resultant(eqs[ei], eqs[using_eqs[0]], sys.species_var(v)).primitive_part());
      } else {
        next.push_back(eqs[ei]);
      }
    }
    if (!r.is_zero()) next.push_back(std::move(r));
    eqs = std::move(next);
    pending.erase(std::find(pending.begin(), pending.end(), v));
    exprs_ok = false;
    out.used_resultants = true;
    out.notes.push_back("eliminated " + sys.net->species_name(v) + " by resultant");
  }

  std::optional<Poly> projection;
  for (const auto& e : eqs) {
    if (e.is_zero() || !uses_only(e, allowed)) continue;
    if (!e.uses_var(xvar)) continue;
    if (!projection || e.total_degree() < projection->total_degree()) projection = e;
  }
  if (!projection) return std::nullopt;
  out.projection = strip_total_content(projection->primitive_part(), xvar, &out.notes);

  out.solved = std::move(solved);
  out.solved.erase(xvar);
  if (exprs_ok) {
    for (const auto& [v, expr] : out.solved) {
      std::set<int> ok = allowed;
      if (!uses_only(expr.num, ok) || !uses_only(expr.den, ok)) {
        exprs_ok = false;
        break;
      }
    }
  }
  out.exprs_available = exprs_ok;
  return out;
}

SpecializedElim specialize_input(const SymbolicSystem& sys, const Poly& projection, int output,
                                 int input, const std::vector<Rational>& base_totals) {
  SpecializedElim spec;
  spec.output = output;
  spec.input = input;
  spec.base_totals = base_totals;
  const int lvar = sys.lambda_var();

  Poly p = projection;
  for (int k = 0; k < sys.nlaws; ++k) {
    Rational alpha = sys.laws[k].coeffs[input];
    spec.shift.push_back(alpha);
    Poly repl = Poly::constant(sys.nvars(), base_totals[k]);
    if (alpha != 0) repl += Poly::variable(sys.nvars(), lvar) * alpha;
    p = p.substituted(sys.total_var(k), repl, Poly::constant(sys.nvars(), 1));
  }
  if (p.is_zero())
    throw std::runtime_error("projection vanished identically after substituting the shifted totals");

  spec.specialized = p;
  spec.lambda_degree = std::max(p.degree(lvar), 0);
  auto coeffs = p.coefficients_in(lvar);
  spec.leading = UPoly::from_poly(coeffs[spec.lambda_degree], sys.species_var(output));
  spec.lambda_dependent = spec.lambda_degree >= 1;
  return spec;
}

double SpecializedElim::relative_residual(double value, double lambda) const {
  double sum = 0.0, maxterm = 0.0;
  for (const auto& [e, coef] : specialized.terms()) {
    double t = to_double(coef);
    for (int v = 0; v < specialized.nvars(); ++v) {
      double base = 0.0;
      if (e[v] == 0) continue;
      // only the output variable and lambda appear
      base = (v + 1 == specialized.nvars()) ? lambda : value;
      for (int i = 0; i < e[v]; ++i) t *= base;
    }
    sum += t;
    maxterm = std::max(maxterm, std::abs(t));
  }
  if (maxterm <= 0) return 0.0;
  return std::abs(sum) / maxterm;
}

std::string Limit::to_string() const {
  switch (kind) {
    case Finite: return crnrob::to_string(value);
    case PlusInfinity: return "+inf";
    case MinusInfinity: return "-inf";
    case UnsignedInfinity: return "inf (sign unknown)";
    case Unknown: return "unknown";
  }
  return "unknown";
}

std::map<int, Limit> propagate_limits(const SymbolicSystem& sys, const VarietyComponent& comp,
                                      const std::map<int, Limit>& known, int input,
                                      const std::vector<Rational>& base_totals) {
  std::map<int, Limit> out;
  const int n = sys.nvars();

  // classification of every ring variable: finite substitution, or a signed
  // quantity diverging with lambda
  std::vector<int> inf_sign(n, 0);  // 0 = finite, +-1 = diverges with that sign
  std::vector<Rational> finite_value(n, Rational(0));
  std::vector<bool> is_unknown(n, false);

  for (int k = 0; k < sys.nlaws; ++k) {
    Rational alpha = sys.laws[k].coeffs[input];
    if (alpha != 0)
      inf_sign[sys.total_var(k)] = sign(alpha);
    else
      finite_value[sys.total_var(k)] = base_totals[k];
  }
  for (int s = 0; s < sys.nspecies; ++s) {
    int v = sys.species_var(s);
    auto it = known.find(s);
    if (it == known.end()) {
      is_unknown[v] = true;
      continue;
    }
    switch (it->second.kind) {
      case Limit::Finite:
        finite_value[v] = it->second.value;
        break;
      case Limit::PlusInfinity:
        inf_sign[v] = 1;
        break;
      case Limit::MinusInfinity:
        inf_sign[v] = -1;
        break;
      default:
        is_unknown[v] = true;
    }
  }

  struct Growth {
    int degree = 0;          // total degree in diverging variables
    int sign = 0;            // 0 when indefinite
    bool single = false;     // single diverging monomial at the top
    ExpVec top;              // that monomial (exponents on diverging vars)
    Rational coeff;          // summed coefficient on it
    bool unknown = false;
  };

  auto analyze = [&](const Poly& p) {
    Growth g;
    if (p.is_zero()) {
      g.single = true;
      g.coeff = 0;
      g.top = ExpVec(n, 0);
      return g;
    }
    std::map<ExpVec, Rational, GrlexLess> groups;  // diverging-var monomial -> coefficient
    for (const auto& [e, c] : p.terms()) {
      Rational scaled = c;
      ExpVec key(n, 0);
      bool bad = false;
      int deg = 0;
      for (int v = 0; v < n; ++v) {
        if (e[v] == 0) continue;
        if (is_unknown[v]) {
          bad = true;
          break;
        }
        if (inf_sign[v] != 0) {
          key[v] = e[v];
          deg += e[v];
          if (inf_sign[v] < 0 && (e[v] % 2) == 1) scaled = -scaled;
        } else {
          for (int i = 0; i < e[v]; ++i) scaled *= finite_value[v];
        }
      }
      if (bad) {
        g.unknown = true;
        return g;
      }
      (void)deg;
      groups[key] += scaled;
    }
    int top_degree = -1;
    for (const auto& [key, c] : groups) {
      if (c == 0) continue;
      int deg = 0;
      for (int v = 0; v < n; ++v) deg += key[v];
      top_degree = std::max(top_degree, deg);
    }
    if (top_degree < 0) {
      g.single = true;
      g.coeff = 0;
      g.top = ExpVec(n, 0);
      return g;
    }
    g.degree = top_degree;
    int common_sign = 0;
    int count = 0;
    for (const auto& [key, c] : groups) {
      if (c == 0) continue;
      int deg = 0;
      for (int v = 0; v < n; ++v) deg += key[v];
      if (deg != top_degree) continue;
      ++count;
      int s = sign(c);
      if (common_sign == 0)
        common_sign = s;
      else if (common_sign != s)
        common_sign = 2;  // mixed
      g.top = key;
      g.coeff = c;
    }
    g.single = (count == 1);
    g.sign = (common_sign == 2) ? 0 : common_sign;
    return g;
  };

  for (int s = 0; s < sys.nspecies; ++s) {
    int v = sys.species_var(s);
    if (auto it = known.find(s); it != known.end()) {
      out[s] = it->second;
      continue;
    }
    if (std::find(comp.zero_species.begin(), comp.zero_species.end(), v) != comp.zero_species.end()) {
      out[s] = Limit::finite(Rational(0));
      continue;
    }
    auto it = comp.solved.find(v);
    if (it == comp.solved.end()) {
      out[s] = Limit{};  // free but not provided
      continue;
    }
    Growth num = analyze(it->second.num);
    Growth den = analyze(it->second.den);
    Limit lim{};
    if (num.unknown || den.unknown) {
      out[s] = lim;
      continue;
    }
    bool num_zero = num.single && num.coeff == 0 && num.degree == 0;
    bool den_zero = den.single && den.coeff == 0 && den.degree == 0;
    if (num_zero) {
      out[s] = den_zero ? Limit{} : Limit::finite(Rational(0));
      continue;
    }
    if (den_zero) {
      // denominator tends to zero; when the numerator definitely does not
      // vanish the magnitude blows up, and the species value is nonnegative
      // along the curve, so it diverges upward
      bool num_definite = (num.degree == 0 && num.single && num.coeff != 0) ||
                          (num.degree > 0 && num.sign != 0);
      out[s] = num_definite ? Limit::plus_infinity() : Limit{};
      continue;
    }
    if (num.degree > den.degree) {
      // growth with an indefinite top sign may cancel; stay agnostic
      if (num.sign != 0 && den.sign != 0)
        lim.kind = (num.sign * den.sign > 0) ? Limit::PlusInfinity : Limit::MinusInfinity;
    } else if (num.degree < den.degree) {
      if (den.sign != 0) lim = Limit::finite(Rational(0));
    } else {
      if (num.single && den.single && num.top == den.top) {
        lim = Limit::finite(num.coeff / den.coeff);
      }
      // otherwise: equal growth with different monomial mixtures -> unknown
    }
    out[s] = lim;
  }
  return out;
}

namespace {

/// True when P(x, lambda) = 0 can carry a branch with x -> +infinity as
/// lambda -> +infinity: some Newton-polygon face with positive slope must
/// have a positive real root of its face polynomial.
bool divergence_possible(const Poly& specialized, int xvar, int lvar) {
  struct Pt {
    int a, b;
    Rational c;
  };
  std::vector<Pt> pts;
  for (const auto& [e, c] : specialized.terms()) pts.push_back({e[xvar], e[lvar], c});

  std::set<std::pair<int, int>> slopes;  // theta = num/den > 0
  for (const auto& p : pts) {
    for (const auto& q : pts) {
      if (p.a == q.a) continue;
      // theta from a*theta + b matching: theta = (q.b - p.b) / (p.a - q.a)
      int num = q.b - p.b, den = p.a - q.a;
      if (den < 0) {
        num = -num;
        den = -den;
      }
      if (num <= 0) continue;
      int g = std::gcd(num, den);
      slopes.insert({num / g, den / g});
    }
  }
  for (const auto& [tn, td] : slopes) {
    // value of a*theta + b scaled by td: a*tn + b*td
    long best = std::numeric_limits<long>::min();
    for (const auto& p : pts) best = std::max(best, static_cast<long>(p.a) * tn + static_cast<long>(p.b) * td);
    UPoly face;
    int count = 0;
    for (const auto& p : pts) {
      if (static_cast<long>(p.a) * tn + static_cast<long>(p.b) * td != best) continue;
      ++count;
      if (static_cast<int>(face.c.size()) <= p.a) face.c.resize(p.a + 1, Rational(0));
      face.c[p.a] += p.c;
    }
    face.trim();
    if (count < 2 || face.degree() < 1) continue;
    if (sturm_count_above(face, Rational(0)) > 0) return true;
  }
  return false;
}

/// Limit of expr(x, lambda) along a curve x(lambda) -> r, computed from the
/// lambda-leading coefficients. Unknown when a leading coefficient vanishes
/// at r (the limit then depends on the approach rate).
Limit robust_limit_at(const RatExpr& expr, int xvar, int lvar, const Rational& r) {
  auto lead = [&](const Poly& p) -> std::pair<int, Rational> {
    if (p.is_zero()) return {-1, Rational(0)};
    auto coeffs = p.coefficients_in(lvar);
    int deg = static_cast<int>(coeffs.size()) - 1;
    UPoly top = UPoly::from_poly(coeffs[deg], xvar);
    return {deg, top.eval(r)};
  };
  auto [dn, a] = lead(expr.num);
  auto [dd, b] = lead(expr.den);
  if (dn < 0) {
    // numerator identically zero
    if (dd >= 0 && b != 0) return Limit::finite(Rational(0));
    return Limit{};
  }
  if (dd < 0) return Limit{};  // malformed
  if (a != 0 && b != 0) {
    if (dn > dd) return Limit{sign(a) * sign(b) > 0 ? Limit::PlusInfinity : Limit::MinusInfinity, Rational(0)};
    if (dn < dd) return Limit::finite(Rational(0));
    return Limit::finite(a / b);
  }
  if (a != 0 && b == 0 && dn >= dd) return Limit{Limit::UnsignedInfinity, Rational(0)};
  if (a == 0 && dn == 0) {
    // numerator is lambda-free and vanishes exactly at r
    if (b != 0) return Limit::finite(Rational(0));
  }
  return Limit{};
}

/// Limit of a lambda-free expression as x -> +infinity.
Limit limit_at_x_infinity(const RatExpr& expr, int xvar) {
  auto lead = [&](const Poly& p) -> std::pair<int, Rational> {
    if (p.is_zero()) return {-1, Rational(0)};
    UPoly u = UPoly::from_poly(p, xvar);
    return {u.degree(), u.c.back()};
  };
  auto [dn, a] = lead(expr.num);
  auto [dd, b] = lead(expr.den);
  if (dn < 0) return Limit::finite(Rational(0));
  if (dd < 0) return Limit{};
  if (dn > dd) return Limit{sign(a) * sign(b) > 0 ? Limit::PlusInfinity : Limit::MinusInfinity, Rational(0)};
  if (dn < dd) return Limit::finite(Rational(0));
  return Limit::finite(a / b);
}

bool is_lambda_free(const RatExpr& e, int lvar) { return !e.num.uses_var(lvar) && !e.den.uses_var(lvar); }

}  // namespace

std::string LimitCandidate::to_string() const { return infinity ? "+inf" : root.to_string(); }

const char* to_string(CertKind kind) {
  switch (kind) {
    case CertKind::EventuallyConstant: return "EventuallyConstant";
    case CertKind::ExactLimit: return "ExactLimit";
    case CertKind::Zero: return "Zero";
    case CertKind::Infinity: return "Infinity";
    case CertKind::Ambiguous: return "Ambiguous";
    case CertKind::Unsupported: return "Unsupported";
    case CertKind::Inconsistent: return "Inconsistent";
  }
  return "Unsupported";
}

LimitCertificate certified_limit(const SymbolicSystem& sys, const OutputElimination& elim,
                                 const SpecializedElim& spec) {
  LimitCertificate cert;
  const int xvar = sys.species_var(spec.output);
  const int lvar = sys.lambda_var();
  const int i = spec.input;
  const int j = spec.output;

  cert.roots = analyze_roots(spec.leading);

  auto finite_guarantee = [&](int species) {
    for (const auto& p : sys.positive) {
      if (p.coeffs[species] > 0 && p.coeffs[i] == 0) return true;
    }
    return false;
  };
  const bool pos_support = finite_guarantee(j);

  // exact upper bound from an unshifted positive law containing the output
  std::optional<Rational> upper_bound;
  for (size_t pk = 0; pk < sys.positive.size(); ++pk) {
    const auto& p = sys.positive[pk];
    if (!(p.coeffs[j] > 0 && p.coeffs[i] == 0)) continue;
    // value of this law: express in basis coordinates via base totals
    // (solved once here by projecting onto the basis with exact elimination)
    // The basis spans the kernel, so p = sum y_k basis_k has a unique y.
    const int m = sys.nlaws;
    std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(m + 1, Rational(0)));
    // normal equations are unnecessary: basis vectors are linearly
    // independent, solve the overdetermined system by elimination on the
    // first independent columns
    // build matrix B^T y = p restricted to m independent species columns
    std::vector<int> cols;
    {
      std::vector<std::vector<Rational>> probe;
      for (int sp = 0; sp < sys.nspecies && static_cast<int>(cols.size()) < m; ++sp) {
        std::vector<Rational> col(m);
        for (int k = 0; k < m; ++k) col[k] = sys.laws[k].coeffs[sp];
        std::vector<Rational> v = col;
        for (size_t w = 0; w < probe.size(); ++w) {
          int lead = -1;
          for (int k = 0; k < m; ++k)
            if (probe[w][k] != 0) {
              lead = k;
              break;
            }
          if (lead >= 0 && v[lead] != 0) {
            Rational f = v[lead] / probe[w][lead];
            for (int k = 0; k < m; ++k) v[k] -= f * probe[w][k];
          }
        }
        bool nonzero = false;
        for (int k = 0; k < m; ++k) nonzero = nonzero || v[k] != 0;
        if (nonzero) {
          probe.push_back(v);
          cols.push_back(sp);
        }
      }
    }
    if (static_cast<int>(cols.size()) != m) continue;
    for (int r = 0; r < m; ++r) {
      for (int k = 0; k < m; ++k) aug[r][k] = sys.laws[k].coeffs[cols[r]];
      aug[r][m] = p.coeffs[cols[r]];
    }
    // gaussian elimination
    bool singular = false;
    for (int c = 0; c < m; ++c) {
      int piv = -1;
      for (int r = c; r < m; ++r)
        if (aug[r][c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) {
        singular = true;
        break;
      }
      std::swap(aug[c], aug[piv]);
      for (int r = 0; r < m; ++r) {
        if (r == c || aug[r][c] == 0) continue;
        Rational f = aug[r][c] / aug[c][c];
        for (int k = c; k <= m; ++k) aug[r][k] -= f * aug[c][k];
      }
    }
    if (singular) continue;
    Rational law_value = 0;
    for (int k = 0; k < m; ++k) law_value += (aug[k][m] / aug[k][k]) * spec.base_totals[k];
    Rational bound = law_value / p.coeffs[j];
    if (!upper_bound || bound < *upper_bound) upper_bound = bound;
  }

  // ground per-species expressions in (x, lambda) for side constraints
  std::map<int, RatExpr> side;
  if (elim.exprs_available) {
    for (const auto& [v, expr] : elim.solved) {
      Poly n = expr.num, d = expr.den;
      for (int k = 0; k < sys.nlaws; ++k) {
        Poly repl = Poly::constant(sys.nvars(), spec.base_totals[k]);
        if (spec.shift[k] != 0) repl += Poly::variable(sys.nvars(), lvar) * spec.shift[k];
        RatExpr tmp = RatExpr(n, d).substituted(sys.total_var(k), repl, Poly::constant(sys.nvars(), 1));
        n = tmp.num;
        d = tmp.den;
      }
      side[v] = RatExpr(std::move(n), std::move(d)).simplified();
    }
  }

  // admissibility of a finite exact candidate r
  auto finite_candidate_ok = [&](const Rational& r, std::string* why) {
    if (upper_bound && r > *upper_bound) {
      if (why) *why = "exceeds the conserved-total bound";
      return false;
    }
    if (!elim.exprs_available) return true;
    for (const auto& [v, expr] : side) {
      Limit lim = robust_limit_at(expr, xvar, lvar, r);
      if (lim.kind == Limit::Finite && lim.value < 0) {
        if (why) *why = sys.net->species_name(v) + " would be negative";
        return false;
      }
      if (lim.kind == Limit::MinusInfinity) {
        if (why) *why = sys.net->species_name(v) + " would diverge to -inf";
        return false;
      }
      if ((lim.kind == Limit::PlusInfinity || lim.kind == Limit::UnsignedInfinity) && finite_guarantee(v)) {
        if (why) *why = sys.net->species_name(v) + " must stay bounded";
        return false;
      }
    }
    return true;
  };

  auto infinity_candidate_ok = [&](std::string* why) {
    if (!elim.exprs_available) return true;
    for (const auto& [v, expr] : side) {
      if (!is_lambda_free(expr, lvar)) continue;
      Limit lim = limit_at_x_infinity(expr, xvar);
      if (lim.kind == Limit::Finite && lim.value < 0) {
        if (why) *why = sys.net->species_name(v) + " would be negative";
        return false;
      }
      if (lim.kind == Limit::MinusInfinity) {
        if (why) *why = sys.net->species_name(v) + " would diverge to -inf";
        return false;
      }
      if ((lim.kind == Limit::PlusInfinity || lim.kind == Limit::UnsignedInfinity) && finite_guarantee(v)) {
        if (why) *why = sys.net->species_name(v) + " must stay bounded";
        return false;
      }
    }
    return true;
  };

  // assemble candidates
  std::vector<LimitCandidate> finite;
  for (const auto& root : cert.roots.nonneg_roots) {
    LimitCandidate cand;
    cand.root = root;
    if (root.exact) {
      std::string why;
      if (!finite_candidate_ok(root.value, &why)) {
        cert.notes.push_back("root " + root.to_string() + " rejected: " + why);
        continue;
      }
    }
    finite.push_back(cand);
  }

  if (!spec.lambda_dependent) {
    // the dose-response curve is pinned by a lambda-free relation: it is
    // eventually constant at an admissible root
    if (finite.size() == 1 && !finite[0].infinity) {
      cert.kind = CertKind::EventuallyConstant;
      cert.limit = finite[0].root;
    } else if (finite.empty()) {
      cert.kind = CertKind::Inconsistent;
      cert.notes.push_back("lambda-free projection has no admissible nonnegative root");
    } else {
      cert.kind = CertKind::Ambiguous;
      cert.candidates = finite;
    }
    return cert;
  }

  bool inf_possible = false;
  if (!pos_support) {
    if (divergence_possible(spec.specialized, xvar, lvar)) {
      std::string why;
      if (infinity_candidate_ok(&why)) {
        inf_possible = true;
      } else {
        cert.notes.push_back("divergence rejected: " + why);
      }
    } else {
      cert.notes.push_back("no growth branch at infinity");
    }
  }

  if (pos_support && cert.roots.nonneg_roots.empty()) {
    cert.kind = CertKind::Inconsistent;
    cert.notes.push_back(
        "a positive conservation law forces a finite limit but the leading coefficient has no nonnegative root");
    return cert;
  }

  std::vector<LimitCandidate> candidates = finite;
  if (inf_possible) {
    LimitCandidate c;
    c.infinity = true;
    candidates.push_back(c);
  }

  if (candidates.empty()) {
    // every root was pruned; report the unpruned roots as ambiguous rather
    // than inventing a verdict
    for (const auto& root : cert.roots.nonneg_roots) {
      LimitCandidate cand;
      cand.root = root;
      cert.candidates.push_back(cand);
    }
    cert.kind = cert.candidates.empty() ? CertKind::Infinity : CertKind::Ambiguous;
    if (cert.kind == CertKind::Infinity)
      cert.notes.push_back("no nonnegative root and no finiteness guarantee");
    return cert;
  }

  if (candidates.size() == 1) {
    const LimitCandidate& c = candidates[0];
    if (c.infinity) {
      cert.kind = CertKind::Infinity;
    } else if (c.root.exact && c.root.value == 0) {
      cert.kind = CertKind::Zero;
      cert.limit = c.root;
    } else {
      cert.kind = CertKind::ExactLimit;
      cert.limit = c.root;
    }
    return cert;
  }

  cert.kind = CertKind::Ambiguous;
  cert.candidates = std::move(candidates);
  return cert;
}

}  // namespace crnrob
