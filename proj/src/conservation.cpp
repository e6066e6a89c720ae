#include "crnrob/conservation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace crnrob {

namespace {

using Mat = std::vector<std::vector<Rational>>;

/// In-place reduced row echelon form; returns pivot column per row.
std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int i = row; i < rows; ++i) {
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[row], m[piv]);
    Rational lead = m[row][col];
    for (int j = col; j < cols; ++j) m[row][j] /= lead;
    for (int i = 0; i < rows; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (int j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

ConservationLaw make_law(std::vector<Rational> coeffs) {
  ConservationLaw law;
  law.coeffs = std::move(coeffs);
  bool any = false, all_nonneg = true;
  for (size_t i = 0; i < law.coeffs.size(); ++i) {
    if (law.coeffs[i] != 0) {
      law.support.push_back(static_cast<int>(i));
      any = true;
      if (law.coeffs[i] < 0) all_nonneg = false;
    }
  }
  law.positive = any && all_nonneg;
  return law;
}

/// Scale so the smallest-magnitude nonzero coefficient becomes 1 (positive
/// rays) keeping determinism for golden output.
std::vector<Rational> normalize_ray(std::vector<Rational> v) {
  Rational smallest = 0;
  for (const auto& c : v) {
    if (c == 0) continue;
    Rational a = abs(c);
    if (smallest == 0 || a < smallest) smallest = a;
  }
  if (smallest != 0) {
    for (auto& c : v) c /= smallest;
  }
  return v;
}

}  // namespace

std::string ConservationLaw::to_string(const ReactionNetwork& net) const {
  std::ostringstream out;
  bool first = true;
  for (int i : support) {
    if (!first) out << (coeffs[i] > 0 ? " + " : " - ");
    if (first && coeffs[i] < 0) out << "-";
    first = false;
    Rational a = abs(coeffs[i]);
    if (a != 1) out << crnrob::to_string(a) << "*";
    out << net.species_name(i);
  }
  if (first) out << "0";
  return out.str();
}

std::vector<ConservationLaw> kernel_basis(const StoichiometricMatrix& S) {
  const int d = S.rows;
  const int r = S.cols;
  // kernel of S^T (an r x d matrix)
  Mat m(r, std::vector<Rational>(d, Rational(0)));
  for (int i = 0; i < r; ++i)
    for (int s = 0; s < d; ++s) m[i][s] = Rational(S.columns[i][s]);
  std::vector<int> pivots = rref(m);

  std::vector<bool> is_pivot(d, false);
  for (int p : pivots) is_pivot[p] = true;

  std::vector<ConservationLaw> basis;
  for (int freecol = 0; freecol < d; ++freecol) {
    if (is_pivot[freecol]) continue;
    std::vector<Rational> v(d, Rational(0));
    v[freecol] = 1;
    for (size_t prow = 0; prow < pivots.size(); ++prow) v[pivots[prow]] = -m[prow][freecol];
    basis.push_back(make_law(std::move(v)));
  }
  return basis;
}

std::vector<ConservationLaw> positive_laws(const std::vector<ConservationLaw>& basis) {
  const int k = static_cast<int>(basis.size());
  if (k == 0) return {};
  const int d = static_cast<int>(basis[0].coeffs.size());

  auto combine = [&](const std::vector<Rational>& y) {
    std::vector<Rational> c(d, Rational(0));
    for (int b = 0; b < k; ++b)
      for (int j = 0; j < d; ++j) c[j] += y[b] * basis[b].coeffs[j];
    return c;
  };
  auto feasible = [&](const std::vector<Rational>& c) {
    for (const auto& v : c)
      if (v < 0) return false;
    return true;
  };

  std::vector<std::vector<Rational>> rays;
  auto push_ray = [&](const std::vector<Rational>& y) {
    std::vector<Rational> c = combine(y);
    bool nonzero = std::any_of(c.begin(), c.end(), [](const Rational& v) { return v != 0; });
    if (!nonzero) return;
    if (!feasible(c)) {
      for (auto& v : c) v = -v;
      if (!feasible(c)) return;
    }
    c = normalize_ray(std::move(c));
    if (std::find(rays.begin(), rays.end(), c) == rays.end()) rays.push_back(std::move(c));
  };

  if (k == 1) {
    push_ray({Rational(1)});
  } else {
    // Each extreme ray of {y : y.n_j >= 0} lies on k-1 independent tight
    // constraints; the constraint normals n_j are the columns of the basis
    // matrix. Enumerate (k-1)-subsets of columns -- desk-scale d and k keep
    // this small.
    std::vector<int> idx(k - 1);
    std::vector<std::vector<Rational>> normals(d, std::vector<Rational>(k));
    for (int j = 0; j < d; ++j)
      for (int b = 0; b < k; ++b) normals[j][b] = basis[b].coeffs[j];

    std::vector<int> comb(k - 1);
    auto process = [&]() {
      Mat m;
      for (int j : comb) m.push_back(normals[j]);
      Mat reduced = m;
      std::vector<int> pivots = rref(reduced);
      if (static_cast<int>(pivots.size()) != k - 1) return;  // not enough independent constraints
      // one-dimensional null space of the tight constraints
      std::vector<bool> is_pivot(k, false);
      for (int p : pivots) is_pivot[p] = true;
      int freecol = -1;
      for (int c = 0; c < k; ++c)
        if (!is_pivot[c]) {
          freecol = c;
          break;
        }
      if (freecol < 0) return;
      std::vector<Rational> y(k, Rational(0));
      y[freecol] = 1;
      for (size_t prow = 0; prow < pivots.size(); ++prow) y[pivots[prow]] = -reduced[prow][freecol];
      push_ray(y);
    };
    // iterate combinations of size k-1 over d columns
    for (int i = 0; i < k - 1; ++i) comb[i] = i;
    if (k - 1 <= d) {
      while (true) {
        process();
        int i = k - 2;
        while (i >= 0 && comb[i] == d - (k - 1) + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < k - 1; ++j) comb[j] = comb[j - 1] + 1;
      }
    }
  }

  std::sort(rays.begin(), rays.end(), [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] > b[i];  // earlier-species support first
    }
    return false;
  });

  std::vector<ConservationLaw> out;
  for (auto& r : rays) out.push_back(make_law(std::move(r)));
  return out;
}

std::vector<ConservationLaw> canonical_law_basis(const StoichiometricMatrix& S) {
  std::vector<ConservationLaw> basis = kernel_basis(S);
  std::vector<ConservationLaw> rays = positive_laws(basis);

  std::vector<ConservationLaw> out;
  std::map<int, std::vector<Rational>> echelon;  // leading position -> reduced row
  auto try_add = [&](const ConservationLaw& law) {
    std::vector<Rational> v = law.coeffs;
    while (true) {
      int lead = -1;
      for (size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) {
          lead = static_cast<int>(j);
          break;
        }
      if (lead < 0) return false;  // dependent
      auto it = echelon.find(lead);
      if (it == echelon.end()) {
        Rational scale = v[lead];
        for (auto& c : v) c /= scale;
        echelon.emplace(lead, std::move(v));
        out.push_back(law);
        return true;
      }
      Rational f = v[lead];
      for (size_t j = 0; j < v.size(); ++j) v[j] -= f * it->second[j];
    }
  };
  for (const auto& ray : rays) try_add(ray);
  for (const auto& law : basis) try_add(law);
  return out;
}

std::vector<Rational> conserved_totals(const std::vector<ConservationLaw>& laws,
                                       const std::vector<Rational>& x0) {
  std::vector<Rational> totals;
  totals.reserve(laws.size());
  for (const auto& law : laws) {
    Rational t = 0;
    for (size_t i = 0; i < x0.size(); ++i) t += law.coeffs[i] * x0[i];
    totals.push_back(t);
  }
  return totals;
}

Eigen::VectorXd conserved_totals(const std::vector<ConservationLaw>& laws, const Eigen::VectorXd& x0) {
  Eigen::VectorXd totals(static_cast<long>(laws.size()));
  for (size_t k = 0; k < laws.size(); ++k) {
    double t = 0;
    for (long i = 0; i < x0.size(); ++i) t += to_double(laws[k].coeffs[i]) * x0[i];
    totals[static_cast<long>(k)] = t;
  }
  return totals;
}

int exact_rank(const StoichiometricMatrix& S) {
  Mat m(S.rows, std::vector<Rational>(S.cols, Rational(0)));
  for (int i = 0; i < S.rows; ++i)
    for (int j = 0; j < S.cols; ++j) m[i][j] = Rational(S.columns[j][i]);
  return static_cast<int>(rref(m).size());
}

}  // namespace crnrob
