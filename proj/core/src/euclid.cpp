#include "orbitscale/euclid.hpp"

#include <algorithm>
#include <numeric>

#include "orbitscale/errors.hpp"

namespace orbitscale {

AdmissibleMatrix admissible_matrix(const std::vector<mpz_class>& a, const std::vector<int>& sigma) {
  const int d = static_cast<int>(a.size());
  const int dp = static_cast<int>(sigma.size());
  if (d < 2 || dp < 1 || dp > d) throw InvalidShape("admissible matrix needs 2 <= d, 1 <= d' <= d");
  if (a.back() != 1) throw InvalidShape("a must end with 1");
  for (int j = 0; j < d; ++j) {
    if (a[j] <= 0) throw InvalidShape("a must be strictly positive");
    if (j + 1 < d && a[j] < a[j + 1]) throw InvalidShape("a must be non-increasing");
  }
  if (sigma[0] != d - 1) throw InvalidShape("sigma[0] must map to the last coordinate");
  std::vector<bool> seen(d, false);
  for (int v : sigma) {
    if (v < 0 || v >= d || seen[v]) throw InvalidShape("sigma must be injective into [0, d)");
    seen[v] = true;
  }

  AdmissibleMatrix m;
  m.d = d;
  m.d_prime = dp;
  m.a = a;
  m.sigma = sigma;
  m.entries = MatZ(d, dp);
  for (int i = 0; i < d; ++i) m.entries(i, 0) = a[i];
  for (int j = 1; j < dp; ++j)
    for (int i = 0; i <= sigma[j]; ++i) m.entries(i, j) = 1;
  if (d == dp && !unimodular(m.entries)) throw Error("square admissible matrix not unimodular");
  return m;
}

std::vector<GroupElement> apply_matrix(const MatZ& m, const std::vector<GroupElement>& v) {
  if (m.cols() != static_cast<int>(v.size())) throw DimensionMismatch("apply_matrix shape");
  if (v.empty()) throw InvalidInput("empty vector");
  std::vector<GroupElement> out;
  out.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    GroupElement acc = GroupElement::zero(v[0].basis());
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      acc = acc + v[j].scaled(mpq_class(m(i, j)));
    }
    out.push_back(std::move(acc));
  }
  return out;
}

AdmissibleStep euclid_step(const std::vector<GroupElement>& x) {
  const int d = static_cast<int>(x.size());
  if (d < 2) throw InvalidShape("euclid_step needs dimension >= 2");
  for (int j = 0; j < d; ++j) {
    if (sign_of(x[j]) != 1) throw NonPositiveInput("euclid_step needs strictly positive input");
    if (j + 1 < d && sign_of(x[j] - x[j + 1]) < 0)
      throw NotNonIncreasing("euclid_step needs non-increasing input");
  }

  AdmissibleStep s;
  s.d = d;
  s.x = x;
  std::vector<GroupElement> y;
  y.reserve(d);
  s.b.assign(d, 0);
  for (int j = 0; j < d - 1; ++j) {
    auto [q, r] = floor_ratio(x[j] - x[j + 1], x[d - 1]);
    s.b[j] = q;
    y.push_back(std::move(r));
  }
  s.b[d - 1] = 1;
  y.push_back(x[d - 1]);

  s.a.assign(d, 0);
  mpz_class suffix = 0;
  for (int j = d - 1; j >= 0; --j) {
    suffix += s.b[j];
    s.a[j] = suffix;
  }

  std::vector<int> pos;
  for (int j = 0; j < d; ++j)
    if (!y[j].is_zero()) pos.push_back(j);
  s.d_prime = static_cast<int>(pos.size());

  // Order the positive remainders descending; equal values (possible only
  // with rationally dependent coordinates) break ties by original index.
  std::sort(pos.begin(), pos.end(), [&](int i, int j) {
    GroupElement diff = y[i] - y[j];
    if (diff.is_zero()) return i < j;
    return sign_of(diff) > 0;
  });
  s.sigma = pos;
  for (int j : pos) s.x_prime.push_back(y[j]);

  s.A = admissible_matrix(s.a, s.sigma);

  // x = A * x_prime must hold coefficientwise.
  std::vector<GroupElement> back = apply_matrix(s.A.entries, s.x_prime);
  for (int i = 0; i < d; ++i)
    if (!(back[i] == x[i])) throw Error("euclid_step reconstruction identity failed");
  return s;
}

std::vector<AdmissibleStep> iterate_algorithm(const std::vector<GroupElement>& x0, int n) {
  std::vector<AdmissibleStep> steps;
  steps.reserve(n);
  std::vector<GroupElement> cur = x0;
  const int d = static_cast<int>(x0.size());
  for (int i = 0; i < n; ++i) {
    AdmissibleStep s = euclid_step(cur);
    if (s.d_prime < d)
      throw RankDropped("dimension dropped to " + std::to_string(s.d_prime) + " at step " +
                        std::to_string(i + 1) + " (rationally dependent input)");
    cur = s.x_prime;
    steps.push_back(std::move(s));
  }
  return steps;
}

}  // namespace orbitscale
