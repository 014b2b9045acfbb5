#ifndef ORBITSCALE_EUCLID_HPP
#define ORBITSCALE_EUCLID_HPP

#include <vector>

#include "orbitscale/exact.hpp"
#include "orbitscale/matrix.hpp"

namespace orbitscale {

// Non-negative integer matrix A(a, sigma): column 0 is the vector a, column
// j >= 1 is the prefix sum e_0 + ... + e_{sigma[j]}.  Square instances are
// unimodular.  All indices 0-based: sigma[0] == d-1 always.
struct AdmissibleMatrix {
  int d = 0;        // rows
  int d_prime = 0;  // columns
  std::vector<mpz_class> a;
  std::vector<int> sigma;
  MatZ entries;
};

// a must be non-increasing and strictly positive with a.back() == 1; sigma
// injective into [0, d) with sigma[0] == d-1.  Throws InvalidShape.
AdmissibleMatrix admissible_matrix(const std::vector<mpz_class>& a, const std::vector<int>& sigma);

// One step of the Euclidean division scheme on a strictly positive,
// non-increasing vector: x = A(a, sigma) * x_prime exactly, x_prime
// non-increasing with head x[d-1] and strictly positive entries.
struct AdmissibleStep {
  int d = 0;
  int d_prime = 0;
  std::vector<GroupElement> x;
  std::vector<GroupElement> x_prime;
  std::vector<mpz_class> b;  // division quotients (b[d-1] = 1)
  std::vector<mpz_class> a;  // suffix sums of b
  std::vector<int> sigma;
  AdmissibleMatrix A;
};

AdmissibleStep euclid_step(const std::vector<GroupElement>& x);

// Iterates euclid_step n times.  Every step must preserve the dimension
// (RankDropped otherwise, which signals rationally dependent coordinates).
std::vector<AdmissibleStep> iterate_algorithm(const std::vector<GroupElement>& x0, int n);

// Exact product A * v over group elements.
std::vector<GroupElement> apply_matrix(const MatZ& m, const std::vector<GroupElement>& v);

}  // namespace orbitscale

#endif
