#ifndef ORBITSCALE_HILBERT_HPP
#define ORBITSCALE_HILBERT_HPP

#include <optional>
#include <vector>

#include "orbitscale/dyadic.hpp"
#include "orbitscale/matrix.hpp"

namespace orbitscale {

// Value of the projective metric (or a projective diameter): ln of an exact
// rational ratio r >= 1, carried both exactly and as a certified enclosure.
struct ProjectiveValue {
  bool zero = false;       // r == 1, i.e. proportional arguments
  mpq_class ratio = 1;     // exact e^value
  Interval enclosure;      // of ln(ratio), 128-bit endpoints
};

// Hilbert projective metric between strictly positive rational vectors.
ProjectiveValue theta(const std::vector<mpq_class>& x, const std::vector<mpq_class>& y);

// Projective diameter D(A) of a strictly positive matrix: the maximum of
// theta over column pairs, which attains the supremum over the cone.
ProjectiveValue proj_diameter(const MatZ& a);

// ln(ratio) as a certified enclosure at the given bits.
Interval log_ratio(const mpq_class& ratio, long bits);

struct ContractionReport {
  int d = 0;                       // common dimension of the square pair
  bool product_strictly_positive = false;
  ProjectiveValue diameter;        // D(A A')
  mpq_class bound_ratio;           // d^2, so the bound is ln(d^2) = 2 ln d
  bool bound_pass = false;         // D(A A') <= 2 ln d, decided exactly on ratios
  // Birkhoff part, present when A is strictly positive:
  // D(A A') <= tanh(D(A)/4) * D(A'), decided by certified enclosures.
  std::optional<bool> birkhoff_pass;
  Interval birkhoff_lhs, birkhoff_rhs;
};

ContractionReport check_contraction(const MatZ& a, const MatZ& a2);

// Birkhoff inequality alone for a strictly positive left factor.
bool birkhoff_pass(const MatZ& a, const MatZ& a2, Interval* lhs_out = nullptr,
                   Interval* rhs_out = nullptr);

}  // namespace orbitscale

#endif
