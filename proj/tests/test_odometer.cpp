#include <doctest.h>

#include <set>

#include "orbitscale/errors.hpp"
#include "orbitscale/odometer.hpp"

using namespace orbitscale;

namespace {

// Enumerates all admissible words on positions < depth with digit sum n.
int count_admissible_with_sum(const KneadingMap& q, int depth, std::int64_t n,
                              OdometerWord* found = nullptr) {
  CuttingTimes c = cutting_times(q, q.K());
  int hits = 0;
  for (unsigned mask = 0; mask < (1u << depth); ++mask) {
    OdometerWord w;
    w.x.assign(depth, 0);
    std::int64_t sum = 0;
    for (int k = 0; k < depth; ++k)
      if (mask & (1u << k)) {
        w.x[k] = 1;
        sum += c.s[k];
      }
    if (sum != n || !is_admissible(w, q)) continue;
    ++hits;
    if (found) *found = w;
  }
  return hits;
}

}  // namespace

TEST_CASE("kneading map validation") {
  KneadingMap q{{0, 0, 1, 2}};
  q.validate();
  CHECK(q.bound_ok() == false);  // Q(2) = 1 > 0 = k-2
  KneadingMap bad{{1}};
  CHECK_THROWS_AS(bad.validate(), InvalidKneadingMap);
  KneadingMap bad2{{0, 0, 2}};
  CHECK_THROWS_AS(bad2.validate(), InvalidKneadingMap);  // Q(2) = 2 > 1
}

TEST_CASE("increasing modulo intervals witnesses") {
  KneadingMap fib = fibonacci_kneading(12);
  auto w = increasing_modulo_intervals(fib);
  REQUIRE(w.has_value());
  CHECK(std::vector<int>(w->begin(), w->begin() + 6) == std::vector<int>{0, 1, 3, 5, 7, 9});

  KneadingMap zero{{0, 0, 0, 0, 0, 0}};
  CHECK(!increasing_modulo_intervals(zero).has_value());

  KneadingMap dyadic{{0, 0, 1, 2, 3}};  // Q(k) = max(k-1, 0)
  auto w2 = increasing_modulo_intervals(dyadic);
  REQUIRE(w2.has_value());
  CHECK((*w2)[2] == 2);

  // A value dropping below the previous block kills the witness.
  KneadingMap drop{{0, 0, 0, 1, 2, 0}};
  CHECK(!increasing_modulo_intervals(drop).has_value());
}

TEST_CASE("kneading_from_vertex_sets") {
  std::vector<std::vector<int>> v;
  for (int j = 1; j <= 8; ++j) v.push_back({j, j + 1});
  KneadingMap q = kneading_from_vertex_sets(v);
  CHECK(q.values == std::vector<int>{0, 0, 0, 1, 2, 3, 4, 5, 6, 7});
  // Q^{-1}(j) = V_{j+1} \ V_j on the interior of the horizon
  for (int j = 1; j + 2 <= q.K(); ++j) {
    std::vector<int> pre;
    for (int k = 0; k <= q.K(); ++k)
      if (q(k) == j) pre.push_back(k);
    CHECK(pre == std::vector<int>{j + 2});
  }
  CHECK(q.bound_ok());

  CHECK_THROWS_AS(kneading_from_vertex_sets({{2, 3}}), MalformedSequence);
  CHECK_THROWS_AS(kneading_from_vertex_sets({{1, 3}}), MalformedSequence);
}

TEST_CASE("cutting times recursions") {
  KneadingMap zero{{0, 0, 0, 0, 0, 0, 0}};
  auto c0 = cutting_times(zero, 6);
  for (int k = 0; k <= 6; ++k) CHECK(c0.s[k] == k + 1);

  auto cf = cutting_times(fibonacci_kneading(6), 6);
  CHECK(cf.s == std::vector<std::int64_t>{1, 2, 3, 5, 8, 13, 21});

  KneadingMap dyadic{{0, 0, 1, 2, 3, 4}};
  auto cd = cutting_times(dyadic, 5);
  CHECK(cd.s == std::vector<std::int64_t>{1, 2, 4, 8, 16, 32});
}

TEST_CASE("expansion examples and brute-force uniqueness") {
  KneadingMap fib = fibonacci_kneading(12);
  CHECK(expansion(0, fib, 8).str() == "00000000");
  CHECK(expansion(1, fib, 8).str() == "10000000");
  CHECK(expansion(4, fib, 8).str() == "10100000");
  for (std::int64_t n = 0; n <= 50; ++n) {
    OdometerWord found;
    CHECK(count_admissible_with_sum(fib, 10, n, &found) == 1);
    CHECK(found.x == expansion(n, fib, 10).x);
  }
}

TEST_CASE("expansion depth errors") {
  KneadingMap fib = fibonacci_kneading(6);
  CHECK_THROWS_AS(expansion(100, fib, 20), DepthExceeded);  // beyond S_K = 21
  CHECK_THROWS_AS(expansion(20, fib, 3), DepthExceeded);    // needs position >= 3
}

TEST_CASE("successor examples") {
  KneadingMap fib = fibonacci_kneading(12);
  OdometerWord zero = expansion(0, fib, 8);
  auto one = odometer_successor(zero, fib);
  REQUIRE(one.has_value());
  CHECK(one->str() == "10000000");
  auto four = expansion(4, fib, 8);
  auto five = odometer_successor(four, fib);
  REQUIRE(five.has_value());
  CHECK(five->str() == "00010000");  // 5 = S_3

  // Maximal admissible truncation: the carry leaves the window.
  OdometerWord maxw = expansion(cutting_times(fib, 6).s[6] - 1, fib, 6);
  maxw.finite_support = false;
  CHECK(!odometer_successor(maxw, fib).has_value());
}

TEST_CASE("successor on truncated words decides through the old prefix") {
  KneadingMap fib = fibonacci_kneading(12);
  OdometerWord w;
  w.x = {0, 0, 0, 0, 0, 1};
  w.finite_support = false;
  auto nx = odometer_successor(w, fib);
  REQUIRE(nx.has_value());
  CHECK(nx->str() == "100001");
}

TEST_CASE("successor property: agrees with expansion along the orbit") {
  KneadingMap fib = fibonacci_kneading(16);
  OdometerWord w = expansion(0, fib, 17);
  for (std::int64_t n = 0; n < 600; ++n) {
    auto nx = odometer_successor(w, fib);
    REQUIRE(nx.has_value());
    CHECK(nx->x == expansion(n + 1, fib, 17).x);
    CHECK(is_admissible(*nx, fib));
    w = *nx;
  }
}

TEST_CASE("expansion injective below the horizon") {
  KneadingMap fib = fibonacci_kneading(14);
  std::set<std::string> seen;
  std::int64_t top = cutting_times(fib, 14).s[14];
  for (std::int64_t n = 0; n < std::min<std::int64_t>(top, 400); ++n)
    CHECK(seen.insert(expansion(n, fib, 15).str()).second);
}

TEST_CASE("word stats") {
  KneadingMap fib = fibonacci_kneading(8);
  OdometerWord zero = expansion(0, fib, 6);
  auto st = word_stats(zero, fib, 3);
  CHECK(st.sigma_partial == 0);
  CHECK(!st.first_nonzero.has_value());

  OdometerWord four = expansion(4, fib, 6);
  auto st4 = word_stats(four, fib, 2);
  CHECK(st4.sigma_partial == 4);
  CHECK(st4.first_nonzero == 0);

  OdometerWord w;
  w.x = {0, 1, 0};
  auto stw = word_stats(w, fib, 1);
  CHECK(stw.sigma_partial == 2);
  CHECK(stw.first_nonzero == 1);
}

TEST_CASE("kneading_from_odometer") {
  auto dy = kneading_from_odometer({2, 2, 2, 2});
  CHECK(dy.values == std::vector<int>{0, 0, 1, 2, 3});
  CHECK(cutting_times(dy, 4).s == std::vector<std::int64_t>{1, 2, 4, 8, 16});

  auto m32 = kneading_from_odometer({3, 2});
  CHECK(m32.values == std::vector<int>{0, 0, 0, 2});
  CHECK(cutting_times(m32, 3).s == std::vector<std::int64_t>{1, 2, 3, 6});

  CHECK_THROWS_AS(kneading_from_odometer({1, 2}), InvalidMultiplier);
  CHECK_THROWS_AS(kneading_from_odometer({}), InvalidMultiplier);

  // Non-decreasing values and multiplier-product scales for a mixed list.
  auto mx = kneading_from_odometer({3, 4, 2, 5});
  for (int k = 1; k <= mx.K(); ++k) CHECK(mx(k) >= mx(k - 1));
  auto cs = cutting_times(mx, mx.K());
  std::int64_t t = 0, prod = 1;
  for (std::int64_t m : {3, 4, 2, 5}) {
    t += m - 1;
    prod *= m;
    CHECK(cs.s[t] == prod);
  }
}

TEST_CASE("mixed-radix words decompose into independent blocks") {
  auto q = kneading_from_odometer({3, 3, 2});
  std::vector<std::int64_t> t{0, 2, 4, 5};
  for (std::int64_t n = 0; n < 18; ++n) {
    OdometerWord w = expansion(n, q, q.K() + 1);
    for (size_t b = 0; b + 1 < t.size(); ++b) {
      int ones = 0;
      for (std::int64_t k = t[b]; k < t[b + 1]; ++k) ones += w.x[static_cast<size_t>(k)];
      CHECK(ones <= 1);
    }
    CHECK(is_admissible(w, q));
  }
}
