#include "freeprob/error.hpp"
#include "freeprob/young.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace freeprob;
using namespace freeprob::young;

namespace {

Rational Q(long p, long q = 1) { return Rational(p, q); }

YoungDiagram Y(std::vector<int> rows) { return YoungDiagram(std::move(rows)); }

// Number of standard tableaux by removing corners recursively.
BigInt tableaux_count(const std::vector<int>& rows, std::map<std::vector<int>, BigInt>& memo) {
  if (rows.empty()) {
    return 1;
  }
  if (auto it = memo.find(rows); it != memo.end()) {
    return it->second;
  }
  BigInt total = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i + 1 == rows.size() || rows[i] > rows[i + 1]) {
      auto smaller = rows;
      if (--smaller[i] == 0) {
        smaller.pop_back();
      }
      total += tableaux_count(smaller, memo);
    }
  }
  memo[rows] = total;
  return total;
}

BigInt tableaux_count(const YoungDiagram& d) {
  std::map<std::vector<int>, BigInt> memo;
  return tableaux_count(d.rows(), memo);
}

// z_mu = prod_j j^{k_j} k_j!
BigInt centralizer(const std::vector<int>& cycles) {
  std::map<int, int> counts;
  for (int c : cycles) {
    ++counts[c];
  }
  BigInt z = 1;
  for (const auto& [len, k] : counts) {
    for (int i = 0; i < k; ++i) {
      z *= len;
    }
    z *= factorial(static_cast<unsigned>(k));
  }
  return z;
}

std::vector<std::vector<int>> classes_of(int n) {
  std::vector<std::vector<int>> out;
  for (const auto& d : diagrams_of_size(n)) {
    out.push_back(d.rows());
  }
  return out;
}

// Sum of contents (column - row) over all boxes.
long content_sum(const YoungDiagram& d) {
  long s = 0;
  for (int i = 0; i < d.row_count(); ++i) {
    for (int j = 0; j < d.rows()[static_cast<std::size_t>(i)]; ++j) {
      s += j - i;
    }
  }
  return s;
}

} // namespace

TEST_CASE("YoungDiagram construction") {
  CHECK(YoungDiagram::parse("3,2,2,1") == Y({3, 2, 2, 1}));
  CHECK(YoungDiagram::parse("").empty());
  CHECK(Y({3, 2, 2, 1}).box_count() == 8);
  CHECK(Y({3, 2, 2, 1}).conjugate() == Y({4, 3, 1}));
  CHECK(YoungDiagram::square(3) == Y({3, 3, 3}));
  CHECK(YoungDiagram::staircase(3) == Y({3, 2, 1}));
  CHECK(Y({2, 1}).dilate(2) == Y({4, 4, 2, 2}));
  CHECK(Y({3, 2, 2, 1}).to_string() == "3,2,2,1");
  CHECK_THROWS_AS(Y({1, 2}), DomainError);
  CHECK_THROWS_AS(Y({2, 0}), DomainError);
  CHECK_THROWS_AS(YoungDiagram::parse("2,x"), DomainError);
}

TEST_CASE("diagrams_of_size counts integer partitions") {
  const int p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 0; n <= 10; ++n) {
    const auto all = diagrams_of_size(n);
    CHECK(all.size() == static_cast<std::size_t>(p[n]));
    for (const auto& d : all) {
      CHECK(d.box_count() == n);
    }
  }
}

TEST_CASE("diagram_to_interlacing examples") {
  const auto c = diagram_to_interlacing(Y({3, 2, 2, 1}));
  CHECK(c.minima() == std::vector<int>{-3, -1, 2, 4});
  CHECK(c.maxima() == std::vector<int>{-2, 1, 3});
  const auto empty = diagram_to_interlacing(YoungDiagram());
  CHECK(empty.minima() == std::vector<int>{0});
  CHECK(empty.maxima().empty());
  const auto box = diagram_to_interlacing(Y({1}));
  CHECK(box.minima() == std::vector<int>{-1, 1});
  CHECK(box.maxima() == std::vector<int>{0});
}

TEST_CASE("InterlacingCoords validation") {
  CHECK_THROWS_AS(InterlacingCoords({-1, 1}, {}), DomainError);
  CHECK_THROWS_AS(InterlacingCoords({-1, 1}, {2}), DomainError);
  CHECK_THROWS_AS(InterlacingCoords({-2, 1}, {0}), DomainError);
  CHECK_NOTHROW(InterlacingCoords({-2, 1}, {-1}));
  CHECK(interlacing_to_diagram(InterlacingCoords({-3, 1}, {-2})) == Y({3}));
}

TEST_CASE("interlacing round trip over all diagrams n <= 12 and random n <= 30") {
  for (int n = 0; n <= 12; ++n) {
    for (const auto& d : diagrams_of_size(n)) {
      CHECK(interlacing_to_diagram(diagram_to_interlacing(d)) == d);
    }
  }
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = Y(oracle::random_rows(rng, 1 + trial % 30));
    CHECK(interlacing_to_diagram(diagram_to_interlacing(d)) == d);
  }
}

TEST_CASE("transition_measure examples") {
  CHECK(transition_measure(Y({1})) == DiscreteMeasure({{Q(-1), Q(1, 2)}, {Q(1), Q(1, 2)}}));
  CHECK(transition_measure(Y({3, 2, 2, 1})) ==
        DiscreteMeasure({{Q(-3), Q(12, 35)}, {Q(-1), Q(4, 15)}, {Q(2), Q(2, 15)}, {Q(4), Q(9, 35)}}));
  CHECK(transition_measure(YoungDiagram()) == DiscreteMeasure::point(Q(0)));
}

TEST_CASE("transition weights equal the dimension ratios of the addable boxes") {
  // Weight at the addable box (i, j), coordinate i - j, is
  // dim(d + box) / ((n + 1) dim(d)).
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = Y(oracle::random_rows(rng, trial % 15));
    const auto mu = transition_measure(d);
    std::map<Rational, Rational> expected;
    const auto rows = d.rows();
    for (std::size_t i = 0; i <= rows.size(); ++i) {
      const int len = i < rows.size() ? rows[i] : 0;
      if (i != 0 && rows[i - 1] <= len) {
        continue;
      }
      auto bigger = rows;
      if (i == rows.size()) {
        bigger.push_back(1);
      } else {
        ++bigger[i];
      }
      expected[Q(static_cast<long>(i) - len)] =
          Rational(tableaux_count(Y(bigger))) / Rational(tableaux_count(d) * (d.box_count() + 1));
    }
    std::map<Rational, Rational> got;
    for (const auto& a : mu.atoms()) {
      got[a.x] = a.w;
    }
    CHECK(got == expected);
  }
}

TEST_CASE("transition measure invariants on random diagrams n <= 30") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 30;
    const auto d = Y(oracle::random_rows(rng, n));
    const auto mu = transition_measure(d);
    Rational total = 0, first = 0;
    for (const auto& a : mu.atoms()) {
      CHECK(a.w > 0);
      total += a.w;
      first += a.w * a.x;
    }
    CHECK(total == 1);
    CHECK(first == 0);
    const auto r = diagram_free_cumulants(d, 4);
    CHECK(r.cumulant(1) == 0);
    CHECK(r.cumulant(2) == n);
  }
}

TEST_CASE("diagram_free_cumulants of the example diagram") {
  const auto r = diagram_free_cumulants(Y({3, 2, 2, 1}), 3);
  CHECK(r.values() == std::vector<Rational>{Q(0), Q(8), Q(8)});
  CHECK_THROWS_AS(diagram_free_cumulants(Y({1}), 0), DomainError);
}

TEST_CASE("conjugation negates odd cumulants and fixes even ones") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = Y(oracle::random_rows(rng, 1 + trial));
    const auto r = diagram_free_cumulants(d, 6);
    const auto rc = diagram_free_cumulants(d.conjugate(), 6);
    for (int k = 1; k <= 6; ++k) {
      CHECK(rc.cumulant(k) == (k % 2 == 1 ? -r.cumulant(k) : r.cumulant(k)));
    }
  }
}

TEST_CASE("dilation scales coordinates and cumulants") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = Y(oracle::random_rows(rng, 1 + trial));
    for (int lambda = 1; lambda <= 3; ++lambda) {
      const auto scaled = diagram_to_interlacing(d).scaled(lambda);
      CHECK(diagram_to_interlacing(d.dilate(lambda)) == scaled);
      const auto r = diagram_free_cumulants(d, 5);
      const auto rs = free_cumulants_from_moments(moments_of(transition_measure(scaled), 5));
      for (int k = 1; k <= 5; ++k) {
        CHECK(rs.cumulant(k) == pow(Rational(lambda), k) * r.cumulant(k));
      }
    }
  }
}

TEST_CASE("CycleType") {
  const auto ct = CycleType::parse("2:1,3:2");
  CHECK(ct.support() == 8);
  CHECK(ct.cayley_norm() == 5);
  CHECK(ct.cycle_lengths(10) == std::vector<int>{3, 3, 2, 1, 1});
  CHECK((CycleType::single_cycle(2) + CycleType::single_cycle(2)).counts() == std::map<int, int>{{2, 2}});
  CHECK(CycleType::parse("").support() == 0);
  CHECK(CycleType::parse(ct.to_string()) == ct);
  CHECK_THROWS_AS(ct.cycle_lengths(7), DomainError);
  CHECK_THROWS_AS(CycleType::parse("1:2"), DomainError);
  CHECK_THROWS_AS(CycleType::parse("2"), DomainError);
}

TEST_CASE("character_estimate examples") {
  const auto id = character_estimate(Y({3, 2}), CycleType());
  CHECK(id.value == 1);
  CHECK(id.order_bound_exponent == -1.0);
  const auto t = CycleType::single_cycle(2);
  CHECK(character_estimate(Y({2, 1}), t).value == 0);
  CHECK(mn_character(Y({2, 1}), t) == 0);
  const auto paper = character_estimate(Y({3, 2, 2, 1}), t);
  CHECK(paper.value == Q(1, 8));
  CHECK(paper.order_bound_exponent == -1.5);
  CHECK(character_estimate(Y({3, 3}), CycleType::parse("2:1,3:1")).order_bound_exponent == -2.5);
  CHECK_THROWS_AS(character_estimate(Y({2}), CycleType::single_cycle(3)), DomainError);
}

TEST_CASE("estimate at a transposition is the leading term of the exact character") {
  // For the conjugate shape, the exact value is R_3 / (n(n-1)) while the
  // estimate is R_3 / n^2.
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 15; ++trial) {
    const auto d = Y(oracle::random_rows(rng, 4 + trial));
    const int n = d.box_count();
    const auto est = character_estimate(d, CycleType::single_cycle(2)).value;
    const auto exact = mn_character(d.conjugate(), CycleType::single_cycle(2));
    CHECK(exact == est * Q(n, n - 1));
  }
}

TEST_CASE("mn_character examples") {
  for (const auto& d : diagrams_of_size(6)) {
    CHECK(mn_character(d, CycleType()) == 1);
  }
  for (const char* cls : {"2:1", "3:2", "2:1,3:1", "6:1", "2:3"}) {
    CHECK(mn_character(Y({6}), CycleType::parse(cls)) == 1);
  }
  CHECK(mn_character(Y({1, 1, 1, 1}), CycleType::parse("2:1")) == -1);
  CHECK(character_value(Y({2, 1}), {3}) == -1);
  CHECK(character_value(Y({2, 2}), {2, 2}) == 2);
  CHECK_THROWS_AS(character_value(Y({2, 1}), {2}), DomainError);
  CHECK_THROWS_AS(mn_character(YoungDiagram::square(7), CycleType()), SizeLimitError);
}

TEST_CASE("dimension agrees with tableaux counts") {
  for (int n = 1; n <= 10; ++n) {
    for (const auto& d : diagrams_of_size(n)) {
      CHECK(dimension(d) == tableaux_count(d));
      std::vector<int> ones(static_cast<std::size_t>(n), 1);
      CHECK(character_value(d, ones) == dimension(d));
    }
  }
}

TEST_CASE("Frobenius transposition formula") {
  for (int n = 2; n <= 12; ++n) {
    for (const auto& d : diagrams_of_size(n)) {
      CHECK(mn_character(d, CycleType::single_cycle(2)) == Q(content_sum(d)) / Rational(binomial(n, 2)));
    }
  }
}

TEST_CASE("character tables satisfy row and column orthogonality, n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    const auto shapes = diagrams_of_size(n);
    const auto classes = classes_of(n);
    std::vector<std::vector<BigInt>> table;
    for (const auto& d : shapes) {
      std::vector<BigInt> row;
      for (const auto& c : classes) {
        row.push_back(character_value(d, c));
      }
      table.push_back(std::move(row));
    }
    for (std::size_t a = 0; a < shapes.size(); ++a) {
      for (std::size_t b = 0; b < shapes.size(); ++b) {
        Rational inner = 0;
        for (std::size_t c = 0; c < classes.size(); ++c) {
          inner += Rational(table[a][c] * table[b][c]) / Rational(centralizer(classes[c]));
        }
        CHECK(inner == (a == b ? 1 : 0));
      }
    }
    for (std::size_t c1 = 0; c1 < classes.size(); ++c1) {
      for (std::size_t c2 = 0; c2 < classes.size(); ++c2) {
        BigInt sum = 0;
        for (std::size_t a = 0; a < shapes.size(); ++a) {
          sum += table[a][c1] * table[a][c2];
        }
        CHECK(sum == (c1 == c2 ? centralizer(classes[c1]) : BigInt(0)));
      }
    }
  }
}

TEST_CASE("balanced_check") {
  for (int s = 1; s <= 6; ++s) {
    CHECK(balanced_check(YoungDiagram::square(s), 1.5));
  }
  CHECK_FALSE(balanced_check(Y({4}), 1.0));
  CHECK_FALSE(balanced_check(Y({9}), 1.0));
  for (int k = 1; k <= 30; ++k) {
    CHECK(balanced_check(YoungDiagram::staircase(k), 2.0));
  }
  CHECK_THROWS_AS(balanced_check(Y({1}), 0.0), DomainError);
}

TEST_CASE("factorization_defect") {
  const auto t = CycleType::single_cycle(2);
  CHECK(factorization_defect(Y({3, 2, 1}), t, CycleType()).defect == 0);
  CHECK(factorization_defect(Y({7}), t, CycleType::single_cycle(3)).defect == 0);
  CHECK_THROWS_AS(factorization_defect(Y({2, 1}), t, t), DomainError);

  double previous = 1.0;
  for (int s = 4; s <= 6; ++s) {
    const auto d = YoungDiagram::square(s);
    const int n = s * s;
    const auto fd = factorization_defect(d, t, t);
    const double defect = to_double(fd.defect);
    CHECK(fd.scale == doctest::Approx(std::pow(n, -2.0)));
    CHECK(defect <= 5.0 * fd.scale);
    CHECK(defect < previous);
    previous = defect;
  }
}

TEST_CASE("induced_decomposition_oracle examples") {
  const auto box_box = induced_decomposition_oracle(Y({1}), Y({1}));
  REQUIRE(box_box.size() == 2);
  std::map<YoungDiagram, BigInt> got;
  for (const auto& c : box_box) {
    got[c.shape] = c.multiplicity;
  }
  CHECK(got == std::map<YoungDiagram, BigInt>{{Y({2}), 1}, {Y({1, 1}), 1}});

  got.clear();
  for (const auto& c : induced_decomposition_oracle(Y({1}), Y({2}))) {
    got[c.shape] = c.multiplicity;
  }
  CHECK(got == std::map<YoungDiagram, BigInt>{{Y({3}), 1}, {Y({2, 1}), 1}});

  // (2,1) x (1) by Pieri: (3,1) + (2,2) + (2,1,1).
  got.clear();
  for (const auto& c : induced_decomposition_oracle(Y({2, 1}), Y({1}))) {
    got[c.shape] = c.multiplicity;
  }
  CHECK(got == std::map<YoungDiagram, BigInt>{{Y({3, 1}), 1}, {Y({2, 2}), 1}, {Y({2, 1, 1}), 1}});

  // (2,1) x (2,1) contains (3,2,1) twice.
  for (const auto& c : induced_decomposition_oracle(Y({2, 1}), Y({2, 1}))) {
    if (c.shape == Y({3, 2, 1})) {
      CHECK(c.multiplicity == 2);
    }
  }
  CHECK_THROWS_AS(induced_decomposition_oracle(YoungDiagram::square(3), Y({2, 2})), SizeLimitError);
}

TEST_CASE("induced dimensions add up, n1 + n2 <= 8") {
  for (int n = 2; n <= 8; ++n) {
    for (int n1 = 1; n1 < n; ++n1) {
      for (const auto& d1 : diagrams_of_size(n1)) {
        for (const auto& d2 : diagrams_of_size(n - n1)) {
          BigInt total = 0;
          for (const auto& c : induced_decomposition_oracle(d1, d2)) {
            CHECK(c.multiplicity > 0);
            total += c.multiplicity * dimension(c.shape);
          }
          CHECK(total == binomial(n, n1) * dimension(d1) * dimension(d2));
        }
      }
    }
  }
}

TEST_CASE("induce_shape_prediction") {
  const auto d = Y({3, 1});
  CHECK(induce_shape_prediction(d, YoungDiagram(), 6) == moments_of(transition_measure(d), 6));
  const auto box = induce_shape_prediction(Y({1}), Y({1}), 4);
  CHECK(box == MomentSequence({0, 2, 0, 6}));
  CHECK(induced_mean_moments(Y({1}), Y({1}), 4) == box);
  const auto pred = induce_shape_prediction(Y({3, 2}), Y({2, 2, 1}), 4);
  CHECK(free_cumulants_from_moments(pred).cumulant(2) == 10);
}

TEST_CASE("induced mean matches the prediction in m1 and m2, n1 + n2 <= 8") {
  for (int n = 2; n <= 8; ++n) {
    for (int n1 = 1; n1 < n; ++n1) {
      for (const auto& d1 : diagrams_of_size(n1)) {
        for (const auto& d2 : diagrams_of_size(n - n1)) {
          const auto mean = induced_mean_moments(d1, d2, 2);
          const auto pred = induce_shape_prediction(d1, d2, 2);
          CHECK(mean == pred);
        }
      }
    }
  }
}
