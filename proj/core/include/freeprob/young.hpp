#pragma once

// Young diagrams as profiles: interlacing coordinates, Kerov transition
// measures and their free cumulants, asymptotic character estimates, and
// exact desk-scale oracles (Murnaghan-Nakayama characters, induction via
// character inner products).
//
// Orientation: a cell in row i, column j (0-based) sits at coordinate i - j.
// For rows (3,2,2,1) this gives minima (-3,-1,2,4) and maxima (-2,1,3), so the
// profile of `rows` is the usual content profile of the conjugate shape. The
// exact character matching character_estimate(d, .) is therefore
// mn_character(d.conjugate(), .); on self-conjugate shapes the two agree.

#include "freeprob/cumulants.hpp"
#include "freeprob/rational.hpp"
#include "freeprob/transforms.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freeprob::young {

inline constexpr int kCharacterCap = 40;
inline constexpr int kInductionCap = 12;

class YoungDiagram {
public:
  YoungDiagram() = default;
  /// Weakly decreasing positive row lengths.
  explicit YoungDiagram(std::vector<int> rows);
  /// "3,2,2,1"; an empty string is the empty diagram.
  static YoungDiagram parse(std::string_view text);
  static YoungDiagram square(int side);
  static YoungDiagram staircase(int k);

  const std::vector<int>& rows() const noexcept { return rows_; }
  int box_count() const noexcept { return n_; }
  int row_count() const noexcept { return static_cast<int>(rows_.size()); }
  int longest_row() const noexcept { return rows_.empty() ? 0 : rows_.front(); }
  bool empty() const noexcept { return rows_.empty(); }

  YoungDiagram conjugate() const;
  /// Every box becomes a factor x factor block.
  YoungDiagram dilate(int factor) const;

  std::string to_string() const;

  friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;
  friend auto operator<=>(const YoungDiagram& a, const YoungDiagram& b) { return a.rows_ <=> b.rows_; }

private:
  std::vector<int> rows_;
  int n_ = 0;
};

/// All diagrams with n boxes, in reverse lexicographic order (one row first).
std::vector<YoungDiagram> diagrams_of_size(int n);

/// Local minima x_1 < ... < x_k and maxima y_1 < ... < y_{k-1} of the
/// profile, strictly interlacing with sum(x) = sum(y).
class InterlacingCoords {
public:
  InterlacingCoords(std::vector<int> minima, std::vector<int> maxima);

  const std::vector<int>& minima() const noexcept { return minima_; }
  const std::vector<int>& maxima() const noexcept { return maxima_; }
  InterlacingCoords scaled(int factor) const;

  friend bool operator==(const InterlacingCoords&, const InterlacingCoords&) = default;

private:
  std::vector<int> minima_;
  std::vector<int> maxima_;
};

InterlacingCoords diagram_to_interlacing(const YoungDiagram& d);
YoungDiagram interlacing_to_diagram(const InterlacingCoords& c);

/// Atoms at the minima, weights the residues of prod(z - y) / prod(z - x).
DiscreteMeasure transition_measure(const InterlacingCoords& c);
DiscreteMeasure transition_measure(const YoungDiagram& d);

/// Free cumulants R_1..R_{k_max} of the transition measure.
CumulantSequence diagram_free_cumulants(const YoungDiagram& d, int k_max);

/// Conjugacy class of the symmetric group: counts of cycles of each length
/// >= 2; fixed points are implicit.
class CycleType {
public:
  CycleType() = default;
  explicit CycleType(std::map<int, int> counts);
  /// "2:1,3:2" (length:count); empty string is the identity class.
  static CycleType parse(std::string_view text);
  static CycleType single_cycle(int length);

  const std::map<int, int>& counts() const noexcept { return counts_; }
  /// Number of moved points, sum j * k_j.
  int support() const noexcept;
  /// Minimal number of transpositions, sum (j - 1) * k_j.
  int cayley_norm() const noexcept;
  /// Cycles of the disjoint product.
  CycleType operator+(const CycleType& other) const;
  /// Cycle lengths of the class in S_n, descending, padded with fixed points.
  std::vector<int> cycle_lengths(int n) const;

  std::string to_string() const;

  friend bool operator==(const CycleType&, const CycleType&) = default;

private:
  std::map<int, int> counts_;
};

struct CharacterEstimate {
  Rational value;
  /// Exponent of the remainder n^{-1 - |sigma|/2}.
  double order_bound_exponent = 0.0;
};

/// prod_j n^{-j k_j} R_{j+1}^{k_j} with R the diagram's free cumulants.
CharacterEstimate character_estimate(const YoungDiagram& d, const CycleType& ct);

/// Dimension of the irreducible representation (hook length formula).
BigInt dimension(const YoungDiagram& d);
/// Irreducible character chi^d at a class given by its cycle lengths
/// (summing to |d|), by the Murnaghan-Nakayama rule.
BigInt character_value(const YoungDiagram& d, std::vector<int> cycle_lengths);
/// Normalized character chi^d(sigma) / chi^d(id).
Rational mn_character(const YoungDiagram& d, const CycleType& ct);

bool balanced_check(const YoungDiagram& d, double a);

struct FactorizationDefect {
  /// |chi(s1 s2) - chi(s1) chi(s2)| for disjoint s1, s2.
  Rational defect;
  /// n^{-1 - |s1 s2| / 2}.
  double scale = 0.0;
};

FactorizationDefect factorization_defect(const YoungDiagram& d, const CycleType& ct1, const CycleType& ct2);

/// Free convolution of the two transition measures' moment sequences.
MomentSequence induce_shape_prediction(const YoungDiagram& d1, const YoungDiagram& d2, int order);

struct InducedComponent {
  YoungDiagram shape;
  BigInt multiplicity;
};

/// Irreducible constituents of Ind_{S_n1 x S_n2}^{S_n} (d1 (x) d2) via
/// character inner products.
std::vector<InducedComponent> induced_decomposition_oracle(const YoungDiagram& d1, const YoungDiagram& d2);

/// Transition-measure moments averaged over the induced components with
/// weights multiplicity * dimension.
MomentSequence induced_mean_moments(const YoungDiagram& d1, const YoungDiagram& d2, int order);

} // namespace freeprob::young
