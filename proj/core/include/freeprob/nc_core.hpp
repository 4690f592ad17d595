#pragma once

// Set partitions, the noncrossing lattice NC(n), its Moebius function and the
// embedding of NC(n) into the Cayley geometry of the symmetric group.
//
// Elements of the ground set are 1-based throughout. Permutation products
// compose right-to-left: (s * t)(i) = s(t(i)).

#include "freeprob/rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freeprob::nc {

inline constexpr int kDefaultNcCap = 14;
inline constexpr int kDefaultAllPartitionsCap = 12;
inline constexpr int kMoebiusCap = 10;
inline constexpr int kMaxGroundSet = 16;

/// A partition of {1..n} in canonical form: each block sorted ascending,
/// blocks ordered by their least element.
class SetPartition {
public:
  SetPartition(int n, std::vector<std::vector<int>> blocks);

  static SetPartition singletons(int n);
  static SetPartition one_block(int n);
  /// From a block label per element (labels[i] is the block of element i+1).
  static SetPartition from_labels(std::span<const int> labels);
  /// Text form "1,3/2/4".
  static SetPartition parse(std::string_view text);

  int size() const noexcept { return n_; }
  const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  /// Index into blocks() of the block holding `element`.
  int block_of(int element) const { return labels_.at(static_cast<std::size_t>(element - 1)); }
  /// Restricted growth string: 0-based block index per element.
  const std::vector<int>& labels() const noexcept { return labels_; }
  /// Packed restricted growth string, 4 bits per element; unique per partition.
  std::uint64_t key() const noexcept;
  /// Sorted block sizes, descending.
  std::vector<int> block_type() const;

  std::string to_string() const;

  friend bool operator==(const SetPartition& a, const SetPartition& b) {
    return a.n_ == b.n_ && a.labels_ == b.labels_;
  }
  friend std::strong_ordering operator<=>(const SetPartition& a, const SetPartition& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) {
      return c;
    }
    return a.labels_ <=> b.labels_;
  }

private:
  SetPartition() = default;
  void rebuild_labels();

  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> labels_;
};

/// A bijection of {1..n} in one-line form.
class Permutation {
public:
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// The long cycle c: i -> i+1 (mod n).
  static Permutation long_cycle(int n);
  /// Text form "3,2,1,4".
  static Permutation parse(std::string_view text);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<int>& images() const noexcept { return images_; }

  Permutation inverse() const;
  /// Orbits as sorted element lists, ordered by least element.
  std::vector<std::vector<int>> orbits() const;
  int orbit_count() const;
  /// n minus the number of orbits (minimal number of transpositions).
  int cayley_norm() const { return size() - orbit_count(); }

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> images_;
};

/// (s * t)(i) = s(t(i)).
Permutation operator*(const Permutation& s, const Permutation& t);

/// Interval [lower, upper] of NC(n); both ends noncrossing, lower refines upper.
struct NcInterval {
  NcInterval(SetPartition lower_, SetPartition upper_);

  SetPartition lower;
  SetPartition upper;
};

bool is_noncrossing(const SetPartition& p);

/// Visits NC(n) in canonical (restricted-growth lexicographic) order.
void for_each_nc(int n, const std::function<void(const SetPartition&)>& visit,
                 int cap = kDefaultNcCap);
std::vector<SetPartition> enumerate_nc(int n, int cap = kDefaultNcCap);

/// Visits every set partition of {1..n} in restricted-growth lexicographic order.
void for_each_partition(int n, const std::function<void(const SetPartition&)>& visit,
                        int cap = kDefaultAllPartitionsCap);
std::vector<SetPartition> enumerate_all_partitions(int n, int cap = kDefaultAllPartitionsCap);

bool refines(const SetPartition& p, const SetPartition& q);

/// Meet and join in the lattice of all partitions.
SetPartition partition_meet(const SetPartition& p, const SetPartition& q);
SetPartition partition_join(const SetPartition& p, const SetPartition& q);

SetPartition nc_meet(const SetPartition& p, const SetPartition& q);
/// Finest noncrossing partition coarser than both arguments.
SetPartition nc_join(const SetPartition& p, const SetPartition& q);

/// Moebius function of NC(n) on an interval, by memoized recursion over
/// intervals. Results are cached process-wide (thread-safe).
std::int64_t moebius_nc(const NcInterval& interval);

/// Sends each element to the next element of its block, cyclically.
Permutation nc_to_permutation(const SetPartition& p);
/// Orbit partition of s when s lies on a geodesic from the identity to the
/// long cycle; std::nullopt otherwise.
std::optional<SetPartition> permutation_to_nc(const Permutation& s);

int cayley_distance(const Permutation& s1, const Permutation& s2);

/// Block-size profile of a family of partitions with its multiplicity. Sums
/// of products over blocks only depend on this profile.
struct BlockTypeCount {
  std::vector<int> sizes;  // descending
  BigInt count;
};

/// Block-size profiles of NC(n) and of all partitions of {1..n}; cached.
const std::vector<BlockTypeCount>& nc_block_types(int n);
const std::vector<BlockTypeCount>& all_block_types(int n);

/// Moebius value mu(0, 1) of the full partition lattice of an m-set, computed
/// by the defining recursion (cached).
BigInt partition_lattice_moebius(int m);

} // namespace freeprob::nc
