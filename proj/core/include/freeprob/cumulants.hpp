#pragma once

// Moment <-> cumulant transforms over NC(n) (free cumulants) and over the full
// partition lattice (classical cumulants), multivariate free cumulants of a
// moment functional, and mixed moments of free families.
//
// Sequences are truncated at an order K and indexed 1..K; the zeroth moment is
// implicitly 1. The exact instantiations (Rational) are the reference; the
// double instantiations mirror them for Monte Carlo comparisons.

#include "freeprob/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace freeprob {

inline constexpr int kDefaultOrder = 8;

template <class T>
class BasicMomentSequence {
public:
  BasicMomentSequence() = default;
  /// values[k-1] is the k-th moment.
  explicit BasicMomentSequence(std::vector<T> values) : values_(std::move(values)) {}

  int order() const noexcept { return static_cast<int>(values_.size()); }
  /// k-th moment; k = 0 gives 1. Throws DomainError past the truncation order.
  T moment(int k) const;
  const std::vector<T>& values() const noexcept { return values_; }
  /// First k moments.
  BasicMomentSequence truncated(int k) const;

  friend bool operator==(const BasicMomentSequence&, const BasicMomentSequence&) = default;

private:
  std::vector<T> values_;
};

enum class CumulantKind { free, classical };

template <class T>
class BasicCumulantSequence {
public:
  BasicCumulantSequence() = default;
  BasicCumulantSequence(CumulantKind kind, std::vector<T> values) : kind_(kind), values_(std::move(values)) {}

  CumulantKind kind() const noexcept { return kind_; }
  int order() const noexcept { return static_cast<int>(values_.size()); }
  /// k-th cumulant, 1-based.
  T cumulant(int k) const;
  const std::vector<T>& values() const noexcept { return values_; }
  BasicCumulantSequence truncated(int k) const;

  friend bool operator==(const BasicCumulantSequence&, const BasicCumulantSequence&) = default;

private:
  CumulantKind kind_ = CumulantKind::free;
  std::vector<T> values_;
};

using MomentSequence = BasicMomentSequence<Rational>;
using CumulantSequence = BasicCumulantSequence<Rational>;
using RealMomentSequence = BasicMomentSequence<double>;
using RealCumulantSequence = BasicCumulantSequence<double>;

MomentSequence to_exact(std::span<const Rational> values);
RealMomentSequence to_real(const MomentSequence& m);
RealCumulantSequence to_real(const CumulantSequence& r);

/// m_n = sum over NC(n) of prod over blocks of r_|V|.
template <class T>
BasicMomentSequence<T> moments_from_free_cumulants(const BasicCumulantSequence<T>& r);

/// Inverse of moments_from_free_cumulants by triangular back-substitution.
template <class T>
BasicCumulantSequence<T> free_cumulants_from_moments(const BasicMomentSequence<T>& m);

/// Same values via the explicit Moebius sum over NC(n) (order <= 9).
CumulantSequence free_cumulants_by_moebius_sum(const MomentSequence& m);

/// C_n = sum over all partitions pi of mu(pi, 1_n) m[pi].
template <class T>
BasicCumulantSequence<T> classical_cumulants_from_moments(const BasicMomentSequence<T>& m);

template <class T>
BasicMomentSequence<T> moments_from_classical_cumulants(const BasicCumulantSequence<T>& c);

/// Component-wise sum of two free cumulant sequences: the free convolution
/// kernel.
CumulantSequence free_cumulant_additivity_check(const CumulantSequence& a, const CumulantSequence& b);

// ---------------------------------------------------------------------------
// Multivariate functionals

/// Sequence of variable indices, each in 1..arity.
using Word = std::vector<int>;

/// Mixed moments tau(a_{w1} ... a_{wk}) for words of length <= order. Values
/// come from a generator and are memoized per word; the empty word maps to 1.
class MomentFunctional {
public:
  using Generator = std::function<Rational(const Word&)>;

  MomentFunctional(int arity, int order, Generator generator);
  static MomentFunctional from_table(int arity, int order, std::map<Word, Rational> table);

  int arity() const noexcept { return arity_; }
  int order() const noexcept { return order_; }
  Rational operator()(const Word& w) const;

private:
  struct Cache;

  int arity_;
  int order_;
  Generator generator_;
  std::shared_ptr<Cache> cache_;
};

/// Multilinear free cumulant R^(|w|)(a_{w1}, ..., a_{wk}) via the Moebius sum
/// over NC(|w|).
Rational mixed_free_cumulant(const MomentFunctional& f, const Word& w);

/// Marginal moment sequences of a free family, one per generator.
class FreeFamilySpec {
public:
  explicit FreeFamilySpec(std::vector<MomentSequence> marginals);

  int arity() const noexcept { return static_cast<int>(marginals_.size()); }
  int order() const noexcept { return order_; }
  const std::vector<MomentSequence>& marginals() const noexcept { return marginals_; }
  const std::vector<CumulantSequence>& free_cumulants() const noexcept { return cumulants_; }

private:
  std::vector<MomentSequence> marginals_;
  std::vector<CumulantSequence> cumulants_;
  int order_ = 0;
};

/// Mixed moment of a free family: sum over NC(|w|) partitions with
/// single-letter blocks of products of the marginal free cumulants.
Rational free_mixed_moment(const FreeFamilySpec& spec, const Word& w);

/// Lazily generated functional of the free family.
MomentFunctional free_moment_functional(const FreeFamilySpec& spec);

} // namespace freeprob
