#pragma once

// Measures and their moments, Cauchy-transform series, the R-transform by
// compositional inversion, free convolution, free compression and the named
// laws (semicircle, arcsine on [0,2], two-point, point mass, empirical).

#include "freeprob/cumulants.hpp"
#include "freeprob/rational.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace freeprob {

template <class T>
struct Atom {
  T x;
  T w;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finitely many atoms, positions strictly increasing, positive weights
/// summing to one (exactly for Rational, within 1e-12 for double).
template <class T>
class BasicDiscreteMeasure {
public:
  explicit BasicDiscreteMeasure(std::vector<Atom<T>> atoms);
  /// Atoms in any order; repeated positions are merged.
  static BasicDiscreteMeasure from_unsorted(std::vector<Atom<T>> atoms);
  static BasicDiscreteMeasure point(T x);

  const std::vector<Atom<T>>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  friend bool operator==(const BasicDiscreteMeasure&, const BasicDiscreteMeasure&) = default;

private:
  std::vector<Atom<T>> atoms_;
};

using DiscreteMeasure = BasicDiscreteMeasure<Rational>;
using RealDiscreteMeasure = BasicDiscreteMeasure<double>;

/// The laws used throughout: semicircle(variance), arcsine on [0,2],
/// bernoulli(p, a, b) with mass p at b and 1-p at a, point(a), empirical.
class NamedLaw {
public:
  struct Semicircle {
    Rational variance;
  };
  struct Arcsine02 {};
  struct Bernoulli {
    Rational p;
    Rational a;
    Rational b;
  };
  struct Point {
    Rational a;
  };
  struct Empirical {
    DiscreteMeasure measure;
  };
  using Variant = std::variant<Semicircle, Arcsine02, Bernoulli, Point, Empirical>;

  static NamedLaw semicircle(Rational variance);
  static NamedLaw arcsine02();
  static NamedLaw bernoulli(Rational p, Rational a, Rational b);
  static NamedLaw point(Rational a);
  static NamedLaw empirical(DiscreteMeasure measure);

  /// "semicircle:1", "arcsine02", "bernoulli:0.5:0:1", "point:2",
  /// "proj:0.5" (projection of the given rank fraction, i.e. bernoulli:p:0:1),
  /// "pm1" (bernoulli:1/2:-1:1).
  static NamedLaw parse(std::string_view spec);

  const Variant& value() const noexcept { return value_; }
  std::string name() const;

private:
  explicit NamedLaw(Variant v) : value_(std::move(v)) {}
  Variant value_;
};

template <class T>
BasicMomentSequence<T> moments_of(const BasicDiscreteMeasure<T>& measure, int order);
MomentSequence moments_of(const NamedLaw& law, int order);

/// Densities and distribution functions of the absolutely continuous laws.
double semicircle_density(double variance, double x);
double arcsine02_density(double x);
double arcsine02_cdf(double x);

/// Truncated power series c_0 + c_1 w + ... + c_K w^K.
template <class T>
class BasicTruncatedSeries {
public:
  explicit BasicTruncatedSeries(std::vector<T> coefficients);

  int order() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  const std::vector<T>& coefficients() const noexcept { return coefficients_; }
  const T& operator[](int k) const { return coefficients_.at(static_cast<std::size_t>(k)); }

  friend bool operator==(const BasicTruncatedSeries&, const BasicTruncatedSeries&) = default;

private:
  std::vector<T> coefficients_;
};

using TruncatedSeries = BasicTruncatedSeries<Rational>;

/// Coefficients (1, m_1, ..., m_K) of G(z) = 1/z + sum m_k z^{-k-1} in
/// w = 1/z, i.e. G = w * M(w).
template <class T>
BasicTruncatedSeries<T> cauchy_series(const BasicMomentSequence<T>& m);

/// Free cumulants from the compositional inverse K(z) = 1/z + sum_{k>=1}
/// R_k z^{k-1} of G, solved order by order.
template <class T>
BasicCumulantSequence<T> r_coefficients_via_inversion(const BasicTruncatedSeries<T>& g);

/// Coefficients in z of G(K(z)), truncated at z^{K+1}. Equals z when r is
/// the inverse of g.
TruncatedSeries compose_cauchy_with_inverse(const TruncatedSeries& g, const CumulantSequence& r);

template <class T>
BasicMomentSequence<T> free_convolve(const BasicMomentSequence<T>& a, const BasicMomentSequence<T>& b, int order);

/// R_k -> t^{k-1} R_k, 0 < t <= 1: the normalized law of a compressed element.
template <class T>
BasicMomentSequence<T> free_compress(const BasicMomentSequence<T>& m, const T& t);

/// m_k -> lambda^k m_k.
template <class T>
BasicMomentSequence<T> dilate(const BasicMomentSequence<T>& m, const T& lambda);

/// m_k -> sum_j binom(k, j) a^{k-j} m_j (law of X + a).
MomentSequence translate(const MomentSequence& m, const Rational& a);

} // namespace freeprob
