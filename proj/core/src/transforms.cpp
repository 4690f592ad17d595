#include "freeprob/transforms.hpp"

#include "freeprob/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace freeprob {

namespace {

template <class T>
bool is_exact_one(const T& sum) {
  if constexpr (std::is_same_v<T, double>) {
    return std::abs(sum - 1.0) <= 1e-12;
  } else {
    return sum == 1;
  }
}

// Truncated series arithmetic on coefficient vectors of equal length.
template <class T>
std::vector<T> series_mul(const std::vector<T>& a, const std::vector<T>& b) {
  const std::size_t n = a.size();
  std::vector<T> out(n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == T(0)) {
      continue;
    }
    for (std::size_t j = 0; i + j < n; ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

template <class T>
std::vector<T> series_reciprocal(const std::vector<T>& a) {
  const std::size_t n = a.size();
  std::vector<T> out(n, T(0));
  out[0] = T(1) / a[0];
  for (std::size_t k = 1; k < n; ++k) {
    T s = T(0);
    for (std::size_t j = 1; j <= k; ++j) {
      s += a[j] * out[k - j];
    }
    out[k] = -s / a[0];
  }
  return out;
}

template <class T>
T power(const T& base, int e) {
  T r = T(1);
  for (int i = 0; i < e; ++i) {
    r *= base;
  }
  return r;
}

} // namespace

// ---------------------------------------------------------------------------
// DiscreteMeasure

template <class T>
BasicDiscreteMeasure<T>::BasicDiscreteMeasure(std::vector<Atom<T>> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw DomainError("DiscreteMeasure: no atoms");
  }
  T total = T(0);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!(atoms_[i].w > T(0))) {
      throw DomainError("DiscreteMeasure: weights must be positive");
    }
    if (i > 0 && !(atoms_[i - 1].x < atoms_[i].x)) {
      throw DomainError("DiscreteMeasure: positions must be strictly increasing");
    }
    total += atoms_[i].w;
  }
  if (!is_exact_one(total)) {
    throw DomainError("DiscreteMeasure: weights do not sum to one");
  }
}

template <class T>
BasicDiscreteMeasure<T> BasicDiscreteMeasure<T>::from_unsorted(std::vector<Atom<T>> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom<T>& a, const Atom<T>& b) { return a.x < b.x; });
  std::vector<Atom<T>> merged;
  for (auto& atom : atoms) {
    if (!merged.empty() && merged.back().x == atom.x) {
      merged.back().w += atom.w;
    } else {
      merged.push_back(std::move(atom));
    }
  }
  return BasicDiscreteMeasure(std::move(merged));
}

template <class T>
BasicDiscreteMeasure<T> BasicDiscreteMeasure<T>::point(T x) {
  return BasicDiscreteMeasure({Atom<T>{std::move(x), T(1)}});
}

template class BasicDiscreteMeasure<Rational>;
template class BasicDiscreteMeasure<double>;

// ---------------------------------------------------------------------------
// NamedLaw

NamedLaw NamedLaw::semicircle(Rational variance) {
  if (variance <= 0) {
    throw DomainError("semicircle: variance must be positive");
  }
  return NamedLaw(Semicircle{std::move(variance)});
}

NamedLaw NamedLaw::arcsine02() { return NamedLaw(Arcsine02{}); }

NamedLaw NamedLaw::bernoulli(Rational p, Rational a, Rational b) {
  if (p <= 0 || p >= 1) {
    throw DomainError("bernoulli: p must lie in (0, 1)");
  }
  if (!(a < b)) {
    throw DomainError("bernoulli: requires a < b");
  }
  return NamedLaw(Bernoulli{std::move(p), std::move(a), std::move(b)});
}

NamedLaw NamedLaw::point(Rational a) { return NamedLaw(Point{std::move(a)}); }

NamedLaw NamedLaw::empirical(DiscreteMeasure measure) { return NamedLaw(Empirical{std::move(measure)}); }

NamedLaw NamedLaw::parse(std::string_view spec) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    auto next = spec.find(':', pos);
    parts.emplace_back(spec.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) {
      break;
    }
    pos = next + 1;
  }
  const std::string& tag = parts.front();
  auto arity = [&](std::size_t expected) {
    if (parts.size() != expected + 1) {
      throw DomainError("law '" + std::string(spec) + "' expects " + std::to_string(expected) + " parameter(s)");
    }
  };
  if (tag == "semicircle") {
    if (parts.size() == 1) {
      return semicircle(1);
    }
    arity(1);
    return semicircle(parse_rational(parts[1]));
  }
  if (tag == "arcsine02") {
    arity(0);
    return arcsine02();
  }
  if (tag == "bernoulli") {
    arity(3);
    return bernoulli(parse_rational(parts[1]), parse_rational(parts[2]), parse_rational(parts[3]));
  }
  if (tag == "proj") {
    arity(1);
    return bernoulli(parse_rational(parts[1]), 0, 1);
  }
  if (tag == "pm1") {
    arity(0);
    return bernoulli(Rational(1, 2), -1, 1);
  }
  if (tag == "point") {
    arity(1);
    return point(parse_rational(parts[1]));
  }
  throw DomainError("unknown law: " + std::string(spec));
}

std::string NamedLaw::name() const {
  struct Visitor {
    std::string operator()(const Semicircle& s) const { return "semicircle:" + to_string(s.variance); }
    std::string operator()(const Arcsine02&) const { return "arcsine02"; }
    std::string operator()(const Bernoulli& b) const {
      return "bernoulli:" + to_string(b.p) + ":" + to_string(b.a) + ":" + to_string(b.b);
    }
    std::string operator()(const Point& p) const { return "point:" + to_string(p.a); }
    std::string operator()(const Empirical& e) const { return "empirical[" + std::to_string(e.measure.size()) + "]"; }
  };
  return std::visit(Visitor{}, value_);
}

// ---------------------------------------------------------------------------
// Moments and densities

template <class T>
BasicMomentSequence<T> moments_of(const BasicDiscreteMeasure<T>& measure, int order) {
  if (order < 1) {
    throw DomainError("moments_of: order must be >= 1");
  }
  std::vector<T> m(static_cast<std::size_t>(order), T(0));
  for (const auto& atom : measure.atoms()) {
    T xk = atom.w;
    for (int k = 1; k <= order; ++k) {
      xk *= atom.x;
      m[static_cast<std::size_t>(k - 1)] += xk;
    }
  }
  return BasicMomentSequence<T>(std::move(m));
}

template BasicMomentSequence<Rational> moments_of(const BasicDiscreteMeasure<Rational>&, int);
template BasicMomentSequence<double> moments_of(const BasicDiscreteMeasure<double>&, int);

MomentSequence moments_of(const NamedLaw& law, int order) {
  if (order < 1) {
    throw DomainError("moments_of: order must be >= 1");
  }
  struct Visitor {
    int order;
    MomentSequence operator()(const NamedLaw::Semicircle& s) const {
      std::vector<Rational> m;
      for (int k = 1; k <= order; ++k) {
        m.push_back(k % 2 == 1 ? Rational(0)
                               : Rational(catalan(static_cast<unsigned>(k / 2))) * pow(s.variance, k / 2));
      }
      return MomentSequence(std::move(m));
    }
    MomentSequence operator()(const NamedLaw::Arcsine02&) const {
      // X = 1 + Y with Y arcsine on [-1,1]: E[Y^{2j}] = binom(2j, j) / 4^j.
      std::vector<Rational> m;
      for (int k = 1; k <= order; ++k) {
        Rational sum = 0;
        for (int j = 0; 2 * j <= k; ++j) {
          sum += Rational(binomial(static_cast<unsigned>(k), static_cast<unsigned>(2 * j)) *
                          binomial(static_cast<unsigned>(2 * j), static_cast<unsigned>(j))) /
                 pow(Rational(4), j);
        }
        m.push_back(sum);
      }
      return MomentSequence(std::move(m));
    }
    MomentSequence operator()(const NamedLaw::Bernoulli& b) const {
      return moments_of(DiscreteMeasure({{b.a, 1 - b.p}, {b.b, b.p}}), order);
    }
    MomentSequence operator()(const NamedLaw::Point& p) const {
      return moments_of(DiscreteMeasure::point(p.a), order);
    }
    MomentSequence operator()(const NamedLaw::Empirical& e) const { return moments_of(e.measure, order); }
  };
  return std::visit(Visitor{order}, law.value());
}

double semicircle_density(double variance, double x) {
  const double r2 = 4.0 * variance;
  if (x * x >= r2) {
    return 0.0;
  }
  return std::sqrt(r2 - x * x) / (2.0 * std::numbers::pi * variance);
}

double arcsine02_density(double x) {
  if (x <= 0.0 || x >= 2.0) {
    return 0.0;
  }
  return 1.0 / (std::numbers::pi * std::sqrt(x * (2.0 - x)));
}

double arcsine02_cdf(double x) {
  if (x <= 0.0) {
    return 0.0;
  }
  if (x >= 2.0) {
    return 1.0;
  }
  return 2.0 / std::numbers::pi * std::asin(std::sqrt(x / 2.0));
}

// ---------------------------------------------------------------------------
// Series and the R-transform

template <class T>
BasicTruncatedSeries<T>::BasicTruncatedSeries(std::vector<T> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) {
    throw DomainError("TruncatedSeries: needs at least the constant coefficient");
  }
}

template class BasicTruncatedSeries<Rational>;
template class BasicTruncatedSeries<double>;

template <class T>
BasicTruncatedSeries<T> cauchy_series(const BasicMomentSequence<T>& m) {
  std::vector<T> c{T(1)};
  c.insert(c.end(), m.values().begin(), m.values().end());
  return BasicTruncatedSeries<T>(std::move(c));
}

template <class T>
BasicCumulantSequence<T> r_coefficients_via_inversion(const BasicTruncatedSeries<T>& g) {
  // K(G(z)) = z. In w = 1/z, with G = w M(w) this reads
  //   sum_{k>=1} R_k w^k M(w)^{k-1} = 1 - 1/M(w),
  // which is triangular in R_n at order w^n.
  if (!(g[0] == T(1))) {
    throw DomainError("r_coefficients_via_inversion: G must start as 1/z (leading coefficient 1)");
  }
  const int order = g.order();
  const std::vector<T>& m = g.coefficients();
  std::vector<T> rhs = series_reciprocal(m);
  for (auto& c : rhs) {
    c = -c;
  }
  rhs[0] += T(1);

  // powers[k] = M^k, k = 0..order-1.
  std::vector<std::vector<T>> powers;
  powers.emplace_back(m.size(), T(0));
  powers[0][0] = T(1);
  for (int k = 1; k < order; ++k) {
    powers.push_back(series_mul(powers.back(), m));
  }

  std::vector<T> r;
  for (int n = 1; n <= order; ++n) {
    T acc = rhs[static_cast<std::size_t>(n)];
    for (int k = 1; k < n; ++k) {
      acc -= r[static_cast<std::size_t>(k - 1)] * powers[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(n - k)];
    }
    r.push_back(acc);
  }
  return BasicCumulantSequence<T>(CumulantKind::free, std::move(r));
}

template BasicTruncatedSeries<Rational> cauchy_series(const BasicMomentSequence<Rational>&);
template BasicTruncatedSeries<double> cauchy_series(const BasicMomentSequence<double>&);
template BasicCumulantSequence<Rational> r_coefficients_via_inversion(const BasicTruncatedSeries<Rational>&);
template BasicCumulantSequence<double> r_coefficients_via_inversion(const BasicTruncatedSeries<double>&);

TruncatedSeries compose_cauchy_with_inverse(const TruncatedSeries& g, const CumulantSequence& r) {
  // K(z) = C(z)/z with C = 1 + sum R_k z^k, so G(K(z)) = sum_k g_k (z/C(z))^{k+1}.
  const int order = g.order();
  if (r.order() < order) {
    throw DomainError("compose_cauchy_with_inverse: cumulant order too small");
  }
  const std::size_t len = static_cast<std::size_t>(order) + 2;
  std::vector<Rational> c(len, Rational(0));
  c[0] = 1;
  for (int k = 1; k <= order && static_cast<std::size_t>(k) < len; ++k) {
    c[static_cast<std::size_t>(k)] = r.cumulant(k);
  }
  std::vector<Rational> inv_c = series_reciprocal(c);
  std::vector<Rational> u(len, Rational(0));  // z / C(z)
  for (std::size_t i = 0; i + 1 < len; ++i) {
    u[i + 1] = inv_c[i];
  }
  std::vector<Rational> out(len, Rational(0));
  std::vector<Rational> u_pow = u;
  for (int k = 0; k <= order; ++k) {
    for (std::size_t i = 0; i < len; ++i) {
      out[i] += g[k] * u_pow[i];
    }
    u_pow = series_mul(u_pow, u);
  }
  return TruncatedSeries(std::move(out));
}

// ---------------------------------------------------------------------------
// Free convolution, compression, dilation

template <class T>
BasicMomentSequence<T> free_convolve(const BasicMomentSequence<T>& a, const BasicMomentSequence<T>& b, int order) {
  if (order < 1 || a.order() < order || b.order() < order) {
    throw DomainError("free_convolve: inputs must be truncated at >= the requested order");
  }
  const auto ra = free_cumulants_from_moments(a.truncated(order));
  const auto rb = free_cumulants_from_moments(b.truncated(order));
  std::vector<T> sum;
  for (int k = 1; k <= order; ++k) {
    sum.push_back(ra.cumulant(k) + rb.cumulant(k));
  }
  return moments_from_free_cumulants(BasicCumulantSequence<T>(CumulantKind::free, std::move(sum)));
}

template <class T>
BasicMomentSequence<T> free_compress(const BasicMomentSequence<T>& m, const T& t) {
  if (!(t > T(0)) || t > T(1)) {
    throw DomainError("free_compress: t must lie in (0, 1]");
  }
  const auto r = free_cumulants_from_moments(m);
  std::vector<T> scaled;
  for (int k = 1; k <= r.order(); ++k) {
    scaled.push_back(power(t, k - 1) * r.cumulant(k));
  }
  return moments_from_free_cumulants(BasicCumulantSequence<T>(CumulantKind::free, std::move(scaled)));
}

template <class T>
BasicMomentSequence<T> dilate(const BasicMomentSequence<T>& m, const T& lambda) {
  if (lambda == T(0)) {
    throw DomainError("dilate: lambda must be nonzero");
  }
  std::vector<T> out;
  T scale = T(1);
  for (int k = 1; k <= m.order(); ++k) {
    scale *= lambda;
    out.push_back(scale * m.moment(k));
  }
  return BasicMomentSequence<T>(std::move(out));
}

template BasicMomentSequence<Rational> free_convolve(const BasicMomentSequence<Rational>&,
                                                     const BasicMomentSequence<Rational>&, int);
template BasicMomentSequence<double> free_convolve(const BasicMomentSequence<double>&,
                                                   const BasicMomentSequence<double>&, int);
template BasicMomentSequence<Rational> free_compress(const BasicMomentSequence<Rational>&, const Rational&);
template BasicMomentSequence<double> free_compress(const BasicMomentSequence<double>&, const double&);
template BasicMomentSequence<Rational> dilate(const BasicMomentSequence<Rational>&, const Rational&);
template BasicMomentSequence<double> dilate(const BasicMomentSequence<double>&, const double&);

MomentSequence translate(const MomentSequence& m, const Rational& a) {
  std::vector<Rational> out;
  for (int k = 1; k <= m.order(); ++k) {
    Rational sum = 0;
    for (int j = 0; j <= k; ++j) {
      sum += Rational(binomial(static_cast<unsigned>(k), static_cast<unsigned>(j))) * pow(a, k - j) * m.moment(j);
    }
    out.push_back(sum);
  }
  return MomentSequence(std::move(out));
}

} // namespace freeprob
