#include "freeprob/error.hpp"
#include "freeprob/rmt.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace freeprob;
using namespace freeprob::rmt;

namespace {

Spectrum pm1(int n) {
  Spectrum s(static_cast<std::size_t>(n), 1.0);
  std::fill(s.begin(), s.begin() + n / 2, -1.0);
  return s;
}

Spectrum projection(int n, int rank) {
  Spectrum s(static_cast<std::size_t>(n), 0.0);
  std::fill(s.end() - rank, s.end(), 1.0);
  return s;
}

std::vector<double> eigenvalues(const ComplexMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(x, Eigen::EigenvaluesOnly);
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

// Sample variance of X_11 for a centered unit-variance spectrum, with its
// standard error, from per-trial squared entries.
MomentEstimate entry_variance(int n, int trials, std::uint64_t seed, bool corrected) {
  const auto spec = pm1(n);
  std::vector<double> squares;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 stream(derive_seed(seed, static_cast<std::uint64_t>(t), 0));
    const auto u = corrected ? sample_haar_unitary(n, stream) : sample_unitary_uncorrected(n, stream);
    double x11 = 0.0;
    for (int k = 0; k < n; ++k) {
      x11 += std::norm(u(0, k)) * spec[static_cast<std::size_t>(k)];
    }
    squares.push_back(x11 * x11);
  }
  return summarize(squares);
}

} // namespace

TEST_CASE("derive_seed separates trials and generators") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t t = 0; t < 50; ++t) {
    for (std::uint64_t g = 0; g < 4; ++g) {
      seeds.insert(derive_seed(7, t, g));
    }
  }
  CHECK(seeds.size() == 200);
  CHECK(derive_seed(7, 3, 1) == derive_seed(7, 3, 1));
  CHECK(derive_seed(7, 3, 1) != derive_seed(8, 3, 1));
}

TEST_CASE("Haar samples are unitary") {
  std::mt19937_64 stream(1);
  for (int n : {1, 2, 5, 17, 40}) {
    const auto u = sample_haar_unitary(n, stream);
    const ComplexMatrix defect = u.adjoint() * u - ComplexMatrix::Identity(n, n);
    CHECK(defect.cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(unitarity_defect(u) <= 1e-10);
  }
  ComplexMatrix not_unitary = ComplexMatrix::Identity(3, 3);
  not_unitary(0, 0) = 2.0;
  CHECK(unitarity_defect(not_unitary) > 1e-3);
  CHECK_THROWS_AS(sample_haar_unitary(0, stream), DomainError);
}

TEST_CASE("squared moduli of Haar entries average 1/N") {
  const int n = 6;
  const int trials = 3000;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 stream(derive_seed(3, static_cast<std::uint64_t>(t), 0));
    sum += sample_haar_unitary(n, stream).cwiseAbs2();
  }
  sum /= trials;
  // Var |U_ij|^2 = (N-1)/(N^2 (N+1)); allow 4 standard errors.
  const double se = std::sqrt((n - 1.0) / (n * n * (n + 1.0)) / trials);
  CHECK((sum.array() - 1.0 / n).abs().maxCoeff() < 4.0 * se);
}

TEST_CASE("Var(X_11) is 1/(N+1)") {
  for (int n : {10, 50}) {
    const auto est = entry_variance(n, 4000, 11, true);
    CHECK(std::abs(est.value - 1.0 / (n + 1)) < 3.0 * est.stderr_);
  }
}

TEST_CASE("uncorrected QR is not Haar but gives the same conjugated matrices") {
  // Haar has E[U_11] = 0; without the phase correction U_11 keeps a fixed
  // sign convention.
  const int n = 8;
  const int trials = 2000;
  std::vector<double> corrected, uncorrected;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 s1(derive_seed(4, static_cast<std::uint64_t>(t), 0));
    std::mt19937_64 s2(derive_seed(4, static_cast<std::uint64_t>(t), 0));
    corrected.push_back(sample_haar_unitary(n, s1)(0, 0).real());
    uncorrected.push_back(sample_unitary_uncorrected(n, s2)(0, 0).real());
  }
  const auto good = summarize(corrected);
  const auto bad = summarize(uncorrected);
  CHECK(std::abs(good.value) < 3.0 * good.stderr_);
  CHECK(std::abs(bad.value) > 10.0 * bad.stderr_);

  // The two samplers differ by column phases, which commute with D.
  Spectrum d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    d[static_cast<std::size_t>(i)] = i - 3.5;
  }
  const Eigen::VectorXcd diag = Eigen::Map<const Eigen::VectorXd>(d.data(), n).cast<std::complex<double>>();
  std::mt19937_64 s1(9), s2(9);
  const auto u = sample_haar_unitary(n, s1);
  const auto v = sample_unitary_uncorrected(n, s2);
  CHECK((u - v).cwiseAbs().maxCoeff() > 1e-3);
  const ComplexMatrix xu = u * diag.asDiagonal() * u.adjoint();
  const ComplexMatrix xv = v * diag.asDiagonal() * v.adjoint();
  CHECK((xu - xv).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(entry_variance(10, 4000, 11, false).value - entry_variance(10, 4000, 11, true).value) < 1e-12);
}

TEST_CASE("realized matrices carry the prescribed spectra") {
  const int n = 24;
  Spectrum a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)] = std::sin(i + 1.0) * 3.0;
  }
  const auto b = pm1(n);
  const MatrixModel model(n, {a, b}, 99);
  const auto xs = realize_model(model, 4);
  REQUIRE(xs.size() == 2);
  auto sorted_a = a;
  std::sort(sorted_a.begin(), sorted_a.end());
  const auto eig_a = eigenvalues(xs[0]);
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(eig_a[static_cast<std::size_t>(i)] - sorted_a[static_cast<std::size_t>(i)]) < 1e-9);
  }
  CHECK((xs[0] - xs[0].adjoint()).cwiseAbs().maxCoeff() < 1e-12);

  const double trace_sum = (xs[0] + xs[1]).trace().real();
  CHECK(trace_sum == doctest::Approx(std::accumulate(a.begin(), a.end(), 0.0)).epsilon(1e-12));

  const auto m = spectrum_moments(a, 4);
  ComplexMatrix power = ComplexMatrix::Identity(n, n);
  for (int k = 1; k <= 4; ++k) {
    power = power * xs[0];
    CHECK(power.trace().real() / n == doctest::Approx(m.moment(k)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(MatrixModel(n, {Spectrum(3, 0.0)}, 1), DomainError);
  CHECK_THROWS_AS(MatrixModel(n, {}, 1), DomainError);
}

TEST_CASE("mixed_moment_mc examples") {
  const int n = 40;
  const Spectrum a = pm1(n);
  Spectrum b(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    b[static_cast<std::size_t>(i)] = (i % 4) - 1.5;
  }
  const MatrixModel model(n, {a, b}, 5);
  const auto single = mixed_moment_mc(model, {2}, 5);
  CHECK(single.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(single.stderr_ < 1e-12);
  CHECK(single.trials == 5);

  const auto ab = mixed_moment_mc(model, {1, 2}, 60);
  CHECK(std::abs(ab.value) < 3.0 * ab.stderr_ + 1e-12);

  const MatrixModel sym(n, {pm1(n), pm1(n)}, 6);
  const auto abab = mixed_moment_mc(sym, {1, 2, 1, 2}, 60);
  CHECK(std::abs(abab.value) < 3.0 * abab.stderr_);

  CHECK_THROWS_AS(mixed_moment_mc(model, {3}, 2), DomainError);
  CHECK_THROWS_AS(mixed_moment_mc(model, {1}, 0), DomainError);
}

TEST_CASE("estimates are bit-identical for identical inputs") {
  const MatrixModel model(30, {pm1(30), projection(30, 10)}, 1234);
  const auto first = mixed_moment_mc(model, {1, 2, 2, 1, 2}, 12);
  const auto second = mixed_moment_mc(model, {1, 2, 2, 1, 2}, 12);
  CHECK(first.value == second.value);
  CHECK(first.stderr_ == second.stderr_);
  const MatrixModel other(30, {pm1(30), projection(30, 10)}, 1235);
  CHECK(mixed_moment_mc(other, {1, 2, 2, 1, 2}, 12).value != first.value);

  const auto e1 = entry_cumulant_mc(pm1(20), 4, 50, 8);
  const auto e2 = entry_cumulant_mc(pm1(20), 4, 50, 8);
  for (std::size_t i = 0; i < e1.rows.size(); ++i) {
    CHECK(e1.rows[i].cumulant.value == e2.rows[i].cumulant.value);
  }
}

TEST_CASE("Monte Carlo error shrinks as N grows") {
  // tau(abab) for two free projections of trace 1/2.
  const double predicted = 0.5 * 0.25 + 0.25 * 0.5 - 0.25 * 0.25;
  std::vector<double> errors;
  for (int n : {64, 128, 256, 512}) {
    const MatrixModel model(n, {projection(n, n / 2), projection(n, n / 2)}, 77);
    const int trials = n >= 256 ? 2 : 8;
    errors.push_back(std::abs(mixed_moment_mc(model, {1, 2, 1, 2}, trials).value - predicted));
  }
  CHECK(errors.back() < errors.front());
  CHECK(errors.back() < 0.01);
}

TEST_CASE("summarize") {
  const auto s = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(s.value == doctest::Approx(2.5));
  CHECK(s.stderr_ == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(summarize({7.0}).stderr_ == 0.0);
  CHECK_THROWS_AS(summarize({}), DomainError);
}

TEST_CASE("histogram and CDF distance") {
  const auto h = make_histogram({0.1, 0.2, 0.55, 0.99, 1.0, -1.0}, 0.0, 1.0, 2);
  CHECK(h.edges == std::vector<double>{0.0, 0.5, 1.0});
  // Out-of-range values land in the end bins.
  CHECK(h.counts == std::vector<std::size_t>{3, 3});
  CHECK_THROWS_AS(make_histogram({}, 1.0, 1.0, 2), DomainError);
  const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(sup_cdf_distance({0.25, 0.75}, uniform) == doctest::Approx(0.25));
}

TEST_CASE("sum experiment with a zero summand returns the first spectrum") {
  const int n = 12;
  Spectrum a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)] = 0.5 * i - 2.0;
  }
  const auto exp = sum_spectrum_experiment(a, Spectrum(static_cast<std::size_t>(n), 0.0), 3, 4);
  REQUIRE(exp.spectrum.eigenvalues.size() == 3 * static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < exp.spectrum.eigenvalues.size(); ++i) {
    CHECK(std::abs(exp.spectrum.eigenvalues[i] - a[i / 3]) < 1e-9);
  }
  CHECK(std::is_sorted(exp.spectrum.eigenvalues.begin(), exp.spectrum.eigenvalues.end()));
  REQUIRE(exp.moments.size() == 4);
  for (const auto& m : exp.moments) {
    CHECK(m.empirical.value == doctest::Approx(m.predicted).epsilon(1e-9));
  }
  CHECK_THROWS_AS(sum_spectrum_experiment(a, Spectrum(3, 0.0), 1, 1), DomainError);
}

TEST_CASE("sum of two symmetric +-1 spectra approaches the arcsine on [-2,2]") {
  const auto exp = sum_spectrum_experiment(pm1(100), pm1(100), 30, 12);
  REQUIRE(exp.moments.size() == 4);
  CHECK(exp.moments[1].predicted == doctest::Approx(2.0));
  CHECK(exp.moments[3].predicted == doctest::Approx(6.0));
  for (const auto& m : exp.moments) {
    CHECK(std::abs(m.empirical.value - m.predicted) < 3.0 * m.empirical.stderr_ + 1e-12);
  }
}

TEST_CASE("submatrix spectrum") {
  const int n = 20;
  Spectrum a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)] = std::cos(i * 1.0);
  }
  const auto full = submatrix_spectrum(a, Rational(1), 2, 3);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < full.spectrum.eigenvalues.size(); ++i) {
    CHECK(std::abs(full.spectrum.eigenvalues[i] - sorted[i / 2]) < 1e-9);
  }
  CHECK_THROWS_AS(submatrix_spectrum(a, Rational(1, 3), 2, 3), DomainError);
  CHECK_THROWS_AS(submatrix_spectrum(a, Rational(0), 2, 3), DomainError);

  const auto semi = spectrum_from_law(NamedLaw::semicircle(Rational(1)), 200);
  const auto half = submatrix_spectrum(semi, Rational(1, 2), 20, 5);
  CHECK(half.moments[1].predicted == doctest::Approx(0.5).epsilon(0.02));
  CHECK(std::abs(half.moments[1].empirical.value - half.moments[1].predicted) <
        3.0 * half.moments[1].empirical.stderr_ + 0.005);
}

TEST_CASE("entry cumulants") {
  const auto zero = entry_cumulant_mc(Spectrum(16, 0.0), 6, 10, 1);
  REQUIRE(zero.rows.size() == 6);
  for (const auto& row : zero.rows) {
    CHECK(row.cumulant.value == 0.0);
  }
  Spectrum shifted = pm1(30);
  for (auto& x : shifted) {
    x += 0.25;
  }
  const auto report = entry_cumulant_mc(shifted, 2, 2000, 2);
  CHECK(report.dimension == 30);
  CHECK(report.trials == 2000);
  const auto& c1 = report.rows[0];
  CHECK(std::abs(c1.over_n - 0.25) < 3.0 * c1.cumulant.stderr_ / 30.0 + 1e-12);
  const auto& c2 = report.rows[1];
  CHECK(std::abs(c2.cumulant.value * 31.0 / 900.0 - 1.0) < 3.0 * c2.cumulant.stderr_ * 31.0 / 900.0);
  CHECK(c2.over_n2 == doctest::Approx(c2.cumulant.value / 900.0));
  CHECK_THROWS_AS(entry_cumulant_mc(shifted, 7, 10, 1), DomainError);
  CHECK_THROWS_AS(entry_cumulant_mc(shifted, 2, 1, 1), DomainError);
}

TEST_CASE("spectrum_from_law") {
  const auto proj = spectrum_from_law(NamedLaw::parse("proj:1/2"), 10);
  CHECK(std::count(proj.begin(), proj.end(), 1.0) == 5);
  CHECK(std::count(proj.begin(), proj.end(), 0.0) == 5);
  const auto point = spectrum_from_law(NamedLaw::point(Rational(3)), 4);
  CHECK(point == Spectrum(4, 3.0));
  const auto semi = spectrum_moments(spectrum_from_law(NamedLaw::semicircle(Rational(1)), 2000), 4);
  CHECK(semi.moment(1) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::abs(semi.moment(2) - 1.0) < 0.01);
  CHECK(std::abs(semi.moment(4) - 2.0) < 0.02);
  const auto arc = spectrum_moments(spectrum_from_law(NamedLaw::arcsine02(), 2000), 2);
  CHECK(std::abs(arc.moment(2) - 1.5) < 0.01);
  CHECK_THROWS_AS(spectrum_from_law(NamedLaw::arcsine02(), 0), DomainError);
}

TEST_CASE("overflowing spectra raise NumericError") {
  const MatrixModel model(3, {{1e308, -1e308, 1e308}}, 1);
  CHECK_THROWS_AS(realize_model(model, 0), NumericError);
  CHECK_THROWS_AS(sum_spectrum_experiment({1e308, -1e308, 1e308}, {1, 2, 3}, 1, 1), NumericError);
}
