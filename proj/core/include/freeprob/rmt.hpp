#pragma once

// Seeded Monte Carlo over Haar-rotated matrix models X_j = U_j D_j U_j^*.
//
// Every (trial, generator) pair draws from its own stream, derived from the
// master seed by a counter-based mix, so results do not depend on how trials
// are scheduled across threads. Reductions use pairwise summation in trial
// order.

#include "freeprob/cumulants.hpp"
#include "freeprob/transforms.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace freeprob::rmt {

using ComplexMatrix = Eigen::MatrixXcd;
using Spectrum = std::vector<double>;

/// Counter-based derivation of an independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t generator);

/// Haar-distributed N x N unitary: QR of a standard complex Gaussian matrix
/// with the diagonal of R rotated to the positive reals.
ComplexMatrix sample_haar_unitary(int n, std::mt19937_64& stream);

/// Same orthonormalization without the phase correction. Not Haar; kept as a
/// negative control for the entry-variance test.
ComplexMatrix sample_unitary_uncorrected(int n, std::mt19937_64& stream);

/// O(N^2) probe: max deviation of |U^* U v - v| for a fixed test vector.
double unitarity_defect(const ComplexMatrix& u);

struct MatrixModel {
  MatrixModel(int n, std::vector<Spectrum> spectra, std::uint64_t seed);

  int n;
  std::vector<Spectrum> spectra;
  std::uint64_t seed;
};

/// X_j = U_j D_j U_j^* for every generator j, from the (trial, j) streams.
/// Throws NumericError if a realized matrix fails the unitarity or spectrum
/// probes (tolerance 1e-9).
std::vector<ComplexMatrix> realize_model(const MatrixModel& model, std::uint64_t trial);

struct MomentEstimate {
  double value = 0.0;
  /// Standard error of the mean; 0 for a single trial.
  double stderr_ = 0.0;
  int trials = 0;
};

/// Mean and standard error of per-trial values.
MomentEstimate summarize(const std::vector<double>& samples);

/// (1/N) Re Tr(X_{w1} ... X_{wk}) averaged over trials.
MomentEstimate mixed_moment_mc(const MatrixModel& model, const Word& w, int trials);

struct Histogram {
  std::vector<double> edges;  // bins + 1 entries
  std::vector<std::size_t> counts;
};

Histogram make_histogram(const std::vector<double>& values, double lo, double hi, int bins);

struct EmpiricalSpectrum {
  std::vector<double> eigenvalues;  // ascending
  std::optional<Histogram> histogram;
};

/// Sup distance between the empirical CDF of sorted samples and a CDF.
double sup_cdf_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf);

struct MomentComparison {
  int k = 0;
  MomentEstimate empirical;
  double predicted = 0.0;
};

struct SpectrumExperiment {
  EmpiricalSpectrum spectrum;
  std::vector<MomentComparison> moments;
};

/// Eigenvalues of U_A D_A U_A^* + U_B D_B U_B^* pooled over trials, with
/// per-trial moments against the free convolution of the two spectra.
SpectrumExperiment sum_spectrum_experiment(const Spectrum& spec_a, const Spectrum& spec_b, int trials,
                                           std::uint64_t seed, int order = 4);

/// Eigenvalues of the leading tN x tN corner of U D U^*, with per-trial
/// moments against free_compress(spectrum moments, t).
SpectrumExperiment submatrix_spectrum(const Spectrum& spec, const Rational& t, int trials, std::uint64_t seed,
                                      int order = 4);

struct EntryCumulantRow {
  int n = 0;
  MomentEstimate cumulant;  // C_n(Y), jackknife standard error
  double over_n = 0.0;      // C_n / N
  double over_n2 = 0.0;     // C_n / N^2
};

struct EntryCumulantReport {
  int dimension = 0;
  int trials = 0;
  std::vector<EntryCumulantRow> rows;
};

/// Sample classical cumulants of Y = N (U D U^*)_{11}.
EntryCumulantReport entry_cumulant_mc(const Spectrum& spec, int n_max, int trials, std::uint64_t seed,
                                      bool phase_corrected = true);

/// N deterministic atoms approximating a named law: exact counts for
/// two-point and point laws (rounded), midpoint quantiles otherwise.
Spectrum spectrum_from_law(const NamedLaw& law, int n);

RealMomentSequence spectrum_moments(const Spectrum& spec, int order);

} // namespace freeprob::rmt
