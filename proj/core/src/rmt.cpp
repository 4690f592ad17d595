#include "freeprob/rmt.hpp"

#include "freeprob/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <span>
#include <thread>

namespace freeprob::rmt {

namespace {

constexpr double kProbeTolerance = 1e-9;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) {
      s += v;
    }
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

// Runs body(trial) for every trial, possibly on several threads, and returns
// the results in trial order.
template <class Result>
std::vector<Result> run_trials(int trials, const std::function<Result(int)>& body) {
  std::vector<Result> results(static_cast<std::size_t>(trials));
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(trials)));
  if (workers <= 1) {
    for (int t = 0; t < trials; ++t) {
      results[static_cast<std::size_t>(t)] = body(t);
    }
    return results;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int t = w; t < trials; t += workers) {
            results[static_cast<std::size_t>(t)] = body(t);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return results;
}

ComplexMatrix gaussian_matrix(int n, std::mt19937_64& stream) {
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
  ComplexMatrix z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double re = normal(stream);
      const double im = normal(stream);
      z(i, j) = {re, im};
    }
  }
  return z;
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const Spectrum& d) {
  const Eigen::Map<const Eigen::VectorXd> diag(d.data(), static_cast<Eigen::Index>(d.size()));
  ComplexMatrix ud = u * diag.cast<std::complex<double>>().asDiagonal();
  return ud * u.adjoint();
}

void check_spectrum_probe(const ComplexMatrix& x, const Spectrum& d) {
  // Hermitian, trace and Frobenius norm agree with the prescribed spectrum.
  const double scale = std::max(1.0, std::accumulate(d.begin(), d.end(), 0.0, [](double s, double v) {
    return std::max(s, std::abs(v));
  }));
  const double herm = (x - x.adjoint()).cwiseAbs().maxCoeff();
  const double trace = std::accumulate(d.begin(), d.end(), 0.0);
  const double frob = std::inner_product(d.begin(), d.end(), d.begin(), 0.0);
  const double n = static_cast<double>(d.size());
  const bool ok = x.allFinite() && herm <= kProbeTolerance * scale &&
                  std::abs(x.trace().real() - trace) <= kProbeTolerance * scale * n &&
                  std::abs(x.squaredNorm() - frob) <= kProbeTolerance * scale * scale * n;
  if (!ok) {
    throw NumericError("realized matrix does not carry the prescribed spectrum");
  }
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(x, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success || !solver.eigenvalues().allFinite()) {
    throw NumericError("Hermitian eigensolver failed to converge");
  }
  return solver.eigenvalues();
}

std::vector<double> power_moments(const Eigen::VectorXd& eig, int order) {
  std::vector<double> m(static_cast<std::size_t>(order), 0.0);
  std::vector<double> pw(static_cast<std::size_t>(eig.size()), 1.0);
  for (int k = 1; k <= order; ++k) {
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
      pw[static_cast<std::size_t>(i)] *= eig[i];
    }
    m[static_cast<std::size_t>(k - 1)] = pairwise_sum(pw) / static_cast<double>(eig.size());
  }
  return m;
}

struct TrialSpectrum {
  std::vector<double> eigenvalues;
  std::vector<double> moments;
};

SpectrumExperiment assemble(const std::vector<TrialSpectrum>& per_trial, const RealMomentSequence& predicted,
                            int order) {
  SpectrumExperiment out;
  for (const auto& t : per_trial) {
    out.spectrum.eigenvalues.insert(out.spectrum.eigenvalues.end(), t.eigenvalues.begin(), t.eigenvalues.end());
  }
  std::sort(out.spectrum.eigenvalues.begin(), out.spectrum.eigenvalues.end());
  for (int k = 1; k <= order; ++k) {
    std::vector<double> samples;
    for (const auto& t : per_trial) {
      samples.push_back(t.moments[static_cast<std::size_t>(k - 1)]);
    }
    out.moments.push_back({k, summarize(samples), predicted.moment(k)});
  }
  return out;
}

double semicircle_cdf(double variance, double x) {
  const double r = 2.0 * std::sqrt(variance);
  if (x <= -r) {
    return 0.0;
  }
  if (x >= r) {
    return 1.0;
  }
  return 0.5 + x * std::sqrt(r * r - x * x) / (4.0 * std::numbers::pi * variance) +
         std::asin(x / r) / std::numbers::pi;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t generator) {
  return splitmix64(splitmix64(splitmix64(master) ^ trial) ^ (generator * 0xD1B54A32D192ED03ULL));
}

ComplexMatrix sample_haar_unitary(int n, std::mt19937_64& stream) {
  if (n < 1) {
    throw DomainError("sample_haar_unitary: N must be >= 1");
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(n, stream));
  ComplexMatrix q = qr.householderQ();
  const auto& packed = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const std::complex<double> r = packed(j, j);
    const double mod = std::abs(r);
    q.col(j) *= mod > 0.0 ? r / mod : std::complex<double>(1.0);
  }
  if (unitarity_defect(q) > kProbeTolerance) {
    throw NumericError("sampled matrix failed the unitarity probe");
  }
  return q;
}

ComplexMatrix sample_unitary_uncorrected(int n, std::mt19937_64& stream) {
  if (n < 1) {
    throw DomainError("sample_unitary_uncorrected: N must be >= 1");
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(n, stream));
  return qr.householderQ();
}

double unitarity_defect(const ComplexMatrix& u) {
  Eigen::VectorXcd v(u.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = {std::cos(0.7 * static_cast<double>(i) + 0.1), std::sin(1.3 * static_cast<double>(i))};
  }
  v.normalize();
  const Eigen::VectorXcd back = u.adjoint() * (u * v);
  return (back - v).cwiseAbs().maxCoeff();
}

MatrixModel::MatrixModel(int n_, std::vector<Spectrum> spectra_, std::uint64_t seed_)
    : n(n_), spectra(std::move(spectra_)), seed(seed_) {
  if (n < 1) {
    throw DomainError("MatrixModel: N must be >= 1");
  }
  if (spectra.empty()) {
    throw DomainError("MatrixModel: at least one spectrum required");
  }
  for (const auto& s : spectra) {
    if (static_cast<int>(s.size()) != n) {
      throw DomainError("MatrixModel: every spectrum needs exactly N entries");
    }
  }
}

std::vector<ComplexMatrix> realize_model(const MatrixModel& model, std::uint64_t trial) {
  std::vector<ComplexMatrix> out;
  out.reserve(model.spectra.size());
  for (std::size_t j = 0; j < model.spectra.size(); ++j) {
    std::mt19937_64 stream(derive_seed(model.seed, trial, j));
    const ComplexMatrix u = sample_haar_unitary(model.n, stream);
    ComplexMatrix x = conjugate_by(u, model.spectra[j]);
    check_spectrum_probe(x, model.spectra[j]);
    out.push_back(std::move(x));
  }
  return out;
}

MomentEstimate summarize(const std::vector<double>& samples) {
  if (samples.empty()) {
    throw DomainError("summarize: no samples");
  }
  const double count = static_cast<double>(samples.size());
  const double mean = pairwise_sum(samples) / count;
  if (samples.size() == 1) {
    return {mean, 0.0, 1};
  }
  std::vector<double> sq;
  sq.reserve(samples.size());
  for (double s : samples) {
    sq.push_back((s - mean) * (s - mean));
  }
  const double var = pairwise_sum(sq) / (count - 1.0);
  return {mean, std::sqrt(var / count), static_cast<int>(samples.size())};
}

MomentEstimate mixed_moment_mc(const MatrixModel& model, const Word& w, int trials) {
  if (trials < 1) {
    throw DomainError("mixed_moment_mc: trials must be >= 1");
  }
  for (int letter : w) {
    if (letter < 1 || letter > static_cast<int>(model.spectra.size())) {
      throw DomainError("mixed_moment_mc: word letter does not index a spectrum");
    }
  }
  auto samples = run_trials<double>(trials, [&](int trial) {
    const auto xs = realize_model(model, static_cast<std::uint64_t>(trial));
    if (w.empty()) {
      return 1.0;
    }
    ComplexMatrix prod = xs[static_cast<std::size_t>(w.front() - 1)];
    for (std::size_t i = 1; i < w.size(); ++i) {
      prod = prod * xs[static_cast<std::size_t>(w[i] - 1)];
    }
    return prod.trace().real() / static_cast<double>(model.n);
  });
  return summarize(samples);
}

Histogram make_histogram(const std::vector<double>& values, double lo, double hi, int bins) {
  if (bins < 1 || !(lo < hi)) {
    throw DomainError("make_histogram: need bins >= 1 and lo < hi");
  }
  Histogram h;
  const double width = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b) {
    h.edges.push_back(lo + width * b);
  }
  h.edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    int b = static_cast<int>(std::floor((v - lo) / width));
    b = std::clamp(b, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

double sup_cdf_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    worst = std::max({worst, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
  }
  return worst;
}

SpectrumExperiment sum_spectrum_experiment(const Spectrum& spec_a, const Spectrum& spec_b, int trials,
                                           std::uint64_t seed, int order) {
  if (spec_a.size() != spec_b.size() || spec_a.empty()) {
    throw DomainError("sum_spectrum_experiment: spectra must have the same nonzero length");
  }
  if (trials < 1 || order < 1) {
    throw DomainError("sum_spectrum_experiment: trials and order must be >= 1");
  }
  const MatrixModel model(static_cast<int>(spec_a.size()), {spec_a, spec_b}, seed);
  auto per_trial = run_trials<TrialSpectrum>(trials, [&](int trial) {
    const auto xs = realize_model(model, static_cast<std::uint64_t>(trial));
    const Eigen::VectorXd eig = hermitian_eigenvalues(xs[0] + xs[1]);
    return TrialSpectrum{std::vector<double>(eig.data(), eig.data() + eig.size()), power_moments(eig, order)};
  });
  const auto predicted = free_convolve(spectrum_moments(spec_a, order), spectrum_moments(spec_b, order), order);
  return assemble(per_trial, predicted, order);
}

SpectrumExperiment submatrix_spectrum(const Spectrum& spec, const Rational& t, int trials, std::uint64_t seed,
                                      int order) {
  const int n = static_cast<int>(spec.size());
  if (n < 1 || trials < 1 || order < 1) {
    throw DomainError("submatrix_spectrum: need a spectrum, trials >= 1 and order >= 1");
  }
  if (t <= 0 || t > 1) {
    throw DomainError("submatrix_spectrum: t must lie in (0, 1]");
  }
  const Rational corner_exact = t * n;
  if (denominator(corner_exact) != 1) {
    throw DomainError("submatrix_spectrum: tN is not an integer");
  }
  const int corner = numerator(corner_exact).convert_to<int>();
  const MatrixModel model(n, {spec}, seed);
  auto per_trial = run_trials<TrialSpectrum>(trials, [&](int trial) {
    const auto xs = realize_model(model, static_cast<std::uint64_t>(trial));
    const ComplexMatrix block = xs[0].topLeftCorner(corner, corner);
    const Eigen::VectorXd eig = hermitian_eigenvalues(block);
    return TrialSpectrum{std::vector<double>(eig.data(), eig.data() + eig.size()), power_moments(eig, order)};
  });
  const auto predicted = free_compress(spectrum_moments(spec, order), to_double(t));
  return assemble(per_trial, predicted, order);
}

EntryCumulantReport entry_cumulant_mc(const Spectrum& spec, int n_max, int trials, std::uint64_t seed,
                                      bool phase_corrected) {
  const int n = static_cast<int>(spec.size());
  if (n < 1) {
    throw DomainError("entry_cumulant_mc: empty spectrum");
  }
  if (n_max < 1 || n_max > 6) {
    throw DomainError("entry_cumulant_mc: n_max must lie in [1, 6]");
  }
  if (trials < 2) {
    throw DomainError("entry_cumulant_mc: need at least two trials");
  }
  // Y = N (U D U^*)_{11} = N sum_k |U_{1k}|^2 d_k.
  auto ys = run_trials<double>(trials, [&](int trial) {
    std::mt19937_64 stream(derive_seed(seed, static_cast<std::uint64_t>(trial), 0));
    const ComplexMatrix u = phase_corrected ? sample_haar_unitary(n, stream) : sample_unitary_uncorrected(n, stream);
    std::vector<double> terms(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      terms[static_cast<std::size_t>(k)] = std::norm(u(0, k)) * spec[static_cast<std::size_t>(k)];
    }
    return static_cast<double>(n) * pairwise_sum(terms);
  });

  // Power sums per jackknife group; cumulants from pooled sample moments.
  const int groups = std::min(trials, 20);
  std::vector<std::vector<double>> group_sums(static_cast<std::size_t>(groups),
                                              std::vector<double>(static_cast<std::size_t>(n_max), 0.0));
  std::vector<double> group_counts(static_cast<std::size_t>(groups), 0.0);
  for (int t = 0; t < trials; ++t) {
    auto& sums = group_sums[static_cast<std::size_t>(t % groups)];
    double p = 1.0;
    for (int k = 0; k < n_max; ++k) {
      p *= ys[static_cast<std::size_t>(t)];
      sums[static_cast<std::size_t>(k)] += p;
    }
    group_counts[static_cast<std::size_t>(t % groups)] += 1.0;
  }
  auto cumulants_excluding = [&](int skip) {
    std::vector<double> m(static_cast<std::size_t>(n_max), 0.0);
    double count = 0.0;
    for (int g = 0; g < groups; ++g) {
      if (g == skip) {
        continue;
      }
      for (int k = 0; k < n_max; ++k) {
        m[static_cast<std::size_t>(k)] += group_sums[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)];
      }
      count += group_counts[static_cast<std::size_t>(g)];
    }
    for (auto& v : m) {
      v /= count;
    }
    return classical_cumulants_from_moments(RealMomentSequence(std::move(m)));
  };

  const auto full = cumulants_excluding(-1);
  std::vector<RealCumulantSequence> leave_out;
  for (int g = 0; g < groups; ++g) {
    leave_out.push_back(cumulants_excluding(g));
  }
  EntryCumulantReport report{n, trials, {}};
  const double nd = static_cast<double>(n);
  for (int k = 1; k <= n_max; ++k) {
    double mean = 0.0;
    for (const auto& c : leave_out) {
      mean += c.cumulant(k);
    }
    mean /= groups;
    double ss = 0.0;
    for (const auto& c : leave_out) {
      ss += (c.cumulant(k) - mean) * (c.cumulant(k) - mean);
    }
    const double se = std::sqrt(ss * (groups - 1.0) / groups);
    const double value = full.cumulant(k);
    report.rows.push_back({k, {value, se, trials}, value / nd, value / (nd * nd)});
  }
  return report;
}

Spectrum spectrum_from_law(const NamedLaw& law, int n) {
  if (n < 1) {
    throw DomainError("spectrum_from_law: N must be >= 1");
  }
  Spectrum out;
  out.reserve(static_cast<std::size_t>(n));
  auto from_atoms = [&](const std::vector<Atom<Rational>>& atoms) {
    // Largest-remainder rounding of weight * N.
    std::vector<int> counts;
    std::vector<std::pair<Rational, std::size_t>> remainders;
    int assigned = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Rational exact = atoms[i].w * n;
      const BigInt floor_part = numerator(exact) / denominator(exact);
      counts.push_back(floor_part.convert_to<int>());
      assigned += counts.back();
      remainders.emplace_back(exact - Rational(floor_part), i);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int i = 0; assigned < n; ++i, ++assigned) {
      ++counts[remainders[static_cast<std::size_t>(i)].second];
    }
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      out.insert(out.end(), static_cast<std::size_t>(counts[i]), to_double(atoms[i].x));
    }
  };
  auto from_quantile = [&](const std::function<double(double)>& cdf, double lo, double hi) {
    for (int i = 0; i < n; ++i) {
      const double target = (i + 0.5) / n;
      double a = lo;
      double b = hi;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        (cdf(mid) < target ? a : b) = mid;
      }
      out.push_back(0.5 * (a + b));
    }
  };
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, NamedLaw::Semicircle>) {
          const double var = to_double(v.variance);
          const double r = 2.0 * std::sqrt(var);
          from_quantile([var](double x) { return semicircle_cdf(var, x); }, -r, r);
        } else if constexpr (std::is_same_v<V, NamedLaw::Arcsine02>) {
          from_quantile(arcsine02_cdf, 0.0, 2.0);
        } else if constexpr (std::is_same_v<V, NamedLaw::Bernoulli>) {
          from_atoms({{v.a, 1 - v.p}, {v.b, v.p}});
        } else if constexpr (std::is_same_v<V, NamedLaw::Point>) {
          from_atoms({{v.a, Rational(1)}});
        } else {
          from_atoms(v.measure.atoms());
        }
      },
      law.value());
  std::sort(out.begin(), out.end());
  return out;
}

RealMomentSequence spectrum_moments(const Spectrum& spec, int order) {
  if (spec.empty() || order < 1) {
    throw DomainError("spectrum_moments: need a nonempty spectrum and order >= 1");
  }
  const Eigen::Map<const Eigen::VectorXd> v(spec.data(), static_cast<Eigen::Index>(spec.size()));
  return RealMomentSequence(power_moments(v, order));
}

} // namespace freeprob::rmt
