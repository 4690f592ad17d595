#include "commands.hpp"

#include <freeprob/error.hpp>
#include <freeprob/io.hpp>
#include <freeprob/rmt.hpp>
#include <freeprob/transforms.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>

namespace freeprob::cli {
namespace {

constexpr int kDefaultN = 200;
constexpr int kDefaultBins = 40;

struct Resolved {
  int n = 0;
  int trials = 1;
  int bins = kDefaultBins;
  std::uint64_t seed = 0;
  std::vector<io::SpectrumSource> sources;
  Word word;
  Rational t{1};
};

Resolved resolve(const RmtOptions& o, int default_trials) {
  io::ExperimentConfig cfg;
  if (!o.config.empty()) {
    cfg = io::experiment_config_from_json(io::read_file(o.config));
  }
  Resolved r;
  if (o.seed) {
    r.seed = *o.seed;
  } else if (cfg.seed) {
    r.seed = *cfg.seed;
  } else {
    throw DomainError("--seed is required (flag or config)");
  }
  r.trials = o.trials.value_or(cfg.trials.value_or(default_trials));
  r.bins = o.bins.value_or(cfg.bins.value_or(kDefaultBins));

  for (const std::string* law : {&o.law_a, &o.law_b, &o.law}) {
    if (!law->empty()) {
      r.sources.emplace_back(NamedLaw::parse(*law));
    }
  }
  if (r.sources.empty()) {
    r.sources = cfg.spectra;
  }

  std::optional<int> n = o.n ? o.n : cfg.n;
  for (const auto& s : r.sources) {
    if (const auto* explicit_spec = std::get_if<rmt::Spectrum>(&s)) {
      const int len = static_cast<int>(explicit_spec->size());
      if (n && *n != len) {
        throw DomainError("explicit spectrum has " + std::to_string(len) + " eigenvalues but N = " +
                          std::to_string(*n));
      }
      n = len;
    }
  }
  r.n = n.value_or(kDefaultN);
  if (r.n < 1 || r.trials < 1 || r.bins < 1) {
    throw DomainError("N, trials and bins must be >= 1");
  }

  if (cfg.word) {
    r.word = *cfg.word;
  }
  if (!o.t.empty()) {
    r.t = parse_rational(o.t);
  } else if (cfg.t) {
    r.t = *cfg.t;
  }
  return r;
}

Word parse_word(const std::string& text) {
  Word w;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    w.push_back(parse_rational(item).convert_to<int>());
  }
  return w;
}

rmt::Spectrum realize(const io::SpectrumSource& s, int n) {
  if (const auto* law = std::get_if<NamedLaw>(&s)) {
    return rmt::spectrum_from_law(*law, n);
  }
  return std::get<rmt::Spectrum>(s);
}

MomentSequence exact_moments(const io::SpectrumSource& s, int order) {
  if (const auto* law = std::get_if<NamedLaw>(&s)) {
    return moments_of(*law, order);
  }
  std::vector<Rational> values;
  const auto real = rmt::spectrum_moments(std::get<rmt::Spectrum>(s), order);
  for (const double v : real.values()) {
    values.emplace_back(v);
  }
  return MomentSequence(std::move(values));
}

const std::vector<io::SpectrumSource>& need_sources(const Resolved& r, std::size_t count, const char* what) {
  if (r.sources.size() < count) {
    throw DomainError(std::string(what) + " needs " + std::to_string(count) + " spectra");
  }
  return r.sources;
}

double semicircle_cdf(double variance, double x) {
  const double radius = 2.0 * std::sqrt(variance);
  if (x <= -radius) {
    return 0.0;
  }
  if (x >= radius) {
    return 1.0;
  }
  return 0.5 + x * std::sqrt(radius * radius - x * x) / (4.0 * std::numbers::pi * variance) +
         std::asin(x / radius) / std::numbers::pi;
}

/// Limit CDF of the free sum when it has a closed form.
std::optional<std::function<double(double)>> sum_limit_cdf(const io::SpectrumSource& a,
                                                           const io::SpectrumSource& b) {
  const auto* la = std::get_if<NamedLaw>(&a);
  const auto* lb = std::get_if<NamedLaw>(&b);
  if (la == nullptr || lb == nullptr) {
    return std::nullopt;
  }
  double shift = 0.0;
  const NamedLaw* x = la;
  const NamedLaw* y = lb;
  if (const auto* p = std::get_if<NamedLaw::Point>(&y->value())) {
    shift = to_double(p->a);
    y = nullptr;
  } else if (const auto* p = std::get_if<NamedLaw::Point>(&x->value())) {
    shift = to_double(p->a);
    x = y;
    y = nullptr;
  }
  if (y == nullptr) {
    if (const auto* s = std::get_if<NamedLaw::Semicircle>(&x->value())) {
      const double v = to_double(s->variance);
      return [v, shift](double t) { return semicircle_cdf(v, t - shift); };
    }
    return std::nullopt;
  }
  const auto* sa = std::get_if<NamedLaw::Semicircle>(&x->value());
  const auto* sb = std::get_if<NamedLaw::Semicircle>(&y->value());
  if (sa != nullptr && sb != nullptr) {
    const double v = to_double(Rational(sa->variance + sb->variance));
    return [v](double t) { return semicircle_cdf(v, t); };
  }
  const auto* ba = std::get_if<NamedLaw::Bernoulli>(&x->value());
  const auto* bb = std::get_if<NamedLaw::Bernoulli>(&y->value());
  if (ba != nullptr && bb != nullptr && ba->p == Rational(1, 2) && bb->p == Rational(1, 2) && ba->a == bb->a &&
      ba->b == bb->b) {
    // X = a + (b - a) P with P a projection of rank N/2.
    const double lo = to_double(Rational(2 * ba->a));
    const double scale = to_double(Rational(ba->b - ba->a));
    return [lo, scale](double t) {
      const double u = (t - lo) / scale;
      return scale > 0 ? arcsine02_cdf(u) : 1.0 - arcsine02_cdf(u);
    };
  }
  return std::nullopt;
}

rmt::Histogram histogram_of(const std::vector<double>& sorted, int bins) {
  double lo = sorted.front();
  double hi = sorted.back();
  if (hi - lo < 1e-9) {
    lo -= 0.5;
    hi += 0.5;
  }
  return rmt::make_histogram(sorted, lo, hi, bins);
}

std::vector<double> bin_density(const rmt::Histogram& h, const std::function<double(double)>& cdf) {
  std::vector<double> out;
  for (std::size_t b = 0; b + 1 < h.edges.size(); ++b) {
    out.push_back((cdf(h.edges[b + 1]) - cdf(h.edges[b])) / (h.edges[b + 1] - h.edges[b]));
  }
  return out;
}

std::string moment_table(const rmt::SpectrumExperiment& e, const Resolved& r, int precision) {
  std::ostringstream out;
  out << "# N=" << r.n << " trials=" << r.trials << " seed=" << r.seed << '\n';
  out << "k,empirical,stderr,predicted\n";
  for (const auto& row : e.moments) {
    out << row.k << ',' << decimal(row.empirical.value, precision) << ',' << decimal(row.empirical.stderr_, precision)
        << ',' << decimal(row.predicted, precision) << '\n';
  }
  return out.str();
}

void write_spectrum(const rmt::SpectrumExperiment& e, const Resolved& r, const RmtOptions& o,
                    const std::optional<std::function<double(double)>>& cdf, int precision) {
  const auto h = histogram_of(e.spectrum.eigenvalues, r.bins);
  std::string csv;
  if (cdf) {
    const auto predicted = bin_density(h, *cdf);
    csv = io::histogram_to_csv(h, &predicted);
  } else {
    csv = io::histogram_to_csv(h);
  }
  emit(o.out, csv);
  if (!o.out.empty()) {
    emit("", moment_table(e, r, precision));
  }
}

void run_sum(const RmtOptions& o, int precision) {
  const Resolved r = resolve(o, 1);
  const auto& s = need_sources(r, 2, "sum");
  const auto e = rmt::sum_spectrum_experiment(realize(s[0], r.n), realize(s[1], r.n), r.trials, r.seed, o.order);
  write_spectrum(e, r, o, sum_limit_cdf(s[0], s[1]), precision);
}

void run_submatrix(const RmtOptions& o, int precision) {
  const Resolved r = resolve(o, 1);
  const auto& s = need_sources(r, 1, "submatrix");
  const auto e = rmt::submatrix_spectrum(realize(s[0], r.n), r.t, r.trials, r.seed, o.order);
  write_spectrum(e, r, o, std::nullopt, precision);
}

void run_word(const RmtOptions& o, int precision) {
  Resolved r = resolve(o, 20);
  if (!o.word.empty()) {
    r.word = parse_word(o.word);
  }
  if (r.word.empty()) {
    throw DomainError("word: --word is required (flag or config)");
  }
  const int arity = *std::max_element(r.word.begin(), r.word.end());
  const auto& s = need_sources(r, static_cast<std::size_t>(arity), "word");
  std::vector<rmt::Spectrum> spectra;
  std::vector<MomentSequence> marginals;
  for (int j = 0; j < arity; ++j) {
    spectra.push_back(realize(s[static_cast<std::size_t>(j)], r.n));
    marginals.push_back(exact_moments(s[static_cast<std::size_t>(j)], static_cast<int>(r.word.size())));
  }
  const auto est = rmt::mixed_moment_mc(rmt::MatrixModel(r.n, spectra, r.seed), r.word, r.trials);
  const Rational predicted = free_mixed_moment(FreeFamilySpec(std::move(marginals)), r.word);
  std::ostringstream out;
  out << "N\t" << r.n << "\ntrials\t" << r.trials << "\nseed\t" << r.seed << '\n';
  out << "estimate\t" << decimal(est.value, precision) << '\n';
  out << "stderr\t" << decimal(est.stderr_, precision) << '\n';
  out << "predicted\t" << exact_pair(predicted, precision) << '\n';
  emit(o.out, out.str());
}

void run_entrycum(const RmtOptions& o, int precision) {
  const Resolved r = resolve(o, 2000);
  const auto& s = need_sources(r, 1, "entrycum");
  const auto report = rmt::entry_cumulant_mc(realize(s[0], r.n), o.n_max, r.trials, r.seed);
  std::ostringstream out;
  out << "# N=" << report.dimension << " trials=" << report.trials << " seed=" << r.seed << '\n';
  out << "n,cumulant,stderr,over_N,over_N2\n";
  for (const auto& row : report.rows) {
    out << row.n << ',' << decimal(row.cumulant.value, precision) << ',' << decimal(row.cumulant.stderr_, precision)
        << ',' << decimal(row.over_n, precision) << ',' << decimal(row.over_n2, precision) << '\n';
  }
  emit(o.out, out.str());
}

void add_common(CLI::App* cmd, RmtOptions& o) {
  cmd->add_option("--seed", o.seed, "Master seed (required here or in --config)");
  cmd->add_option("--config", o.config, "JSON experiment config; flags override it");
  cmd->add_option("-N,--dim", o.n, "Matrix dimension");
  cmd->add_option("--trials", o.trials);
  cmd->add_option("--out", o.out, "Output file (default stdout)");
}

} // namespace

void register_rmt_commands(CLI::App& app, const int& precision) {
  const int* prec = &precision;
  auto* rmt_cmd = app.add_subcommand("rmt", "Seeded random-matrix experiments");
  rmt_cmd->require_subcommand(1);

  auto sum = std::make_shared<RmtOptions>();
  auto* sum_cmd = rmt_cmd->add_subcommand("sum", "Spectrum of U_A D_A U_A* + U_B D_B U_B*");
  add_common(sum_cmd, *sum);
  sum_cmd->add_option("--law-a", sum->law_a);
  sum_cmd->add_option("--law-b", sum->law_b);
  sum_cmd->add_option("--bins", sum->bins);
  sum_cmd->add_option("--order", sum->order)->check(CLI::Range(1, 16));
  sum_cmd->callback([sum, prec] { run_sum(*sum, *prec); });

  auto word = std::make_shared<RmtOptions>();
  auto* word_cmd = rmt_cmd->add_subcommand("word", "Mixed moment of independently rotated matrices");
  add_common(word_cmd, *word);
  word_cmd->add_option("--law-a", word->law_a);
  word_cmd->add_option("--law-b", word->law_b);
  word_cmd->add_option("--word", word->word, "Letters, e.g. 1,2,1,2");
  word_cmd->callback([word, prec] { run_word(*word, *prec); });

  auto sub = std::make_shared<RmtOptions>();
  auto* sub_cmd = rmt_cmd->add_subcommand("submatrix", "Spectrum of the leading tN x tN corner");
  add_common(sub_cmd, *sub);
  sub_cmd->add_option("--law", sub->law);
  sub_cmd->add_option("--t", sub->t, "Corner fraction in (0,1]");
  sub_cmd->add_option("--bins", sub->bins);
  sub_cmd->add_option("--order", sub->order)->check(CLI::Range(1, 16));
  sub_cmd->callback([sub, prec] { run_submatrix(*sub, *prec); });

  auto ec = std::make_shared<RmtOptions>();
  auto* ec_cmd = rmt_cmd->add_subcommand("entrycum", "Classical cumulants of N (U D U*)_11");
  add_common(ec_cmd, *ec);
  ec_cmd->add_option("--law", ec->law);
  ec_cmd->add_option("--nmax", ec->n_max)->check(CLI::Range(1, 8));
  ec_cmd->callback([ec, prec] { run_entrycum(*ec, *prec); });
}

} // namespace freeprob::cli
