#pragma once

// Text and JSON formats shared by the CLI and test fixtures.
//
//   moments      ["0","1","0","2"]  or {"moments":[...]}
//   cumulants    {"kind":"free","values":["1/2","1/4","0"]}
//   measure      {"atoms":[{"x":"-1","w":"1/2"},{"x":1,"w":0.5}]}
//   diagram      {"rows":[3,2,2,1]}  or {"minima":[...],"maxima":[...]}
//   cycle type   {"2":1,"3":2}
//   histogram    CSV: bin_left,bin_right,count[,predicted_density]
//
// Rationals are written as "p/q" strings; on input, JSON numbers and decimal
// strings are read as exact decimal fractions.

#include "freeprob/cumulants.hpp"
#include "freeprob/rmt.hpp"
#include "freeprob/transforms.hpp"
#include "freeprob/young.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace freeprob::io {

std::string moments_to_json(const MomentSequence& m);
MomentSequence moments_from_json(std::string_view text);

std::string cumulants_to_json(const CumulantSequence& r);
CumulantSequence cumulants_from_json(std::string_view text);

std::string measure_to_json(const DiscreteMeasure& measure);
DiscreteMeasure measure_from_json(std::string_view text);

std::string diagram_to_json(const young::YoungDiagram& d);
young::YoungDiagram diagram_from_json(std::string_view text);

std::string cycle_type_to_json(const young::CycleType& ct);
young::CycleType cycle_type_from_json(std::string_view text);

/// Optional predicted column holds one value per bin.
std::string histogram_to_csv(const rmt::Histogram& h, const std::vector<double>* predicted_density = nullptr);

using SpectrumSource = std::variant<NamedLaw, rmt::Spectrum>;

/// {N, trials, seed, spectra: [law string | explicit list], word, t, bins}.
/// Every field is optional; command-line flags fill or override them.
struct ExperimentConfig {
  std::optional<int> n;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::vector<SpectrumSource> spectra;
  std::optional<Word> word;
  std::optional<Rational> t;
  std::optional<int> bins;
};

ExperimentConfig experiment_config_from_json(std::string_view text);

/// Reads a whole file; throws DomainError if it cannot be opened.
std::string read_file(const std::string& path);

} // namespace freeprob::io
