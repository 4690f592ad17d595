#include "freeprob/io.hpp"

#include "freeprob/error.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace freeprob::io {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_from(const json& v) {
  if (v.is_string()) {
    return parse_rational(v.get<std::string>());
  }
  if (v.is_number_integer()) {
    return Rational(v.get<long long>());
  }
  if (v.is_number_float()) {
    return parse_rational(v.dump());
  }
  throw DomainError("expected a rational (string or number), got " + v.dump());
}

std::vector<Rational> rationals_from(const json& arr) {
  if (!arr.is_array()) {
    throw DomainError("expected a JSON array of rationals");
  }
  std::vector<Rational> out;
  for (const auto& v : arr) {
    out.push_back(rational_from(v));
  }
  return out;
}

json rationals_to(const std::vector<Rational>& values) {
  json arr = json::array();
  for (const auto& v : values) {
    arr.push_back(to_string(v));
  }
  return arr;
}

std::vector<int> ints_from(const json& arr) {
  if (!arr.is_array()) {
    throw DomainError("expected a JSON array of integers");
  }
  std::vector<int> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) {
      throw DomainError("expected an integer, got " + v.dump());
    }
    out.push_back(v.get<int>());
  }
  return out;
}

} // namespace

std::string moments_to_json(const MomentSequence& m) { return rationals_to(m.values()).dump(); }

MomentSequence moments_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (j.is_object()) {
    if (!j.contains("moments")) {
      throw DomainError("moment file object needs a \"moments\" array");
    }
    return MomentSequence(rationals_from(j.at("moments")));
  }
  return MomentSequence(rationals_from(j));
}

std::string cumulants_to_json(const CumulantSequence& r) {
  json j;
  j["kind"] = r.kind() == CumulantKind::free ? "free" : "classical";
  j["values"] = rationals_to(r.values());
  return j.dump();
}

CumulantSequence cumulants_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("kind") || !j.contains("values")) {
    throw DomainError("cumulant JSON needs \"kind\" and \"values\"");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind != "free" && kind != "classical") {
    throw DomainError("cumulant kind must be free or classical");
  }
  return CumulantSequence(kind == "free" ? CumulantKind::free : CumulantKind::classical,
                          rationals_from(j.at("values")));
}

std::string measure_to_json(const DiscreteMeasure& measure) {
  json atoms = json::array();
  for (const auto& a : measure.atoms()) {
    atoms.push_back({{"x", to_string(a.x)}, {"w", to_string(a.w)}});
  }
  return json{{"atoms", atoms}}.dump();
}

DiscreteMeasure measure_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array()) {
    throw DomainError("measure JSON needs an \"atoms\" array");
  }
  std::vector<Atom<Rational>> atoms;
  for (const auto& a : j.at("atoms")) {
    if (!a.contains("x") || !a.contains("w")) {
      throw DomainError("every atom needs \"x\" and \"w\"");
    }
    atoms.push_back({rational_from(a.at("x")), rational_from(a.at("w"))});
  }
  return DiscreteMeasure::from_unsorted(std::move(atoms));
}

std::string diagram_to_json(const young::YoungDiagram& d) { return json{{"rows", d.rows()}}.dump(); }

young::YoungDiagram diagram_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) {
    throw DomainError("diagram JSON must be an object");
  }
  const bool has_rows = j.contains("rows");
  const bool has_coords = j.contains("minima") || j.contains("maxima");
  if (has_rows == has_coords) {
    throw DomainError("diagram JSON needs exactly one of \"rows\" or \"minima\"/\"maxima\"");
  }
  if (has_rows) {
    return young::YoungDiagram(ints_from(j.at("rows")));
  }
  if (!j.contains("minima") || !j.contains("maxima")) {
    throw DomainError("diagram JSON needs both \"minima\" and \"maxima\"");
  }
  return young::interlacing_to_diagram(young::InterlacingCoords(ints_from(j.at("minima")), ints_from(j.at("maxima"))));
}

std::string cycle_type_to_json(const young::CycleType& ct) {
  json j = json::object();
  for (auto [length, count] : ct.counts()) {
    j[std::to_string(length)] = count;
  }
  return j.dump();
}

young::CycleType cycle_type_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) {
    throw DomainError("cycle type JSON must map cycle length to count");
  }
  std::map<int, int> counts;
  for (const auto& [key, value] : j.items()) {
    int length = 0;
    try {
      std::size_t used = 0;
      length = std::stoi(key, &used);
      if (used != key.size()) {
        throw DomainError("bad cycle length");
      }
    } catch (const std::exception&) {
      throw DomainError("cycle length keys must be integers, got " + key);
    }
    if (!value.is_number_integer()) {
      throw DomainError("cycle counts must be integers");
    }
    counts[length] += value.get<int>();
  }
  return young::CycleType(std::move(counts));
}

std::string histogram_to_csv(const rmt::Histogram& h, const std::vector<double>* predicted_density) {
  if (predicted_density != nullptr && predicted_density->size() != h.counts.size()) {
    throw DomainError("histogram_to_csv: predicted column length differs from bin count");
  }
  std::ostringstream out;
  out << std::setprecision(10);
  out << "bin_left,bin_right,count";
  if (predicted_density != nullptr) {
    out << ",predicted_density";
  }
  out << '\n';
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    out << h.edges[b] << ',' << h.edges[b + 1] << ',' << h.counts[b];
    if (predicted_density != nullptr) {
      out << ',' << (*predicted_density)[b];
    }
    out << '\n';
  }
  return out.str();
}

ExperimentConfig experiment_config_from_json(std::string_view text) try {
  const json j = parse_json(text);
  if (!j.is_object()) {
    throw DomainError("experiment config must be a JSON object");
  }
  ExperimentConfig cfg;
  if (j.contains("N")) {
    cfg.n = j.at("N").get<int>();
  }
  if (j.contains("trials")) {
    cfg.trials = j.at("trials").get<int>();
  }
  if (j.contains("seed")) {
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("spectra")) {
    for (const auto& s : j.at("spectra")) {
      if (s.is_string()) {
        cfg.spectra.emplace_back(NamedLaw::parse(s.get<std::string>()));
      } else if (s.is_array()) {
        rmt::Spectrum spec;
        for (const auto& v : s) {
          spec.push_back(v.get<double>());
        }
        cfg.spectra.emplace_back(std::move(spec));
      } else {
        throw DomainError("spectra entries must be a law string or a list of eigenvalues");
      }
    }
  }
  if (j.contains("word")) {
    cfg.word = ints_from(j.at("word"));
  }
  if (j.contains("t")) {
    cfg.t = rational_from(j.at("t"));
  }
  if (j.contains("bins")) {
    cfg.bins = j.at("bins").get<int>();
  }
  return cfg;
} catch (const json::exception& e) {
  throw DomainError(std::string("experiment config: ") + e.what());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace freeprob::io
