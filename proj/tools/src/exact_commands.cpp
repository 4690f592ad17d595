#include "commands.hpp"

#include <freeprob/cumulants.hpp>
#include <freeprob/error.hpp>
#include <freeprob/io.hpp>
#include <freeprob/nc_core.hpp>
#include <freeprob/transforms.hpp>
#include <freeprob/young.hpp>

#include <json.hpp>

#include <algorithm>
#include <memory>
#include <sstream>

namespace freeprob::cli {
namespace {

using nlohmann::json;

MomentSequence load_moments(const std::string& source, int order) {
  if (source.ends_with(".json")) {
    MomentSequence m = io::moments_from_json(io::read_file(source));
    if (m.order() < order) {
      throw DomainError(source + " holds " + std::to_string(m.order()) + " moments, " + std::to_string(order) +
                        " requested");
    }
    return m.truncated(order);
  }
  return moments_of(NamedLaw::parse(source), order);
}

void run_nc(const NcOptions& o, int precision) {
  (void)precision;
  const auto partitions = nc::enumerate_nc(o.n);
  const std::string catalan_n = freeprob::catalan(static_cast<unsigned>(o.n)).str();
  std::ostringstream out;
  if (o.format == "json") {
    json list = json::array();
    for (const auto& p : partitions) {
      if (o.perm) {
        list.push_back({{"partition", p.to_string()}, {"perm", nc::nc_to_permutation(p).to_string()}});
      } else {
        list.push_back(p.to_string());
      }
    }
    json doc = {{"n", o.n}, {"count", partitions.size()}, {"catalan", catalan_n}, {"partitions", list}};
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& p : partitions) {
      out << p.to_string();
      if (o.perm) {
        out << " perm=" << nc::nc_to_permutation(p).to_string();
      }
      out << '\n';
    }
    out << "count=" << partitions.size() << " catalan=" << catalan_n << '\n';
  }
  emit("", out.str());
}

void run_cumulants(const CumulantOptions& o, int precision) {
  if (o.moments_file.empty() == o.law.empty()) {
    throw DomainError("give exactly one of --moments or --law");
  }
  MomentSequence m;
  if (o.law.empty()) {
    m = io::moments_from_json(io::read_file(o.moments_file));
    m = m.truncated(std::min(m.order(), o.order));
  } else {
    m = moments_of(NamedLaw::parse(o.law), o.order);
  }
  const CumulantSequence r =
      o.kind == "free" ? free_cumulants_from_moments(m) : classical_cumulants_from_moments(m);
  std::ostringstream out;
  if (o.format == "json") {
    out << io::cumulants_to_json(r) << '\n';
  } else {
    for (int k = 1; k <= r.order(); ++k) {
      out << k << '\t' << exact_pair(r.cumulant(k), precision) << '\n';
    }
  }
  emit("", out.str());
}

void run_freeconv(const FreeconvOptions& o, int precision) {
  MomentSequence m = free_convolve(load_moments(o.a, o.order), load_moments(o.b, o.order), o.order);
  if (!o.compress.empty()) {
    m = free_compress(m, parse_rational(o.compress));
  }
  const CumulantSequence r = free_cumulants_from_moments(m);
  std::ostringstream out;
  if (o.format == "json") {
    json doc = {{"moments", json::parse(io::moments_to_json(m))}, {"cumulants", json::parse(io::cumulants_to_json(r))}};
    out << doc.dump(2) << '\n';
  } else {
    out << "k\tmoment\tdecimal\tfree_cumulant\tdecimal\n";
    for (int k = 1; k <= m.order(); ++k) {
      out << k << '\t' << exact_pair(m.moment(k), precision) << '\t' << exact_pair(r.cumulant(k), precision) << '\n';
    }
  }
  emit("", out.str());
}

young::YoungDiagram load_diagram(const DiagramOptions& o) {
  if (!o.json_file.empty()) {
    if (!o.rows.empty()) {
      throw DomainError("give only one of --rows or --json");
    }
    return io::diagram_from_json(io::read_file(o.json_file));
  }
  return young::YoungDiagram::parse(o.rows);
}

void run_transition(const DiagramOptions& o, int precision) {
  const auto mu = young::transition_measure(load_diagram(o));
  std::ostringstream out;
  out << "x\tweight\tdecimal\n";
  for (const auto& atom : mu.atoms()) {
    out << to_string(atom.x) << '\t' << exact_pair(atom.w, precision) << '\n';
  }
  emit("", out.str());
}

void run_diagram_cumulants(const DiagramOptions& o, int precision) {
  const auto r = young::diagram_free_cumulants(load_diagram(o), o.order);
  std::ostringstream out;
  for (int k = 1; k <= r.order(); ++k) {
    out << k << '\t' << exact_pair(r.cumulant(k), precision) << '\n';
  }
  emit("", out.str());
}

void run_char(const DiagramOptions& o, int precision) {
  const auto d = load_diagram(o);
  const auto ct = young::CycleType::parse(o.cycles);
  const auto est = young::character_estimate(d, ct);
  std::ostringstream out;
  out << "estimate\t" << exact_pair(est.value, precision) << '\n';
  out << "remainder_exponent\t" << decimal(est.order_bound_exponent, precision) << '\n';
  if (d.box_count() <= young::kCharacterCap && ct.support() <= d.box_count()) {
    out << "exact_conjugate\t" << exact_pair(young::mn_character(d.conjugate(), ct), precision) << '\n';
  }
  emit("", out.str());
}

void run_induce(const DiagramOptions& o, int precision) {
  const auto d1 = load_diagram(o);
  const auto d2 = young::YoungDiagram::parse(o.with);
  const auto predicted = young::induce_shape_prediction(d1, d2, o.order);
  std::ostringstream out;
  out << "k\tpredicted\tdecimal";
  const bool exact = d1.box_count() + d2.box_count() <= young::kInductionCap;
  MomentSequence mean;
  if (exact) {
    mean = young::induced_mean_moments(d1, d2, o.order);
    out << "\tinduced_mean\tdecimal";
  }
  out << '\n';
  for (int k = 1; k <= o.order; ++k) {
    out << k << '\t' << exact_pair(predicted.moment(k), precision);
    if (exact) {
      out << '\t' << exact_pair(mean.moment(k), precision);
    }
    out << '\n';
  }
  if (exact) {
    for (const auto& c : young::induced_decomposition_oracle(d1, d2)) {
      out << "component\t" << c.shape.to_string() << '\t' << c.multiplicity.str() << '\n';
    }
  }
  emit("", out.str());
}

} // namespace

void register_exact_commands(CLI::App& app, const int& precision) {
  const int* prec = &precision;

  auto nc_opts = std::make_shared<NcOptions>();
  auto* nc_cmd = app.add_subcommand("nc", "List the noncrossing partitions of {1..n}");
  nc_cmd->add_option("n", nc_opts->n, "Ground set size")->required()->check(CLI::Range(0, 64));
  nc_cmd->add_option("--format", nc_opts->format)->check(CLI::IsMember({"text", "json"}));
  nc_cmd->add_flag("--perm", nc_opts->perm, "Annotate each partition with its permutation");
  nc_cmd->callback([nc_opts, prec] { run_nc(*nc_opts, *prec); });

  auto cum = std::make_shared<CumulantOptions>();
  auto* cum_cmd = app.add_subcommand("cumulants", "Cumulants of a moment sequence or named law");
  cum_cmd->add_option("--moments", cum->moments_file, "JSON moment file");
  cum_cmd->add_option("--law", cum->law, "Named law, e.g. semicircle:1");
  cum_cmd->add_option("--kind", cum->kind)->check(CLI::IsMember({"free", "classical"}));
  cum_cmd->add_option("--order", cum->order)->check(CLI::Range(1, 40));
  cum_cmd->add_option("--format", cum->format)->check(CLI::IsMember({"text", "json"}));
  cum_cmd->callback([cum, prec] { run_cumulants(*cum, *prec); });

  auto fc = std::make_shared<FreeconvOptions>();
  auto* fc_cmd = app.add_subcommand("freeconv", "Free additive convolution of two laws");
  fc_cmd->add_option("a", fc->a, "Law name or JSON moment file")->required();
  fc_cmd->add_option("b", fc->b, "Law name or JSON moment file")->required();
  fc_cmd->add_option("--order", fc->order)->check(CLI::Range(1, 40));
  fc_cmd->add_option("--compress", fc->compress, "Free compression parameter t in (0,1]");
  fc_cmd->add_option("--format", fc->format)->check(CLI::IsMember({"text", "json"}));
  fc_cmd->callback([fc, prec] { run_freeconv(*fc, *prec); });

  auto dg = std::make_shared<DiagramOptions>();
  auto* dg_cmd = app.add_subcommand("diagram", "Young diagram analytics");
  dg_cmd->add_option("--rows", dg->rows, "Row lengths, e.g. 3,2,2,1");
  dg_cmd->add_option("--json", dg->json_file, "Diagram JSON file");
  dg_cmd->require_subcommand(1);

  auto* tr = dg_cmd->add_subcommand("transition", "Transition measure atoms");
  tr->callback([dg, prec] { run_transition(*dg, *prec); });

  auto* dc = dg_cmd->add_subcommand("cumulants", "Free cumulants of the transition measure");
  dc->add_option("--order", dg->order)->check(CLI::Range(1, 40));
  dc->callback([dg, prec] { run_diagram_cumulants(*dg, *prec); });

  auto* ch = dg_cmd->add_subcommand("char", "Normalized character estimate");
  ch->add_option("--cycles", dg->cycles, "Cycle type, e.g. 2:1,3:2")->required();
  ch->callback([dg, prec] { run_char(*dg, *prec); });

  auto* in = dg_cmd->add_subcommand("induce", "Induced representation shape");
  in->add_option("--with", dg->with, "Row lengths of the second diagram")->required();
  in->add_option("--order", dg->order)->check(CLI::Range(1, 32));
  in->callback([dg, prec] { run_induce(*dg, *prec); });
}

} // namespace freeprob::cli
