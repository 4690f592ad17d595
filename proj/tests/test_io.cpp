#include "freeprob/error.hpp"
#include "freeprob/io.hpp"

#include <doctest.h>

using namespace freeprob;
using namespace freeprob::io;

namespace {

Rational Q(long p, long q = 1) { return Rational(p, q); }

} // namespace

TEST_CASE("moments JSON") {
  const MomentSequence m({Q(0), Q(3, 2), Q(-7)});
  CHECK(moments_to_json(m) == R"(["0","3/2","-7"])");
  CHECK(moments_from_json(moments_to_json(m)) == m);
  CHECK(moments_from_json(R"({"moments":[0.5, "1/3", 2]})") == MomentSequence({Q(1, 2), Q(1, 3), Q(2)}));
  CHECK_THROWS_AS(moments_from_json(R"({"m":[1]})"), DomainError);
  CHECK_THROWS_AS(moments_from_json(R"([true])"), DomainError);
  CHECK_THROWS_AS(moments_from_json("[1,"), DomainError);
}

TEST_CASE("cumulants JSON") {
  const CumulantSequence r(CumulantKind::classical, {Q(1, 2), Q(1, 4)});
  CHECK(cumulants_from_json(cumulants_to_json(r)) == r);
  CHECK(cumulants_from_json(R"({"kind":"free","values":["1/2"]})").kind() == CumulantKind::free);
  CHECK_THROWS_AS(cumulants_from_json(R"({"kind":"boolean","values":[]})"), DomainError);
  CHECK_THROWS_AS(cumulants_from_json(R"({"values":[]})"), DomainError);
}

TEST_CASE("measure JSON") {
  const DiscreteMeasure mu({{Q(-1), Q(1, 3)}, {Q(5, 2), Q(2, 3)}});
  CHECK(measure_from_json(measure_to_json(mu)) == mu);
  CHECK(measure_from_json(R"({"atoms":[{"x":1,"w":0.25},{"x":"-1","w":"3/4"}]})") ==
        DiscreteMeasure({{Q(-1), Q(3, 4)}, {Q(1), Q(1, 4)}}));
  CHECK_THROWS_AS(measure_from_json(R"({"atoms":[{"x":1,"w":0.5}]})"), DomainError);
  CHECK_THROWS_AS(measure_from_json(R"({"atoms":[{"x":1}]})"), DomainError);
}

TEST_CASE("diagram JSON") {
  const auto d = young::YoungDiagram({3, 2, 2, 1});
  CHECK(diagram_to_json(d) == R"({"rows":[3,2,2,1]})");
  CHECK(diagram_from_json(diagram_to_json(d)) == d);
  CHECK(diagram_from_json(R"({"minima":[-3,-1,2,4],"maxima":[-2,1,3]})") == d);
  CHECK_THROWS_AS(diagram_from_json(R"({"rows":[1],"minima":[0],"maxima":[]})"), DomainError);
  CHECK_THROWS_AS(diagram_from_json(R"({"minima":[0]})"), DomainError);
  CHECK_THROWS_AS(diagram_from_json(R"({"rows":[1.5]})"), DomainError);
}

TEST_CASE("cycle type JSON") {
  const auto ct = young::CycleType::parse("2:1,3:2");
  CHECK(cycle_type_to_json(ct) == R"({"2":1,"3":2})");
  CHECK(cycle_type_from_json(cycle_type_to_json(ct)) == ct);
  CHECK_THROWS_AS(cycle_type_from_json(R"({"x":1})"), DomainError);
  CHECK_THROWS_AS(cycle_type_from_json(R"({"2":"one"})"), DomainError);
}

TEST_CASE("histogram CSV") {
  rmt::Histogram h{{0.0, 0.5, 1.0}, {3, 1}};
  CHECK(histogram_to_csv(h) == "bin_left,bin_right,count\n0,0.5,3\n0.5,1,1\n");
  const std::vector<double> density{0.25, 1.5};
  CHECK(histogram_to_csv(h, &density) ==
        "bin_left,bin_right,count,predicted_density\n0,0.5,3,0.25\n0.5,1,1,1.5\n");
  const std::vector<double> wrong{1.0};
  CHECK_THROWS_AS(histogram_to_csv(h, &wrong), DomainError);
}

TEST_CASE("experiment config") {
  const auto cfg = experiment_config_from_json(
      R"({"N":400,"trials":50,"seed":7,"spectra":["pm1",[1,-1,0.5]],"word":[1,2],"t":"1/2","bins":40})");
  CHECK(cfg.n == 400);
  CHECK(cfg.trials == 50);
  CHECK(cfg.seed == 7u);
  REQUIRE(cfg.spectra.size() == 2);
  CHECK(std::holds_alternative<NamedLaw>(cfg.spectra[0]));
  CHECK(std::get<rmt::Spectrum>(cfg.spectra[1]) == rmt::Spectrum{1.0, -1.0, 0.5});
  CHECK(cfg.word == Word{1, 2});
  CHECK(cfg.t == Q(1, 2));
  CHECK(cfg.bins == 40);

  const auto empty = experiment_config_from_json("{}");
  CHECK_FALSE(empty.n.has_value());
  CHECK(empty.spectra.empty());
  CHECK_THROWS_AS(experiment_config_from_json(R"({"N":"many"})"), DomainError);
  CHECK_THROWS_AS(experiment_config_from_json(R"({"spectra":[3]})"), DomainError);
  CHECK_THROWS_AS(experiment_config_from_json("[]"), DomainError);
  CHECK_THROWS_AS(read_file("/nonexistent/config.json"), DomainError);
}
