#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "mmirp/benchmark.hpp"
#include "mmirp/error.hpp"
#include "mmirp/metrics.hpp"

using namespace mmirp;

TEST_CASE("metrics: worked triple") {
  const auto m = compute_metrics(80.0, 100.0, 90.0);
  CHECK(*m.difficulty == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(*m.closeness == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(*m.saving == doctest::Approx(0.1).epsilon(1e-15));

  const auto z = compute_metrics(50.0, 50.0, 50.0);
  CHECK(*z.difficulty == 0.0);
  CHECK(*z.closeness == 0.0);
  CHECK(*z.saving == 0.0);
}

TEST_CASE("metrics: absent inputs stay absent") {
  const auto none = compute_metrics(std::nullopt, std::nullopt, 90.0);
  CHECK_FALSE(none.difficulty);
  CHECK_FALSE(none.closeness);
  CHECK_FALSE(none.saving);
  const auto ub_only = compute_metrics(std::nullopt, 100.0, 90.0);
  CHECK_FALSE(ub_only.difficulty);
  CHECK_FALSE(ub_only.closeness);
  CHECK(*ub_only.saving == doctest::Approx(0.1));
  CHECK_THROWS_AS(compute_metrics(1.0, 0.0, 2.0), DomainError);
  CHECK_THROWS_AS(compute_metrics(1.0, 2.0, -2.0), DomainError);
}

TEST_CASE("metrics: identity on random triples") {
  Rng rng(5);
  std::uniform_real_distribution<double> u(1.0, 1000.0);
  std::uniform_real_distribution<double> f(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double lb = u(rng);
    const double ub = lb + u(rng);
    const double hbv = lb + f(rng) * (ub - lb);
    const auto m = compute_metrics(lb, ub, hbv);
    CHECK(std::abs((1 - *m.difficulty) - (1 - *m.closeness) * (1 - *m.saving)) <= 1e-12);
    for (double x : {*m.difficulty, *m.closeness, *m.saving}) CHECK((x >= 0.0 && x <= 1.0));
  }
}

TEST_CASE("t-test: textbook example") {
  const std::vector<double> a{1, 2, 3, 4};
  const std::vector<double> b{2, 2, 5, 3};
  const auto r = paired_t_test(a, b);
  CHECK(r.n == 4);
  CHECK(r.mean_difference == -0.5);
  CHECK(std::abs(r.t_statistic - (-0.5 / (std::sqrt(5.0 / 3.0) / 2.0))) <= 1e-12);
  CHECK(std::abs(r.t_statistic + 0.7746) <= 1e-4);
  // Reference values from an independent statistics package.
  CHECK(std::abs(r.p_value - 0.495025346059711) <= 1e-9);
  CHECK(std::abs(r.confidence_interval_95.first + 2.554260256760879) <= 1e-9);
  CHECK(std::abs(r.confidence_interval_95.second - 1.554260256760879) <= 1e-9);
  CHECK(r.confidence_interval_95.first < r.mean_difference);
  CHECK(r.confidence_interval_95.second > r.mean_difference);

  const auto s = paired_t_test(b, a);
  CHECK(s.t_statistic == -r.t_statistic);
  CHECK(s.mean_difference == -r.mean_difference);
  CHECK(s.p_value == doctest::Approx(r.p_value).epsilon(1e-14));
}

TEST_CASE("t-test: errors") {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{1, 2};
  CHECK_THROWS_AS(paired_t_test(a, b), ValidationError);
  const std::vector<double> one{1};
  CHECK_THROWS_AS(paired_t_test(one, one), ValidationError);
  CHECK_THROWS_AS(paired_t_test(a, a), DegenerateDataError);
  const std::vector<double> shifted{2, 3, 4};
  CHECK_THROWS_AS(paired_t_test(a, shifted), DegenerateDataError);
}

TEST_CASE("t distribution tail") {
  CHECK(student_t_two_sided_p(0.0, 5) == 1.0);
  CHECK(std::abs(student_t_two_sided_p(2.7764451051977987, 4) - 0.05) <= 1e-10);
  CHECK(std::abs(student_t_two_sided_p(-3.2498355415921254, 9) - 0.01) <= 1e-10);
}

TEST_CASE("suite enumeration") {
  SuiteSpec full;
  CHECK(enumerate_suite(full).size() == 96);
  SuiteSpec five;
  five.customers = {5};
  const auto cases = enumerate_suite(five);
  REQUIRE(cases.size() == 24);
  std::set<std::string> ids;
  for (const auto& c : cases) ids.insert(c.id);
  CHECK(ids.size() == 24);
  CHECK(ids.count("I5_T5_V3_P2_s1") == 1);
  CHECK(ids.count("I5_T7_V5_P5_s3") == 1);
}

TEST_CASE("bounds csv") {
  std::istringstream is("instance_id,LB,UB\nI5_T5_V3_P2_s1,100,120\nI5_T5_V3_P2_s2,,130\n");
  const auto t = read_bounds_csv(is);
  REQUIRE(t.size() == 2);
  CHECK(*t.at("I5_T5_V3_P2_s1").lb == 100);
  CHECK_FALSE(t.at("I5_T5_V3_P2_s2").lb);
  CHECK(*t.at("I5_T5_V3_P2_s2").ub == 130);
  std::istringstream bad("instance_id,LB\nx,1\n");
  CHECK_THROWS_AS(read_bounds_csv(bad), ParseError);
}

TEST_CASE("run_benchmark: small suite") {
  SuiteSpec suite;
  suite.customers = {5};
  suite.periods = {5};
  suite.vehicles = {3};
  suite.products = {2};
  suite.replicates = 2;
  BenchOptions opt;
  opt.ga.psize = 10;
  opt.ga.max_generations = 10;

  const auto plain = run_benchmark(suite, opt);
  REQUIRE(plain.size() == 2);
  for (const auto& r : plain) {
    CHECK(r.hbv_maga);
    CHECK(r.hbv_baseline);
    CHECK_FALSE(r.maga.difficulty);
    CHECK_FALSE(r.maga.closeness);
    CHECK_FALSE(r.maga.saving);
    CHECK(r.runtime_maga_s >= 0.0);
    CHECK(*r.hbv_maga <= *r.hbv_baseline + 1e-9);
  }
  const auto again = run_benchmark(suite, opt);
  for (std::size_t k = 0; k < plain.size(); ++k) {
    CHECK(plain[k].instance_id == again[k].instance_id);
    CHECK(plain[k].hbv_maga == again[k].hbv_maga);
  }

  BoundsTable bounds;
  bounds["I5_T5_V3_P2_s2"] = {1.0, 1e6};
  bounds["I5_T5_V3_P2_s1"] = {100.0, 1e6};
  const auto with = run_benchmark(suite, opt, bounds);
  CHECK(with[0].instance_id == "I5_T5_V3_P2_s2");  // larger difficulty first
  CHECK(with[0].maga.difficulty);

  std::ostringstream csv;
  write_report_csv(csv, with);
  const std::string text = csv.str();
  CHECK(text.rfind("instance_id,I,T,V,P,seed,LB,UB,HBV_maga,HBV_baseline,difficulty,closeness_maga,saving_maga,"
                   "runtime_maga_s,runtime_baseline_s",
                   0) == 0);
  std::istringstream back(text);
  const auto col = read_csv_column(back, "HBV_maga");
  REQUIRE(col.size() == 2);
  CHECK(*col[0] == *with[0].hbv_maga);

  BoundsTable unknown;
  unknown["I99_T1_V1_P1_s1"] = {1.0, 2.0};
  CHECK_THROWS_AS(run_benchmark(suite, opt, unknown), ValidationError);
}
