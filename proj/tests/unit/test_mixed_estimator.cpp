#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "sphlrd/errors.hpp"
#include "sphlrd/mixed_estimator.hpp"
#include "sphlrd/scenario.hpp"

using namespace sphlrd;
using doctest::Approx;

namespace {

FunctionalSample sample_of(const Scenario& sc, int T, std::uint64_t rep) {
  return simulate_sample(sc.sim_config(T, rep));
}

}  // namespace

TEST_SUITE("mixed_estimator") {
  TEST_CASE("partition and plug-in values") {
    const auto sc = resolve_scenario("spharma11_mixed");
    const auto est = estimate_mixed(sample_of(sc, 200, 1), sc.model, sc.contrast_config(), sc.model.srd_set, sc.window());
    REQUIRE(est.selection.has_value());
    CHECK_FALSE(est.degenerate);
    std::vector<int> seen(31, 0);
    for (const auto& r : est.srd.rows) ++seen[static_cast<std::size_t>(r.n)];
    for (const auto& r : est.lrd.rows) ++seen[static_cast<std::size_t>(r.n)];
    for (int n = 1; n <= 30; ++n) CHECK(seen[static_cast<std::size_t>(n)] == 1);
    CHECK(est.srd.values.minCoeff() >= 0.0);
    CHECK(est.lrd.values.minCoeff() >= 0.0);

    const auto& theta = est.selection->selected_profile;
    const int last = static_cast<int>(est.lrd.frequencies.size()) - 1;
    REQUIRE(est.lrd.frequencies.back() == Approx(oracle::pi));
    for (std::size_t r = 0; r < est.lrd.rows.size(); ++r) {
      const int n = est.lrd.rows[r].n;
      const double expected = sc.model.b_eta(n) * arma_srd_factor(sc.model.arma, n, oracle::pi) *
                              std::pow(4.0, -theta.alpha(n) / 2);
      CHECK(est.lrd.values(static_cast<Eigen::Index>(r), last) == Approx(expected).epsilon(1e-13));
    }
    for (int n : sc.model.srd_set.scales()) CHECK(theta.alpha(n) == 0.0);
  }

  TEST_CASE("empty short-memory set equals the contrast plug-in") {
    const auto sc = resolve_scenario("sphar1_compact");
    const auto sample = sample_of(sc, 128, 2);
    const auto cfg = sc.contrast_config();
    const auto est = estimate_mixed(sample, sc.model, cfg, {}, sc.window());
    const auto direct = select_theta(periodogram_scale(fdft(sample)), sc.model, cfg);
    REQUIRE(est.selection.has_value());
    CHECK(est.selection->selected == direct.selected);
    CHECK(est.srd.rows.empty());
    const auto plug = model_table(sc.model, direct.selected_profile, direct.scales, 128);
    CHECK((est.lrd.values - plug.values).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("all scales short-memory is degenerate") {
    auto sc = resolve_scenario("spharma11_mixed");
    const auto sample = sample_of(sc, 64, 3);
    const auto est = estimate_mixed(sample, sc.model, sc.contrast_config(), ScaleSet::range(1, 30), sc.window());
    CHECK(est.degenerate);
    CHECK_FALSE(est.selection.has_value());
    CHECK(est.srd.rows.size() == 30);
  }

  TEST_CASE("short-memory scales outside the truncation are rejected") {
    const auto sc = resolve_scenario("spharma11_mixed");
    CHECK_THROWS_AS(MixedEstimator(sc.model, sc.contrast_config(), ScaleSet({31}), sc.window(), 64), ConfigError);
  }

  TEST_CASE("candidates are forced to vanish on short-memory scales") {
    const auto sc = resolve_scenario("sphar1_compact");
    auto cfg = sc.contrast_config();
    const ScaleSet srd = ScaleSet::range(20, 30);
    for (std::uint64_t r = 0; r < 3; ++r) {
      const auto est = estimate_mixed(sample_of(sc, 128, r), sc.model, cfg, srd, sc.window());
      for (int n = 20; n <= 30; ++n) CHECK(est.selection->selected_profile.alpha(n) == 0.0);
    }
  }

  TEST_CASE("density accessor reads the owning part") {
    const auto sc = resolve_scenario("spharma11_mixed");
    const auto est = estimate_mixed(sample_of(sc, 100, 5), sc.model, sc.contrast_config(), sc.model.srd_set, sc.window());
    const auto d16 = est.density(16);
    const auto d3 = est.density(3);
    CHECK(d16[5] == est.srd.values(est.srd.row_of(16), 5));
    CHECK(d3[5] == est.lrd.values(est.lrd.row_of(3), 5));
  }
}
