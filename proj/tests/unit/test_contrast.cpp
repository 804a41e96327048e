#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "sphlrd/contrast.hpp"
#include "sphlrd/errors.hpp"
#include "sphlrd/scenario.hpp"

using namespace sphlrd;
using doctest::Approx;

namespace {

ModelSpec scalar_model(double alpha, double b_eta = 1.0) {
  return ModelSpec::make(SphArmaSpec::white({2 * oracle::pi * b_eta}), LrdProfile{{alpha}, "theta0"},
                         alpha == 0.0 ? ScaleSet({1}) : ScaleSet());
}

ContrastConfig config_with(std::vector<LrdProfile> c, double gamma = 1.5) {
  ContrastConfig cfg;
  cfg.gamma = gamma;
  cfg.candidates = std::move(c);
  return cfg;
}

SpectralTable truth_as_periodogram(const ModelSpec& m, const LrdProfile& theta, int T) {
  std::vector<int> scales;
  for (int n = 1; n <= m.truncation(); ++n) scales.push_back(n);
  auto t = model_table(m, theta, scales, T);
  t.kind = SpectralKind::periodogram;
  t.values.col(t.zero_index()).setZero();
  return t;
}

SpectralTable noisy_periodogram(const ModelSpec& m, int T, std::uint64_t seed) {
  SimConfig c;
  c.model = m;
  c.length = T;
  c.seed = seed;
  return periodogram_scale(fdft(simulate_sample(c)));
}

}  // namespace

TEST_SUITE("contrast") {
  TEST_CASE("normalizer closed form and linearity") {
    const auto m = scalar_model(0.0);
    const auto cfg = config_with({m.lrd}, 2.0);
    CHECK(normalizer(m, m.lrd, cfg, 1) == Approx(2 * std::pow(oracle::pi, 3) / 3).epsilon(1e-12));
    const auto m2 = scalar_model(0.0, 2.0);
    CHECK(normalizer(m2, m.lrd, cfg, 1) == Approx(2 * normalizer(m, m.lrd, cfg, 1)).epsilon(1e-14));
  }

  TEST_CASE("normalizer is smooth in alpha") {
    const auto m = scalar_model(0.3);
    const auto cfg = config_with({m.lrd});
    const auto n_at = [&](double a) { return normalizer(m, LrdProfile{{a}, "x"}, cfg, 1); };
    for (double a : {0.05, 0.2, 0.35, 0.45}) {
      const double d1 = (n_at(a + 1e-3) - n_at(a - 1e-3)) / 2e-3;
      const double d2 = (n_at(a + 5e-4) - n_at(a - 5e-4)) / 1e-3;
      CHECK(std::isfinite(d1));
      CHECK(d1 == Approx(d2).epsilon(1e-4));
    }
  }

  TEST_CASE("identity constraint against tanh-sinh") {
    const auto sc = resolve_scenario("sphar3_compact");
    const auto cfg = sc.contrast_config();
    for (std::size_t c = 0; c < cfg.candidates.size(); c += 9) {
      for (int n : {1, 7, 15, 30}) {
        const auto& th = cfg.candidates[c];
        const double total = 2.0 * oracle::tanh_sinh(
                                        [&](double w) { return upsilon(sc.model, th, cfg, n, w) * std::pow(w, cfg.gamma); },
                                        0.0, oracle::pi);
        CHECK(total == Approx(1.0).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("upsilon invariances") {
    const auto m = scalar_model(0.3);
    const auto m5 = scalar_model(0.3, 5.0);
    const auto cfg = config_with({m.lrd});
    for (double w : {0.01, 0.5, 2.0, oracle::pi}) {
      CHECK(upsilon(m, m.lrd, cfg, 1, w) == Approx(upsilon(m5, m.lrd, cfg, 1, w)).epsilon(1e-12));
      CHECK(upsilon(m, m.lrd, cfg, 1, w) == upsilon(m, m.lrd, cfg, 1, -w));
    }
    CHECK_THROWS_AS(upsilon(m, m.lrd, cfg, 1, 0.0), SingularFrequency);
  }

  TEST_CASE("config validation") {
    auto cfg = config_with({LrdProfile{{0.2}, "a"}}, 1.0);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.gamma = 1.5;
    cfg.w_tilde = {0.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.w_tilde = {1.0};
    CHECK_NOTHROW(cfg.validate());
    cfg.candidates.clear();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }

  TEST_CASE("empirical contrast basics") {
    const auto m = scalar_model(0.3);
    const auto cfg = config_with({m.lrd});
    auto p = noisy_periodogram(m, 128, 1);
    auto q = noisy_periodogram(m, 128, 2);
    const auto up = empirical_contrast(p, m, m.lrd, cfg)[0];
    const auto uq = empirical_contrast(q, m, m.lrd, cfg)[0];
    SpectralTable lin = p;
    lin.values = 2.5 * p.values + 0.5 * q.values;
    CHECK(empirical_contrast(lin, m, m.lrd, cfg)[0] == Approx(2.5 * up + 0.5 * uq).epsilon(1e-12));
    lin.values.setZero();
    CHECK(empirical_contrast(lin, m, m.lrd, cfg)[0] == 0.0);
    p.values(0, 3) = NAN;
    CHECK_THROWS_AS(empirical_contrast(p, m, m.lrd, cfg), DataError);
    CHECK_THROWS_AS(empirical_contrast(fdft(FunctionalSample(Representation::zonal, 8, 1)), m, m.lrd, cfg),
                    ContractError);
  }

  TEST_CASE("engine agrees with direct summation") {
    const auto sc = resolve_scenario("sphar1_compact");
    const auto cfg = sc.contrast_config();
    const auto p = noisy_periodogram(sc.model, 256, 4);
    const auto report = select_theta(p, sc.model, cfg);
    for (std::size_t c = 0; c < cfg.candidates.size(); c += 11) {
      const auto direct = empirical_contrast(p, sc.model, cfg.candidates[c], cfg);
      for (std::size_t s = 0; s < direct.size(); ++s) {
        CHECK(report.contrast(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(s)) ==
              Approx(direct[s]).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("selection contract") {
    const auto m = scalar_model(0.3);
    const auto p = noisy_periodogram(m, 256, 5);
    CHECK(select_theta(p, m, config_with({m.lrd})).selected == 0);
    const LrdProfile other{{0.1}, "other"};
    const auto dup = select_theta(p, m, config_with({other, m.lrd, other, m.lrd}));
    CHECK((dup.selected == 0 || dup.selected == 1));
    CHECK(dup.norms[0] == dup.norms[2]);
    CHECK(dup.norms[1] == dup.norms[3]);
    CHECK_THROWS_AS(select_theta(p, m, config_with({})), ConfigError);
    for (std::size_t c = 0; c < dup.norms.size(); ++c) CHECK(dup.norms[static_cast<std::size_t>(dup.selected)] <= dup.norms[c]);
  }

  TEST_CASE("ranking is invariant under periodogram scaling") {
    const auto sc = resolve_scenario("sphar1_noncompact");
    const auto cfg = sc.contrast_config();
    auto p = noisy_periodogram(sc.model, 128, 6);
    const auto a = select_theta(p, sc.model, cfg);
    p.values *= 7.3;
    const auto b = select_theta(p, sc.model, cfg);
    CHECK(a.selected == b.selected);
    std::vector<std::size_t> ia(a.norms.size()), ib(b.norms.size());
    std::iota(ia.begin(), ia.end(), 0);
    std::iota(ib.begin(), ib.end(), 0);
    std::stable_sort(ia.begin(), ia.end(), [&](auto x, auto y) { return a.norms[x] < a.norms[y]; });
    std::stable_sort(ib.begin(), ib.end(), [&](auto x, auto y) { return b.norms[x] < b.norms[y]; });
    CHECK(ia == ib);
  }

  TEST_CASE("discretized loss is nonnegative for random pairs") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.01, 0.49);
    const int T = 1024;
    for (int i = 0; i < 20; ++i) {
      const double a0 = u(rng), a1 = u(rng);
      const auto m = scalar_model(a0);
      const LrdProfile t1{{a1}, "t1"};
      const auto cfg = config_with({m.lrd, t1});
      const auto p = truth_as_periodogram(m, m.lrd, T);
      const double loss = empirical_contrast(p, m, t1, cfg)[0] - empirical_contrast(p, m, m.lrd, cfg)[0];
      CHECK(loss >= -1e-4);
      const double quad = theoretical_loss(m, m.lrd, t1, cfg, 1);
      CHECK(quad >= 0.0);
      CHECK(loss == Approx(quad).epsilon(0.05).scale(1e-3));
    }
  }

  TEST_CASE("theoretical loss against tanh-sinh") {
    const auto m = scalar_model(0.35, 0.7);
    const LrdProfile t1{{0.1}, "t1"};
    const auto cfg = config_with({m.lrd, t1});
    const double n0 = normalizer(m, m.lrd, cfg, 1), n1 = normalizer(m, t1, cfg, 1);
    const double ref = 2.0 * oracle::tanh_sinh(
                                 [&](double w) {
                                   const double f0 = spectral_density(m, m.lrd, 1, w);
                                   const double f1 = spectral_density(m, t1, 1, w);
                                   return f0 * std::pow(w, 1.5) * std::log((f0 / n0) / (f1 / n1));
                                 },
                                 0.0, oracle::pi);
    CHECK(theoretical_loss(m, m.lrd, t1, cfg, 1) == Approx(ref).epsilon(1e-8));
    CHECK(theoretical_loss(m, m.lrd, m.lrd, cfg, 1) == 0.0);
  }

  TEST_CASE("population identifiability over the default family") {
    const auto sc = resolve_scenario("sphar1_compact");
    const auto cfg = sc.contrast_config();
    const auto p = truth_as_periodogram(sc.model, sc.model.lrd, 1024);
    const auto report = select_theta(p, sc.model, cfg);
    int truth = -1;
    for (std::size_t c = 0; c < cfg.candidates.size(); ++c) {
      if (cfg.candidates[c].label == "theta0") truth = static_cast<int>(c);
    }
    REQUIRE(truth >= 0);
    for (Eigen::Index c = 0; c < report.contrast.rows(); ++c) {
      const double sup = (report.contrast.row(c) - report.contrast.row(truth)).maxCoeff();
      if (c == truth) {
        CHECK(std::abs(sup) <= 1e-6);
      } else {
        CHECK(sup > 1e-6);
      }
    }
  }

  TEST_CASE("agrees with the scalar oracle on a single-scale model") {
    const auto sc = resolve_scenario("white_m1");
    const auto cfg = sc.contrast_config();
    const double b = sc.model.b_eta(1);
    for (std::uint64_t r = 0; r < 5; ++r) {
      const auto p = noisy_periodogram(sc.model, 512, r + 100);
      const auto rep = select_theta(p, sc.model, cfg);
      std::vector<double> row(p.values.row(0).begin(), p.values.row(0).end());
      for (std::size_t c = 0; c < cfg.candidates.size(); ++c) {
        const double u = oracle::scalar_contrast(row, b, cfg.candidates[c].alpha(1), cfg.gamma);
        CHECK(rep.contrast(static_cast<Eigen::Index>(c), 0) == Approx(u).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("single-scale population contrast is minimized at the true exponent") {
    const auto sc = resolve_scenario("white_m1");
    const auto cfg = sc.contrast_config();
    auto p = model_table(sc.model, sc.model.lrd, {1}, 2048);
    p.kind = SpectralKind::periodogram;
    p.values.col(p.zero_index()).setZero();
    const auto rep = select_theta(p, sc.model, cfg);
    CHECK(cfg.candidates[static_cast<std::size_t>(rep.selected)].alpha(1) == Approx(0.3));
  }

  TEST_CASE("candidate helpers") {
    auto truth = compact_profile(10);
    truth.label = "theta0";
    const auto list = candidates_with_truth(truth, 25, 3, true);
    CHECK(list.size() == 25);
    CHECK(std::count_if(list.begin(), list.end(), [](const LrdProfile& p) { return p.label == "theta0"; }) == 1);
    const auto again = candidates_with_truth(truth, 25, 3, true);
    for (std::size_t i = 0; i < list.size(); ++i) CHECK(list[i].alphas == again[i].alphas);
    const auto r = restrict_to_lrd(list, ScaleSet::range(6, 10));
    for (const auto& c : r) {
      for (int n = 6; n <= 10; ++n) CHECK(c.alpha(n) == 0.0);
      CHECK(c.alpha(1) > 0.0);
    }
  }
}
