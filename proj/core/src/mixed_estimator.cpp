#include "sphlrd/mixed_estimator.hpp"

#include <algorithm>

#include "sphlrd/errors.hpp"

namespace sphlrd {

std::vector<double> MixedEstimate::density(int n) const {
  const SpectralTable& part = srd_set.contains(n) ? srd : lrd;
  const auto row = part.values.row(part.row_of(n));
  return {row.begin(), row.end()};
}

MixedEstimator::MixedEstimator(const ModelSpec& model, ContrastConfig config, ScaleSet srd_set,
                               SmoothingWindow window, int T)
    : model_(&model), srd_set_(std::move(srd_set)), window_(window) {
  const int M = model.truncation();
  for (int n : srd_set_.scales()) {
    if (n < 1 || n > M) throw ConfigError("short-memory scale " + std::to_string(n) + " outside 1.." + std::to_string(M));
  }
  lrd_scales_ = srd_set_.complement(M);
  if (!lrd_scales_.empty()) {
    config.candidates = restrict_to_lrd(std::move(config.candidates), srd_set_);
    engine_.emplace(model, std::move(config), lrd_scales_, T);
  }
}

MixedEstimate MixedEstimator::estimate(const SpectralTable& ptable) const {
  MixedEstimate out;
  out.srd_set = srd_set_;
  out.lrd_scales = lrd_scales_;
  out.window_shape = window_.shape();
  out.bandwidth = window_.bandwidth();
  out.srd = smoothed_estimator(ptable, window_, srd_set_);
  if (!engine_) {
    out.degenerate = true;
    out.lrd = model_table(*model_, model_->lrd, {}, ptable.sample_length);
    return out;
  }
  out.selection = engine_->select(ptable);
  out.lrd = model_table(*model_, out.selection->selected_profile, lrd_scales_, ptable.sample_length);
  return out;
}

MixedEstimate estimate_mixed(const FunctionalSample& sample, const ModelSpec& model, const ContrastConfig& config,
                             const ScaleSet& srd_set, const SmoothingWindow& window) {
  const SpectralTable ptable = periodogram_scale(fdft(sample));
  MixedEstimator estimator(model, config, srd_set, window, ptable.sample_length);
  return estimator.estimate(ptable);
}

}  // namespace sphlrd
