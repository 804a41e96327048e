#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "sphlrd/contrast.hpp"
#include "sphlrd/harmonics.hpp"
#include "sphlrd/mixed_estimator.hpp"
#include "sphlrd/periodogram.hpp"
#include "sphlrd/simulator.hpp"

namespace sphlrd {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double x);

/// n,j,t,value with t = 1..T.
void write_sample_csv(std::ostream& out, const FunctionalSample& sample);

/// Inverse of write_sample_csv; every (n, j) series must cover t = 1..T.
/// Throws DataError on malformed input.
FunctionalSample read_sample_csv(std::istream& in, int truncation);

/// colatitude,longitude,value,t: the zonal field of the first stored order at
/// each requested time, evaluated on `grid`.
void write_snapshot_csv(std::ostream& out, const FunctionalSample& sample, const SpherePoint& pole,
                        const std::vector<SpherePoint>& grid, const std::vector<int>& times);

/// kind,n,omega,value_re,value_im; rows in table order, omega ascending.
void write_spectral_csv(std::ostream& out, const SpectralTable& table);

/// record,candidate_index,n,value,selected: one "contrast" record per
/// (candidate, scale) with U, then one "norm" record per candidate (n = 0).
void write_contrast_csv(std::ostream& out, const ContrastReport& report);

/// "# key=value" metadata lines, then part,n,omega,value.
void write_mixed_csv(std::ostream& out, const MixedEstimate& estimate);

/// Writes through a temporary file and renames; throws DataError on failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace sphlrd
