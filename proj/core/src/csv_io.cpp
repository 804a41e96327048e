#include "sphlrd/csv_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sphlrd/errors.hpp"

namespace sphlrd {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), res.ptr};
}

void write_sample_csv(std::ostream& out, const FunctionalSample& sample) {
  out << "n,j,t,value\n";
  for (int n = 1; n <= sample.truncation(); ++n) {
    for (int j = 1; j <= sample.orders(n); ++j) {
      const auto s = sample.series(n, j);
      for (std::size_t t = 0; t < s.size(); ++t) {
        out << n << ',' << j << ',' << t + 1 << ',' << format_number(s[t]) << '\n';
      }
    }
  }
}

FunctionalSample read_sample_csv(std::istream& in, int truncation) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("n,j,t,value", 0) != 0) throw DataError("sample CSV needs an n,j,t,value header");
  struct Entry {
    int n, j, t;
    double v;
  };
  std::vector<Entry> entries;
  int T = 0;
  int max_j = 1;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Entry e{};
    std::istringstream row(line);
    char c1 = 0, c2 = 0, c3 = 0;
    std::string value;
    if (!(row >> e.n >> c1 >> e.j >> c2 >> e.t >> c3) || c1 != ',' || c2 != ',' || c3 != ',' || !(row >> value)) {
      throw DataError("malformed sample CSV line " + std::to_string(lineno));
    }
    try {
      e.v = std::stod(value);
    } catch (const std::exception&) {
      throw DataError("bad value on sample CSV line " + std::to_string(lineno));
    }
    if (e.n < 1 || e.n > truncation || e.j < 1 || e.j > 2 * e.n + 1 || e.t < 1) {
      throw DataError("index out of range on sample CSV line " + std::to_string(lineno));
    }
    T = std::max(T, e.t);
    max_j = std::max(max_j, e.j);
    entries.push_back(e);
  }
  const auto rep = max_j > 1 ? Representation::full : Representation::zonal;
  FunctionalSample sample(rep, T, truncation);
  std::vector<std::vector<std::vector<char>>> seen(static_cast<std::size_t>(truncation));
  for (int n = 1; n <= truncation; ++n) {
    seen[static_cast<std::size_t>(n - 1)].assign(static_cast<std::size_t>(sample.orders(n)),
                                                std::vector<char>(static_cast<std::size_t>(T), 0));
  }
  for (const auto& e : entries) {
    if (e.j > sample.orders(e.n)) throw DataError("order index beyond the sample representation");
    sample.series(e.n, e.j)[static_cast<std::size_t>(e.t - 1)] = e.v;
    seen[static_cast<std::size_t>(e.n - 1)][static_cast<std::size_t>(e.j - 1)][static_cast<std::size_t>(e.t - 1)] = 1;
  }
  for (const auto& per_n : seen) {
    for (const auto& per_j : per_n) {
      for (char s : per_j) {
        if (!s) throw DataError("sample CSV does not cover every (n, j, t)");
      }
    }
  }
  return sample;
}

void write_snapshot_csv(std::ostream& out, const FunctionalSample& sample, const SpherePoint& pole,
                        const std::vector<SpherePoint>& grid, const std::vector<int>& times) {
  out << "colatitude,longitude,value,t\n";
  for (int t : times) {
    if (t < 1 || t > sample.length()) throw InvalidParameter("snapshot time outside 1..T");
    ZonalField field{pole, {}};
    for (int n = 1; n <= sample.truncation(); ++n) {
      field.coefficients.push_back(sample.series(n, 1)[static_cast<std::size_t>(t - 1)]);
    }
    const auto values = reconstruct_field(field, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << format_number(grid[i].colatitude()) << ',' << format_number(grid[i].longitude()) << ','
          << format_number(values[i]) << ',' << t << '\n';
    }
  }
}

void write_spectral_csv(std::ostream& out, const SpectralTable& table) {
  out << "kind,n,omega,value_re,value_im\n";
  const bool complex = table.kind == SpectralKind::fdft;
  const auto kind = to_string(table.kind);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto ri = static_cast<Eigen::Index>(r);
    for (std::size_t k = 0; k < table.frequencies.size(); ++k) {
      const auto ki = static_cast<Eigen::Index>(k);
      const double re = complex ? table.complex_values(ri, ki).real() : table.values(ri, ki);
      const double im = complex ? table.complex_values(ri, ki).imag() : 0.0;
      out << kind << ',' << table.rows[r].n << ',' << format_number(table.frequencies[k]) << ',' << format_number(re)
          << ',' << format_number(im) << '\n';
    }
  }
}

void write_contrast_csv(std::ostream& out, const ContrastReport& report) {
  out << "record,candidate_index,n,value,selected\n";
  const auto ncand = report.contrast.rows();
  for (Eigen::Index c = 0; c < ncand; ++c) {
    const int sel = c == report.selected ? 1 : 0;
    for (std::size_t s = 0; s < report.scales.size(); ++s) {
      out << "contrast," << c << ',' << report.scales[s] << ','
          << format_number(report.contrast(c, static_cast<Eigen::Index>(s))) << ',' << sel << '\n';
    }
  }
  for (Eigen::Index c = 0; c < ncand; ++c) {
    out << "norm," << c << ",0," << format_number(report.norms[static_cast<std::size_t>(c)]) << ','
        << (c == report.selected ? 1 : 0) << '\n';
  }
}

void write_mixed_csv(std::ostream& out, const MixedEstimate& estimate) {
  out << "# window=" << to_string(estimate.window_shape) << '\n';
  out << "# bandwidth=" << format_number(estimate.bandwidth) << '\n';
  if (estimate.selection) {
    out << "# selected=" << estimate.selection->selected << ' ' << estimate.selection->selected_profile.label << '\n';
  } else {
    out << "# selected=none\n";
  }
  out << "# degenerate=" << (estimate.degenerate ? 1 : 0) << '\n';
  out << "part,n,omega,value\n";
  const auto emit = [&](const char* part, const SpectralTable& t) {
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      for (std::size_t k = 0; k < t.frequencies.size(); ++k) {
        out << part << ',' << t.rows[r].n << ',' << format_number(t.frequencies[k]) << ','
            << format_number(t.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k))) << '\n';
      }
    }
  };
  emit("srd", estimate.srd);
  emit("lrd", estimate.lrd);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw DataError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) throw DataError("cannot move " + tmp.string() + " into place: " + ec.message());
}

}  // namespace sphlrd
