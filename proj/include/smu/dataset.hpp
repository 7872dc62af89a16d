#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "smu/errors.hpp"
#include "smu/format.hpp"
#include "smu/random.hpp"
#include "smu/tensor.hpp"

namespace smu {

/// Labeled feature matrix plus an optional train/test split.
struct Dataset {
  Tensor2D features;
  std::vector<std::size_t> labels;
  std::size_t class_count = 0;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;

  std::size_t size() const { return labels.size(); }
  std::size_t feature_count() const { return features.cols(); }
  bool has_split() const { return !train_indices.empty(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

namespace detail {

inline constexpr std::uint64_t kSplitStream = 1;

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n, lo);
  if (n > 1)
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// Adds N(0, noise^2) to every feature, row by row, column by column.
inline void add_gaussian_noise(Tensor2D& x, double noise, Rng& rng) {
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) x(r, c) += noise * rng.normal();
}

}  // namespace detail

/// Two interleaved half circles of radius 1.
///
/// Class 0 (ceil(n/2) points): (cos t, sin t) for t evenly spaced over [0, pi].
/// Class 1 (floor(n/2) points): (1 - cos t, 0.5 - sin t), the first arc
/// flipped and moved by (1, -0.5) relative to (1 - cos t, 1 - sin t).
/// Gaussian noise is then added to x and y of each row in order.
inline Dataset make_two_moons(std::size_t n, double noise, std::uint64_t seed) {
  if (n < 2) throw ConfigError("make_two_moons: n must be >= 2");
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw ConfigError("make_two_moons: noise must be >= 0");
  const std::size_t n0 = (n + 1) / 2;
  const std::size_t n1 = n / 2;

  Dataset ds;
  ds.features = Tensor2D(n, 2);
  ds.labels.assign(n, 0);
  ds.class_count = 2;
  std::size_t row = 0;
  for (double t : detail::linspace(0.0, std::numbers::pi, n0)) {
    ds.features(row, 0) = std::cos(t);
    ds.features(row, 1) = std::sin(t);
    ds.labels[row++] = 0;
  }
  for (double t : detail::linspace(0.0, std::numbers::pi, n1)) {
    ds.features(row, 0) = 1.0 - std::cos(t);
    ds.features(row, 1) = 0.5 - std::sin(t);
    ds.labels[row++] = 1;
  }
  Rng rng(seed);
  detail::add_gaussian_noise(ds.features, noise, rng);
  return ds;
}

/// Two interleaved Archimedean spirals r = theta / (2 pi), the second rotated
/// by pi. Point i of m in a class sits at theta = 2 pi turns (i + 1) / m.
inline Dataset make_spirals(std::size_t n, double turns, double noise, std::uint64_t seed) {
  if (n < 2) throw ConfigError("make_spirals: n must be >= 2");
  if (!(turns > 0.0) || !std::isfinite(turns)) throw ConfigError("make_spirals: turns must be > 0");
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw ConfigError("make_spirals: noise must be >= 0");
  Dataset ds;
  ds.features = Tensor2D(n, 2);
  ds.labels.assign(n, 0);
  ds.class_count = 2;
  std::size_t row = 0;
  for (std::size_t c = 0; c < 2; ++c) {
    const std::size_t m = c == 0 ? (n + 1) / 2 : n / 2;
    for (std::size_t i = 0; i < m; ++i) {
      const double theta = 2.0 * std::numbers::pi * turns * static_cast<double>(i + 1) / static_cast<double>(m);
      const double r = theta / (2.0 * std::numbers::pi);
      const double phase = theta + std::numbers::pi * static_cast<double>(c);
      ds.features(row, 0) = r * std::cos(phase);
      ds.features(row, 1) = r * std::sin(phase);
      ds.labels[row++] = c;
    }
  }
  Rng rng(seed);
  detail::add_gaussian_noise(ds.features, noise, rng);
  return ds;
}

/// Returns a copy of `ds` with a fresh train/test split. The test set holds
/// round(n * test_fraction) rows, clamped to [1, n - 1]; both index lists are
/// sorted ascending.
inline Dataset split(Dataset ds, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ConfigError("split: test_fraction must be in (0, 1)");
  const std::size_t n = ds.size();
  if (n < 2) throw ConfigError("split: need at least 2 rows");
  auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));
  n_test = std::clamp<std::size_t>(n_test, 1, n - 1);

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Rng rng(derive_seed(seed, detail::kSplitStream));
  rng.shuffle(std::span<std::size_t>(perm));

  ds.test_indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
  ds.train_indices.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
  std::sort(ds.test_indices.begin(), ds.test_indices.end());
  std::sort(ds.train_indices.begin(), ds.train_indices.end());
  return ds;
}

/// CSV text with header `label,f0,f1,...`, LF newlines, shortest round-trip reals.
inline std::string to_csv(const Dataset& ds) {
  std::string out = "label";
  for (std::size_t c = 0; c < ds.feature_count(); ++c) out += ",f" + std::to_string(c);
  out += '\n';
  for (std::size_t r = 0; r < ds.size(); ++r) {
    out += std::to_string(ds.labels[r]);
    for (double v : ds.features.row(r)) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

inline void write_csv(const Dataset& ds, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  f << to_csv(ds);
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

/// Parses CSV text: a header row naming the columns, then numeric rows.
/// `label_column` names the class column; every other column is a feature,
/// in header order. Labels must be non-negative integers.
inline Dataset parse_csv(std::istream& in, const std::string& label_column = "label") {
  auto split_fields = [](const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
  };
  auto strip_cr = [](std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  };

  std::string line;
  if (!std::getline(in, line)) throw ParseError("line 1: missing header row");
  strip_cr(line);
  const auto header = split_fields(line);
  auto it = std::find(header.begin(), header.end(), label_column);
  if (it == header.end()) throw ConfigError("unknown label column '" + label_column + "'");
  const auto label_idx = static_cast<std::size_t>(it - header.begin());
  const std::size_t n_features = header.size() - 1;

  std::vector<double> values;
  std::vector<std::size_t> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size())
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                       " fields, got " + std::to_string(fields.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_double(fields[c]);
      if (!v || !std::isfinite(*v))
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric value '" + fields[c] + "' in column '" +
                         header[c] + "'");
      if (c == label_idx) {
        if (*v < 0.0 || std::floor(*v) != *v || *v > 1e9)
          throw ParseError("line " + std::to_string(line_no) + ": label must be a non-negative integer");
        labels.push_back(static_cast<std::size_t>(*v));
      } else {
        values.push_back(*v);
      }
    }
  }
  if (labels.empty()) throw ParseError("no data rows");

  Dataset ds;
  ds.features = Tensor2D(labels.size(), n_features, std::move(values));
  ds.class_count = *std::max_element(labels.begin(), labels.end()) + 1;
  ds.labels = std::move(labels);
  return ds;
}

inline Dataset load_csv(const std::string& path, const std::string& label_column = "label") {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "'");
  return parse_csv(f, label_column);
}

}  // namespace smu
