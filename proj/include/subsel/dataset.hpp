// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Labeled feature datasets: in-memory types, the SUBSELF1 binary feature
// format (with a CSV fallback), label files, seeded splits and a synthetic
// Gaussian-mixture generator.
//
// Binary layout, all integers little-endian:
//   bytes  0..7   ASCII "SUBSELF1"
//   bytes  8..9   u16 version (1)
//   bytes 10..17  u64 n (rows)
//   bytes 18..25  u64 d (columns)
//   then          n*d float32, row-major
//   trailer       u32 CRC32 of the payload bytes

#ifndef SUBSEL_DATASET_HPP_
#define SUBSEL_DATASET_HPP_

#include <zlib.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subsel/error.hpp"

namespace subsel {

using Index = std::size_t;

// n x d matrix of finite float32 values, row-major. Immutable once built.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;

  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<float> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    detail::require(rows_ >= 1 && cols_ >= 1,
                    "feature matrix must be at least 1x1, got ", rows_, "x",
                    cols_);
    detail::require(values_.size() == rows_ * cols_, "feature matrix expects ",
                    rows_ * cols_, " values, got ", values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k) {
      detail::require(std::isfinite(values_[k]), "non-finite feature at row ",
                      k / cols_, ", column ", k % cols_);
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  float at(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
  std::span<const float> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<const float> values() const { return values_; }

  FeatureMatrix select_rows(std::span<const Index> rows) const {
    std::vector<float> out;
    out.reserve(rows.size() * cols_);
    for (Index r : rows) {
      detail::require(r < rows_, "row index ", r, " out of range (n=", rows_,
                      ")");
      auto src = row(r);
      out.insert(out.end(), src.begin(), src.end());
    }
    return FeatureMatrix(rows.size(), cols_, std::move(out));
  }

  // Bitwise comparison, so -0.0f != 0.0f.
  friend bool operator==(const FeatureMatrix& a, const FeatureMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.values_.size() == b.values_.size() &&
           std::memcmp(a.values_.data(), b.values_.data(),
                       a.values_.size() * sizeof(float)) == 0;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> values_;
};

// Class labels in [0, C). C may exceed 1 + max(label) for subsets of a
// larger dataset.
class LabelVector {
 public:
  LabelVector() = default;

  explicit LabelVector(std::vector<int> labels)
      : labels_(std::move(labels)) {
    for (int l : labels_) {
      detail::require(l >= 0, "negative label ", l);
      num_classes_ = std::max(num_classes_, l + 1);
    }
  }

  LabelVector(std::vector<int> labels, int num_classes)
      : labels_(std::move(labels)), num_classes_(num_classes) {
    for (int l : labels_) {
      detail::require(l >= 0 && l < num_classes_, "label ", l,
                      " outside [0, ", num_classes_, ")");
    }
  }

  std::size_t size() const { return labels_.size(); }
  int num_classes() const { return num_classes_; }
  int operator[](std::size_t i) const { return labels_[i]; }
  std::span<const int> values() const { return labels_; }

  std::vector<std::size_t> class_counts() const {
    std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes_), 0);
    for (int l : labels_) ++counts[static_cast<std::size_t>(l)];
    return counts;
  }

  LabelVector select(std::span<const Index> rows) const {
    std::vector<int> out;
    out.reserve(rows.size());
    for (Index r : rows) {
      detail::require(r < labels_.size(), "label index ", r, " out of range");
      out.push_back(labels_[r]);
    }
    return LabelVector(std::move(out), num_classes_);
  }

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

 private:
  std::vector<int> labels_;
  int num_classes_ = 0;
};

struct LabeledDataset {
  FeatureMatrix features;
  LabelVector labels;

  LabeledDataset() = default;
  LabeledDataset(FeatureMatrix f, LabelVector l)
      : features(std::move(f)), labels(std::move(l)) {
    detail::require(features.rows() == labels.size(), "dataset has ",
                    features.rows(), " feature rows but ", labels.size(),
                    " labels");
  }

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return features.cols(); }
  int num_classes() const { return labels.num_classes(); }

  LabeledDataset subset(std::span<const Index> rows) const {
    return {features.select_rows(rows), labels.select(rows)};
  }
};

// Checks that every class in [0, C) occurs. Required of full datasets,
// not of subsets drawn from them.
inline void validate_full_dataset(const LabeledDataset& ds) {
  auto counts = ds.labels.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    detail::require(counts[c] > 0, "class ", c,
                    " has no instances (labels span [0, ",
                    ds.num_classes(), "))");
  }
}

struct SplitSpec {
  double holdout_fraction = 0.2;
  std::uint64_t seed = 0;
  bool stratified = true;
};

struct SplitIndices {
  std::vector<Index> train;
  std::vector<Index> holdout;
};

// Half-up rounding of n * fraction.
inline std::size_t round_count(std::size_t n, double fraction) {
  return static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * fraction + 0.5));
}

namespace detail {

inline constexpr std::array<char, 8> kMagic = {'S', 'U', 'B', 'S',
                                               'E', 'L', 'F', '1'};
inline constexpr std::uint16_t kVersion = 1;
inline constexpr std::size_t kHeaderBytes = 26;

template <typename T>
void put_le(std::string& buf, T v) {
  using U = std::make_unsigned_t<T>;
  auto u = static_cast<U>(v);
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    buf.push_back(static_cast<char>((u >> (8 * b)) & 0xFF));
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  T v = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    v |= static_cast<T>(p[b]) << (8 * b);
  }
  return v;
}

inline std::uint32_t crc32_of(const std::string& bytes, std::size_t offset,
                              std::size_t len) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  const auto* p = reinterpret_cast<const Bytef*>(bytes.data() + offset);
  // zlib takes uInt lengths; feed in chunks for large payloads.
  while (len > 0) {
    auto chunk = static_cast<uInt>(std::min<std::size_t>(len, 1u << 30));
    crc = ::crc32(crc, p, chunk);
    p += chunk;
    len -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(concat("cannot open ", path.string()));
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(concat("read failed for ", path.string()));
  return data;
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(concat("cannot open ", path.string(), " for writing"));
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw IoError(concat("write failed for ", path.string()));
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

inline FeatureMatrix parse_csv_features(const std::string& text) {
  std::vector<float> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto line = trim(lines[ln]);
    if (line.empty()) {
      // Trailing blank lines are tolerated; interior ones are not.
      bool rest_blank = std::all_of(lines.begin() + static_cast<long>(ln),
                                    lines.end(),
                                    [](auto l) { return trim(l).empty(); });
      if (rest_blank) break;
      throw ParseError(concat("empty line ", ln + 1, " in feature CSV"), ln + 1);
    }
    std::size_t fields = 0;
    std::size_t pos = 0;
    while (true) {
      auto comma = line.find(',', pos);
      auto field = trim(line.substr(
          pos, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - pos));
      std::string tmp(field);
      char* end = nullptr;
      float v = std::strtof(tmp.c_str(), &end);
      if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
        throw ParseError(concat("bad number '", tmp, "' at line ", ln + 1),
                         ln + 1);
      }
      if (!std::isfinite(v)) {
        throw ValidationError(concat("non-finite feature at line ", ln + 1));
      }
      values.push_back(v);
      ++fields;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (rows == 0) cols = fields;
    if (fields != cols) {
      throw ParseError(concat("line ", ln + 1, " has ", fields,
                              " fields, expected ", cols),
                       ln + 1);
    }
    ++rows;
  }
  if (rows == 0) throw ValidationError("feature CSV is empty");
  return FeatureMatrix(rows, cols, std::move(values));
}

}  // namespace detail

// Serializes to the SUBSELF1 byte layout.
inline std::string encode_features(const FeatureMatrix& m) {
  std::string buf;
  buf.reserve(detail::kHeaderBytes + 4 * m.values().size() + 4);
  buf.append(detail::kMagic.data(), detail::kMagic.size());
  detail::put_le<std::uint16_t>(buf, detail::kVersion);
  detail::put_le<std::uint64_t>(buf, m.rows());
  detail::put_le<std::uint64_t>(buf, m.cols());
  for (float v : m.values()) {
    detail::put_le<std::uint32_t>(buf, std::bit_cast<std::uint32_t>(v));
  }
  auto crc = detail::crc32_of(buf, detail::kHeaderBytes,
                              buf.size() - detail::kHeaderBytes);
  detail::put_le<std::uint32_t>(buf, crc);
  return buf;
}

inline FeatureMatrix decode_features(const std::string& bytes) {
  using detail::kHeaderBytes;
  if (bytes.size() < kHeaderBytes ||
      std::memcmp(bytes.data(), detail::kMagic.data(), 8) != 0) {
    throw FormatError("bad magic: not a SUBSELF1 feature file");
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  auto version = detail::get_le<std::uint16_t>(p + 8);
  if (version != detail::kVersion) {
    throw FormatError(detail::concat("unsupported feature file version ",
                                     version));
  }
  auto n = detail::get_le<std::uint64_t>(p + 10);
  auto d = detail::get_le<std::uint64_t>(p + 18);
  if (n == 0 || d == 0) {
    throw ValidationError(detail::concat("feature file declares ", n, "x", d));
  }
  // Guard the multiplication before trusting it.
  if (d > (bytes.size() / 4) || n > (bytes.size() / 4) / d) {
    throw TruncationError(detail::concat("feature file declares ", n, "x", d,
                                         " but holds only ", bytes.size(),
                                         " bytes"));
  }
  std::size_t payload = 4 * n * d;
  if (bytes.size() != kHeaderBytes + payload + 4) {
    throw TruncationError(detail::concat(
        "feature file declares ", n, "x", d, " (", kHeaderBytes + payload + 4,
        " bytes) but holds ", bytes.size(), " bytes"));
  }
  auto stored = detail::get_le<std::uint32_t>(p + kHeaderBytes + payload);
  if (stored != detail::crc32_of(bytes, kHeaderBytes, payload)) {
    throw FormatError("feature payload checksum mismatch");
  }
  std::vector<float> values(n * d);
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = std::bit_cast<float>(
        detail::get_le<std::uint32_t>(p + kHeaderBytes + 4 * k));
  }
  return FeatureMatrix(n, d, std::move(values));
}

// Reads a SUBSELF1 file, or comma-separated text when the path ends in .csv.
inline FeatureMatrix load_features(const std::filesystem::path& path) {
  auto bytes = detail::read_file(path);
  try {
    if (path.extension() == ".csv") return detail::parse_csv_features(bytes);
    return decode_features(bytes);
  } catch (const IoError&) {
    throw;
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const TruncationError& e) {
    throw TruncationError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

inline void save_features(const FeatureMatrix& m,
                          const std::filesystem::path& path) {
  detail::write_file(path, encode_features(m));
}

inline LabelVector parse_labels(std::string_view text) {
  auto lines = detail::split_lines(text);
  while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ValidationError("label file is empty");
  std::vector<int> labels;
  labels.reserve(lines.size());
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string tok(detail::trim(lines[ln]));
    bool digits = !tok.empty() && tok.size() <= 9 &&
                  std::all_of(tok.begin(), tok.end(),
                              [](char c) { return c >= '0' && c <= '9'; });
    if (!digits) {
      throw ParseError(detail::concat("line ", ln + 1,
                                      ": expected a non-negative integer, got '",
                                      tok, "'"),
                       ln + 1);
    }
    labels.push_back(std::stoi(tok));
  }
  return LabelVector(std::move(labels));
}

inline LabelVector load_labels(const std::filesystem::path& path) {
  auto text = detail::read_file(path);
  try {
    return parse_labels(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

inline void save_labels(const LabelVector& labels,
                        const std::filesystem::path& path) {
  std::string out;
  for (int l : labels.values()) {
    out += std::to_string(l);
    out += '\n';
  }
  detail::write_file(path, out);
}

// Seeded train/holdout partition. Holdout size is round(n * fraction);
// stratified splits apportion it across classes by largest remainder so each
// class is within one instance of its exact share. Both index lists are
// returned in ascending order.
inline SplitIndices split_indices(const LabelVector& labels,
                                  const SplitSpec& spec) {
  const std::size_t n = labels.size();
  detail::require(spec.holdout_fraction > 0.0 && spec.holdout_fraction < 1.0,
                  "holdout fraction must lie in (0,1), got ",
                  spec.holdout_fraction);
  const std::size_t total = round_count(n, spec.holdout_fraction);
  detail::require(total >= 1 && total < n, "holdout fraction ",
                  spec.holdout_fraction, " leaves an empty side for n=", n);

  std::mt19937_64 rng(spec.seed);
  std::vector<char> in_holdout(n, 0);
  if (!spec.stratified) {
    std::vector<Index> order(n);
    for (Index i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t k = 0; k < total; ++k) in_holdout[order[k]] = 1;
  } else {
    const auto classes = static_cast<std::size_t>(labels.num_classes());
    std::vector<std::vector<Index>> members(classes);
    for (Index i = 0; i < n; ++i) {
      members[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    std::vector<std::size_t> quota(classes);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < classes; ++c) {
      double exact = static_cast<double>(members[c].size()) *
                     spec.holdout_fraction;
      quota[c] = static_cast<std::size_t>(std::floor(exact));
      assigned += quota[c];
      remainders.emplace_back(exact - std::floor(exact), c);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) {
                       return a.first > b.first;
                     });
    for (std::size_t k = 0; assigned < total && k < remainders.size(); ++k) {
      auto c = remainders[k].second;
      if (quota[c] < members[c].size()) {
        ++quota[c];
        ++assigned;
      }
    }
    for (std::size_t c = 0; c < classes; ++c) {
      std::shuffle(members[c].begin(), members[c].end(), rng);
      for (std::size_t k = 0; k < quota[c]; ++k) in_holdout[members[c][k]] = 1;
    }
  }
  SplitIndices out;
  for (Index i = 0; i < n; ++i) {
    (in_holdout[i] ? out.holdout : out.train).push_back(i);
  }
  return out;
}

inline std::pair<LabeledDataset, LabeledDataset> split(
    const LabeledDataset& ds, const SplitSpec& spec) {
  auto idx = split_indices(ds.labels, spec);
  return {ds.subset(idx.train), ds.subset(idx.holdout)};
}

// Balanced Gaussian mixture. Class means are standard-normal draws scaled by
// `sep`; samples add unit-variance isotropic noise; labels cycle 0..C-1.
inline LabeledDataset gen_synthetic(std::size_t n, std::size_t d, int classes,
                                    double sep, std::uint64_t seed) {
  detail::require(classes >= 1, "class count must be positive");
  detail::require(n >= static_cast<std::size_t>(classes), "n=", n,
                  " is smaller than the class count ", classes);
  detail::require(d >= 1, "dimension must be positive");
  detail::require(sep > 0.0 && std::isfinite(sep),
                  "separation must be positive, got ", sep);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto c_count = static_cast<std::size_t>(classes);
  std::vector<double> means(c_count * d);
  for (auto& m : means) m = sep * normal(rng);
  std::vector<float> values(n * d);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = i % c_count;
    labels[i] = static_cast<int>(c);
    for (std::size_t j = 0; j < d; ++j) {
      values[i * d + j] = static_cast<float>(means[c * d + j] + normal(rng));
    }
  }
  return {FeatureMatrix(n, d, std::move(values)),
          LabelVector(std::move(labels), classes)};
}

}  // namespace subsel

#endif  // SUBSEL_DATASET_HPP_
