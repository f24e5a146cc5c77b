#include "agnoboost/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "agnoboost/error.hpp"
#include "agnoboost/hypothesis.hpp"
#include "agnoboost/rng.hpp"

namespace agnoboost {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cells;
}

bool parse_double(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (*first == '+') ++first;  // from_chars rejects an explicit plus
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

}  // namespace

RawDataset load_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  RawDataset out;
  out.name = std::filesystem::path(path).stem().string();

  std::string line;
  std::size_t lineno = 0;
  std::size_t ncols = 0;
  bool header_skipped = !schema.header;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (!header_skipped) {
      header_skipped = true;
      continue;
    }
    const std::vector<std::string> cells = split_line(line, schema.delimiter);
    if (ncols == 0) {
      ncols = cells.size();
      if (schema.label_column >= ncols)
        throw DataError("'" + path + "': label column " +
                        std::to_string(schema.label_column) +
                        " missing (rows have " + std::to_string(ncols) +
                        " columns)");
    } else if (cells.size() != ncols) {
      throw DataError("'" + path + "' row " + std::to_string(lineno) +
                      ": expected " + std::to_string(ncols) +
                      " columns, got " + std::to_string(cells.size()));
    }

    std::vector<double> row;
    row.reserve(ncols - 1);
    bool ok = true;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (c == schema.label_column) continue;
      double v;
      if (!parse_double(cells[c], v)) {
        ok = false;
        break;
      }
      row.push_back(v);
    }
    if (!ok) {
      ++out.rejected_rows;
      continue;
    }
    out.features.append_row(row);
    out.raw_labels.push_back(trim(cells[schema.label_column]));
  }

  if (out.raw_labels.empty())
    throw DataError("'" + path + "': parse error, no usable data rows" +
                    (out.rejected_rows > 0
                         ? " (" + std::to_string(out.rejected_rows) +
                               " rejected)"
                         : ""));
  return out;
}

LabeledDataset binarize_labels(const RawDataset& raw,
                               const BinarizeRule& rule) {
  std::map<std::string, std::size_t> counts;
  for (const auto& l : raw.raw_labels) ++counts[l];
  if (counts.size() < 2)
    throw DataError("dataset '" + raw.name +
                    "' has a single label class; cannot binarize");

  LabeledDataset out;
  out.features = raw.features;
  out.name = raw.name;
  out.labels.reserve(raw.raw_labels.size());

  if (!rule.positive_label.empty()) {
    if (counts.find(rule.positive_label) == counts.end())
      throw DataError("positive label '" + rule.positive_label +
                      "' does not occur in dataset '" + raw.name + "'");
    for (const auto& l : raw.raw_labels)
      out.labels.push_back(l == rule.positive_label ? 1 : -1);
    return out;
  }

  // Numeric {-1,+1} labels pass through unchanged.
  bool numeric_pm_one = true;
  for (const auto& [label, n] : counts) {
    (void)n;
    double v;
    if (!parse_double(label, v) || (v != 1.0 && v != -1.0)) {
      numeric_pm_one = false;
      break;
    }
  }
  if (numeric_pm_one) {
    for (const auto& l : raw.raw_labels) {
      double v;
      parse_double(l, v);
      out.labels.push_back(v == 1.0 ? 1 : -1);
    }
    return out;
  }

  // Most frequent class vs rest; ties go to the lexicographically larger
  // label (std::map iterates ascending, >= keeps the later one).
  std::string positive;
  std::size_t best = 0;
  for (const auto& [label, n] : counts) {
    if (n >= best) {
      best = n;
      positive = label;
    }
  }
  for (const auto& l : raw.raw_labels) out.labels.push_back(l == positive ? 1 : -1);
  return out;
}

void save_csv(const LabeledDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  char buf[64];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto row = ds.features.row(i);
    for (double v : row) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << buf << ',';
    }
    out << ds.labels[i] << '\n';
  }
  if (!out) throw DataError("write failed for '" + path + "'");
}

std::pair<LabeledDataset, DataMatrix> drop_labels(const LabeledDataset& ds,
                                                  double fraction,
                                                  std::uint64_t seed) {
  if (!(fraction >= 0.0) || fraction >= 1.0)
    throw std::invalid_argument("drop_labels: fraction must lie in [0, 1)");
  const std::size_t n = ds.size();
  const std::size_t k = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n)));

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(idx);

  std::vector<bool> dropped(n, false);
  for (std::size_t i = 0; i < k; ++i) dropped[idx[i]] = true;

  LabeledDataset labeled;
  labeled.features = DataMatrix(ds.dim());
  labeled.name = ds.name;
  DataMatrix pool(ds.dim());
  for (std::size_t i = 0; i < n; ++i) {
    if (dropped[i]) {
      pool.append_row(ds.features.row(i));
    } else {
      labeled.features.append_row(ds.features.row(i));
      labeled.labels.push_back(ds.labels[i]);
    }
  }
  return {std::move(labeled), std::move(pool)};
}

LabeledDataset inject_noise(const LabeledDataset& ds, double rate,
                            std::uint64_t seed) {
  if (!(rate >= 0.0) || rate >= 0.5)
    throw std::invalid_argument("inject_noise: rate must lie in [0, 0.5)");
  LabeledDataset out = ds;
  // The flip coin mixes the current label so reapplication draws fresh noise
  // rather than undoing itself; each label still flips with probability rate.
  for (std::size_t i = 0; i < out.labels.size(); ++i) {
    const std::uint64_t tag = out.labels[i] > 0 ? 0x9eu : 0x5bu;
    const std::uint64_t h =
        splitmix64(derive_seed(seed, Stream::Noise, i) ^ tag);
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    if (u < rate) out.labels[i] = -out.labels[i];
  }
  return out;
}

std::vector<FoldSplit> kfold_splits(std::size_t n, std::size_t k,
                                    std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("kfold_splits: k must be >= 2");
  if (n < k) throw std::invalid_argument("kfold_splits: need n >= k");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(perm);

  std::vector<FoldSplit> out(k);
  const std::size_t base = n / k;
  const std::size_t rem = n % k;
  std::size_t cursor = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < rem ? 1 : 0);
    out[f].test.assign(perm.begin() + cursor, perm.begin() + cursor + size);
    cursor += size;
  }
  for (std::size_t f = 0; f < k; ++f) {
    out[f].train.reserve(n - out[f].test.size());
    for (std::size_t g = 0; g < k; ++g) {
      if (g == f) continue;
      out[f].train.insert(out[f].train.end(), out[g].test.begin(),
                          out[g].test.end());
    }
    std::sort(out[f].train.begin(), out[f].train.end());
    std::sort(out[f].test.begin(), out[f].test.end());
  }
  return out;
}

LabeledDataset gather(const LabeledDataset& ds,
                      std::span<const std::size_t> idx) {
  LabeledDataset out;
  out.features = DataMatrix(ds.dim());
  out.features.reserve_rows(idx.size());
  out.labels.reserve(idx.size());
  out.name = ds.name;
  for (std::size_t i : idx) {
    out.features.append_row(ds.features.row(i));
    out.labels.push_back(ds.labels[i]);
  }
  return out;
}

WeightedLabeledSet as_weighted(const LabeledDataset& ds) {
  return uniform_weighted(ds.features, ds.labels);
}

LabeledDataset synth_halfspace_hypercube(std::size_t n, std::size_t count,
                                         double label_noise,
                                         std::uint64_t seed, bool exhaustive) {
  if (n < 1) throw std::invalid_argument("synth_halfspace: n must be >= 1");
  if (exhaustive && n > 22)
    throw std::invalid_argument("synth_halfspace: exhaustive mode caps n at 22");

  Rng model_rng(derive_seed(seed, Stream::SynthModel));
  std::vector<double> w(n);
  for (double& wi : w) wi = model_rng.uniform(-1.0, 1.0);
  const double theta = model_rng.uniform(-1.0, 1.0);

  LabeledDataset out;
  out.features = DataMatrix(n);
  out.name = "halfspace_hypercube";

  auto label_of = [&](std::span<const double> x) {
    double dot = -theta;
    for (std::size_t i = 0; i < n; ++i) dot += w[i] * x[i];
    return sign_of(dot);
  };

  std::vector<double> row(n);
  if (exhaustive) {
    const std::size_t total = std::size_t{1} << n;
    out.features.reserve_rows(total);
    for (std::size_t p = 0; p < total; ++p) {
      for (std::size_t i = 0; i < n; ++i)
        row[i] = (p >> i) & 1 ? 1.0 : -1.0;
      out.features.append_row(row);
      out.labels.push_back(label_of(row));
    }
  } else {
    Rng row_rng(derive_seed(seed, Stream::SynthRows));
    out.features.reserve_rows(count);
    for (std::size_t p = 0; p < count; ++p) {
      for (double& v : row) v = row_rng.rademacher();
      out.features.append_row(row);
      out.labels.push_back(label_of(row));
    }
  }

  if (label_noise > 0.0)
    out = inject_noise(out, label_noise, derive_seed(seed, Stream::SynthNoise));
  return out;
}

CovariateShiftData synth_covariate_shift(std::size_t n, std::size_t count_d,
                                         std::size_t count_q,
                                         double ratio_bound,
                                         std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("synth_covariate_shift: n must be >= 1");
  if (!(ratio_bound >= 1.0))
    throw std::invalid_argument("synth_covariate_shift: ratio bound must be >= 1");
  if (std::log2(ratio_bound) > static_cast<double>(n))
    throw DataError("synth_covariate_shift: ratio bound " +
                    std::to_string(ratio_bound) + " infeasible for n = " +
                    std::to_string(n) + " (max 2^n)");

  // Per-coordinate factor f = ratio_bound^{1/n}, nudged down so the realized
  // product never exceeds the bound in floating point.
  double f = std::exp(std::log(ratio_bound) / static_cast<double>(n));
  f = std::nextafter(std::nextafter(f, 0.0), 0.0);
  f = std::max(1.0, f);

  CovariateShiftData out;
  out.bias_d.assign(n, f / 2.0);

  Rng model_rng(derive_seed(seed, Stream::SynthModel));
  std::vector<double> w(n);
  for (double& wi : w) wi = model_rng.uniform(-1.0, 1.0);
  const double theta = model_rng.uniform(-1.0, 1.0);
  auto label_of = [&](std::span<const double> x) {
    double dot = -theta;
    for (std::size_t i = 0; i < n; ++i) dot += w[i] * x[i];
    return sign_of(dot);
  };

  Rng row_rng(derive_seed(seed, Stream::SynthRows));
  std::vector<double> row(n);

  out.labeled.features = DataMatrix(n);
  out.labeled.features.reserve_rows(count_d);
  out.labeled.name = "covariate_shift_d";
  for (std::size_t p = 0; p < count_d; ++p) {
    for (std::size_t i = 0; i < n; ++i)
      row[i] = row_rng.bernoulli(out.bias_d[i]) ? 1.0 : -1.0;
    out.labeled.features.append_row(row);
    out.labeled.labels.push_back(label_of(row));
  }

  out.unlabeled_q = DataMatrix(n);
  out.unlabeled_q.reserve_rows(count_q);
  for (std::size_t p = 0; p < count_q; ++p) {
    for (double& v : row) v = row_rng.rademacher();
    out.unlabeled_q.append_row(row);
  }
  return out;
}

std::vector<std::pair<std::string, ManifestEntry>> load_manifest(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("manifest '" + path + "': " + e.what());
  }

  std::vector<std::pair<std::string, ManifestEntry>> out;
  if (!j.contains("datasets") || !j["datasets"].is_object())
    throw DataError("manifest '" + path + "': missing 'datasets' object");
  for (const auto& [name, entry] : j["datasets"].items()) {
    ManifestEntry m;
    m.path = entry.at("path").get<std::string>();
    m.schema.label_column = entry.at("label_column").get<std::size_t>();
    if (entry.contains("delimiter"))
      m.schema.delimiter = entry.at("delimiter").get<std::string>().at(0);
    if (entry.contains("header")) m.schema.header = entry.at("header").get<bool>();
    if (entry.contains("positive_label"))
      m.positive_label = entry.at("positive_label").get<std::string>();
    if (entry.contains("sha256")) m.sha256 = entry.at("sha256").get<std::string>();
    out.emplace_back(name, std::move(m));
  }
  return out;
}

LabeledDataset load_from_manifest(const std::string& manifest_path,
                                  const std::string& name) {
  const auto entries = load_manifest(manifest_path);
  for (const auto& [entry_name, entry] : entries) {
    if (entry_name != name) continue;
    std::filesystem::path p(entry.path);
    if (p.is_relative())
      p = std::filesystem::path(manifest_path).parent_path() / p;
    RawDataset raw = load_csv(p.string(), entry.schema);
    raw.name = name;
    return binarize_labels(raw, {entry.positive_label});
  }
  throw DataError("dataset '" + name + "' not found in manifest '" +
                  manifest_path + "'");
}

}  // namespace agnoboost
