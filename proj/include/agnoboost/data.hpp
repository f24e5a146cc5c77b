#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agnoboost/matrix.hpp"
#include "agnoboost/weighted_set.hpp"

namespace agnoboost {

struct LabeledDataset {
  DataMatrix features;
  std::vector<int> labels;  // strictly -1/+1
  std::string name;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return features.cols(); }
};

struct CsvSchema {
  std::size_t label_column = 0;
  char delimiter = ',';
  bool header = false;
};

// Parsed CSV with raw (string) labels, before binarization. Rows whose
// feature cells fail numeric parsing are rejected and counted.
struct RawDataset {
  DataMatrix features;
  std::vector<std::string> raw_labels;
  std::string name;
  std::size_t rejected_rows = 0;
};

RawDataset load_csv(const std::string& path, const CsvSchema& schema);

// Label binarization. An empty positive_label selects the default rule:
// numeric {-1,+1} labels pass through unchanged; otherwise the most frequent
// raw label maps to +1 (ties resolved toward the lexicographically larger
// label) and the rest to -1.
struct BinarizeRule {
  std::string positive_label;  // empty = default rule
};

LabeledDataset binarize_labels(const RawDataset& raw,
                               const BinarizeRule& rule = {});

// Writes features (and the label as the last column) with enough digits to
// round-trip doubles exactly.
void save_csv(const LabeledDataset& ds, const std::string& path);

struct SplitSpec {
  std::size_t k = 50;
  double drop_fraction = 0.0;  // in [0, 1)
  double noise_rate = 0.0;     // in [0, 0.5), training folds only
  std::uint64_t seed = 0;
};

// Removes the labels of floor(fraction * n) uniformly random rows; returns
// (labeled subset, unlabeled feature pool). Both halves keep row order.
std::pair<LabeledDataset, DataMatrix> drop_labels(const LabeledDataset& ds,
                                                  double fraction,
                                                  std::uint64_t seed);

// Flips each label independently with the given probability.
LabeledDataset inject_noise(const LabeledDataset& ds, double rate,
                            std::uint64_t seed);

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Seeded permutation partitioned into k near-equal folds; fold i is the test
// side and the rest train. Indices are returned sorted.
std::vector<FoldSplit> kfold_splits(std::size_t n, std::size_t k,
                                    std::uint64_t seed);

LabeledDataset gather(const LabeledDataset& ds,
                      std::span<const std::size_t> idx);
WeightedLabeledSet as_weighted(const LabeledDataset& ds);

// Uniform features on {-1,+1}^n labeled by a seeded random halfspace
// sign(w^T x - theta), each label flipped with probability label_noise.
// The exhaustive flag enumerates all 2^n points once instead of sampling.
LabeledDataset synth_halfspace_hypercube(std::size_t n, std::size_t count,
                                         double label_noise,
                                         std::uint64_t seed,
                                         bool exhaustive = false);

// Labeled data from a biased product distribution D over {-1,+1}^n plus an
// unlabeled pool from the uniform source Q, with the pointwise density ratio
// dD_X/dQ kept <= ratio_bound by spreading the log budget evenly over the
// coordinates (each coordinate gets P(+1) = ratio_bound^{1/n} / 2 under D).
struct CovariateShiftData {
  LabeledDataset labeled;     // from D
  DataMatrix unlabeled_q;     // features from Q
  std::vector<double> bias_d; // per-coordinate P(x_i = +1) under D
};

CovariateShiftData synth_covariate_shift(std::size_t n, std::size_t count_d,
                                         std::size_t count_q,
                                         double ratio_bound,
                                         std::uint64_t seed);

// ---------------------------------------------------------------------------
// Dataset manifest: name -> file, schema, binarization rule, checksum.
// ---------------------------------------------------------------------------

struct ManifestEntry {
  std::string path;  // relative paths resolve against the manifest location
  CsvSchema schema;
  std::string positive_label;  // empty = default binarization rule
  std::string sha256;          // verified by the fetch script, recorded here
};

std::vector<std::pair<std::string, ManifestEntry>> load_manifest(
    const std::string& path);

LabeledDataset load_from_manifest(const std::string& manifest_path,
                                  const std::string& name);

}  // namespace agnoboost
