#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace agnoboost {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Named generator streams. Each consumer derives its own child seed so the
// draw sequence of one component never depends on how often another runs.
enum class Stream : std::uint64_t {
  LabeledSample = 1,
  UnlabeledSample = 2,
  HoldoutSample = 3,
  Round = 4,
  PabShuffle = 5,
  Fold = 6,
  Noise = 7,
  Drop = 8,
  HoldoutCarve = 9,
  SynthModel = 10,
  SynthRows = 11,
  SynthNoise = 12,
  InnerSplit = 13,
};

inline std::uint64_t derive_seed(std::uint64_t master, Stream stream,
                                 std::uint64_t index = 0) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  h = splitmix64(h ^ index);
  return h;
}

// mt19937_64 with explicit conversions to doubles/indices so draws are
// bit-identical across platforms (the std distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform in [0, n), unbiased via rejection
  std::size_t uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be > 0");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (0 - un) % un;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return static_cast<std::size_t>(x % un);
    }
  }

  bool bernoulli(double p) { return uniform() < p; }

  int rademacher() { return bernoulli(0.5) ? 1 : -1; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_index(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

// Samples indices proportionally to a fixed nonnegative weight vector.
class CumulativePicker {
 public:
  explicit CumulativePicker(std::span<const double> weights) {
    cum_.reserve(weights.size());
    double acc = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("CumulativePicker: negative weight");
      acc += w;
      cum_.push_back(acc);
    }
    if (cum_.empty() || !(acc > 0.0))
      throw std::invalid_argument("CumulativePicker: total weight must be > 0");
  }

  std::size_t pick(Rng& rng) const {
    const double u = rng.uniform() * cum_.back();
    std::size_t lo = 0, hi = cum_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cum_[mid] > u) hi = mid; else lo = mid + 1;
    }
    return lo;
  }

 private:
  std::vector<double> cum_;
};

}  // namespace agnoboost
