#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <thread>
#include <vector>

#include "wavepkt/errors.hpp"

namespace wavepkt {

/// Counter-based normal deviates.
///
/// Uniform draw `i` is SplitMix64's finalizer applied to seed + (i + 1) * phi64,
/// mapped to (0, 1] with 53 bits. Normal draw `i` is the cosine branch of
/// Box-Muller on uniforms 2i and 2i + 1. Any sample can be generated
/// independently of the others, so work can be split arbitrarily.
class CounterNormal {
 public:
  explicit CounterNormal(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t counter) const {
    return mix(seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
  }

  double uniform(std::uint64_t counter) const {
    return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
  }

  double normal(std::uint64_t index) const {
    const double u1 = uniform(2 * index);
    const double u2 = uniform(2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t seed_;
};

/// Sample mean and its standard error, per observable component.
template <typename Scalar>
struct McEstimate {
  Eigen::Array<Scalar, Eigen::Dynamic, 1> mean;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> std_error;
};

struct McOptions {
  std::uint64_t n_samples = 100000;
  std::uint64_t seed = 42;
  unsigned workers = 0;  ///< 0 selects hardware concurrency
};

namespace detail {

template <typename Scalar>
struct RunningMoments {
  std::uint64_t count = 0;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> mean;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> m2;

  explicit RunningMoments(Eigen::Index dims = 0)
      : mean(Eigen::Array<Scalar, Eigen::Dynamic, 1>::Zero(dims)),
        m2(Eigen::Array<Scalar, Eigen::Dynamic, 1>::Zero(dims)) {}

  template <typename Derived>
  void push(const Eigen::ArrayBase<Derived>& value) {
    ++count;
    const Eigen::Array<Scalar, Eigen::Dynamic, 1> delta = value - mean;
    mean += delta / static_cast<Scalar>(count);
    m2 += delta * (value - mean);
  }

  // Chan et al. pairwise combination.
  void merge(const RunningMoments& other) {
    if (other.count == 0) return;
    const Scalar na = static_cast<Scalar>(count);
    const Scalar nb = static_cast<Scalar>(other.count);
    const Scalar n = na + nb;
    const Eigen::Array<Scalar, Eigen::Dynamic, 1> delta = other.mean - mean;
    mean += delta * (nb / n);
    m2 += other.m2 + delta.square() * (na * nb / n);
    count += other.count;
  }
};

inline constexpr std::uint64_t kChunkSize = 4096;

}  // namespace detail

/// Monte Carlo average of `observable(z)` over standard normal draws z.
///
/// Samples are processed in fixed chunks whose partial moments are combined in
/// chunk order, so the result is bit-identical for any worker count.
template <typename Scalar, typename Observable>
McEstimate<Scalar> normal_average(const McOptions& opts, Eigen::Index dims, Observable&& observable) {
  if (opts.n_samples < 2) throw DomainError("Monte Carlo needs at least two samples");
  const CounterNormal rng(opts.seed);
  const std::uint64_t n_chunks = (opts.n_samples + detail::kChunkSize - 1) / detail::kChunkSize;
  std::vector<detail::RunningMoments<Scalar>> partial(n_chunks, detail::RunningMoments<Scalar>(dims));

  auto run_chunk = [&](std::uint64_t chunk) {
    auto& acc = partial[chunk];
    const std::uint64_t begin = chunk * detail::kChunkSize;
    const std::uint64_t end = std::min(begin + detail::kChunkSize, opts.n_samples);
    for (std::uint64_t i = begin; i < end; ++i)
      acc.push(observable(static_cast<Scalar>(rng.normal(i))));
  };

  unsigned workers = opts.workers != 0 ? opts.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, n_chunks));
  if (workers == 1) {
    for (std::uint64_t chunk = 0; chunk < n_chunks; ++chunk) run_chunk(chunk);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t chunk = w; chunk < n_chunks; chunk += workers) run_chunk(chunk);
      });
  }

  detail::RunningMoments<Scalar> total(dims);
  for (const auto& p : partial) total.merge(p);
  const Scalar n = static_cast<Scalar>(total.count);
  return {total.mean, (total.m2 / (n - 1) / n).sqrt()};
}

}  // namespace wavepkt
