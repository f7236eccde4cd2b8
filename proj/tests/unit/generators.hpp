#pragma once

// Seeded random PairedSample generators shared by the property tests.

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ahi/ingest.hpp"

namespace testgen {

/// AHI-like values in [0, 90) with a fraction rounded to integers so that
/// ties and exact threshold hits occur.
inline double ahi_value(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 90.0);
  std::bernoulli_distribution round_it(0.3);
  const double v = u(rng);
  return round_it(rng) ? std::round(v) : v;
}

inline ahi::PairedSample random_sample(std::mt19937_64& rng, std::size_t min_n = 3, std::size_t max_n = 50) {
  std::uniform_int_distribution<std::size_t> len(min_n, max_n);
  std::normal_distribution<double> noise(0.0, 8.0);
  const std::size_t n = len(rng);
  std::vector<double> ref(n), res(n);
  for (std::size_t i = 0; i < n; ++i) {
    ref[i] = ahi_value(rng);
    res[i] = std::max(0.0, ref[i] + noise(rng));
  }
  return ahi::PairedSample::create(ref, res);
}

/// Random sample where both vectors are non-constant.
inline ahi::PairedSample random_varying_sample(std::mt19937_64& rng, std::size_t min_n = 3, std::size_t max_n = 50) {
  while (true) {
    auto s = random_sample(rng, min_n, max_n);
    const auto& r = s.reference();
    const auto& m = s.measured();
    bool vr = false, vm = false;
    for (std::size_t i = 1; i < s.size(); ++i) {
      vr |= r[i] != r[0];
      vm |= m[i] != m[0];
    }
    if (vr && vm) return s;
  }
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testgen
