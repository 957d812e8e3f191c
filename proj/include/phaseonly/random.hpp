#pragma once

#include <cstdint>
#include <random>

#include "phaseonly/types.hpp"

namespace phaseonly {

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

// std::mt19937_64 (fully specified by the standard) with our own uniform and
// Box-Muller transforms, since the std distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }
  double uniform();                   // [0, 1)
  double uniform(double lo, double hi);
  std::size_t index(std::size_t n);   // [0, n)
  double normal();
  Complex complex_normal();           // E|z|^2 = 1
  ComplexVector complex_normal_vector(std::size_t n);

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace phaseonly
