#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace compsketch {

// Stream tags used to derive independent substreams from one master seed.
// Every random quantity in a replicate gets its own (replicate, stream) pair
// so that adding or removing draws in one stream never perturbs another.
enum class Stream : std::uint64_t {
  kDesign1 = 1,
  kDesign2 = 2,
  kTruth = 3,
  kNoise1 = 4,
  kNoise2 = 5,
  kSketch = 6,
  kCell = 7,
};

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic seed derivation: master seed + (replicate, stream) -> engine seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate,
                          std::uint64_t stream);

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate,
                                 Stream stream) {
  return derive_seed(master, replicate, static_cast<std::uint64_t>(stream));
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

// Column-major fill with iid N(0,1) entries; deterministic for a given seed.
Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Engine& eng);
Eigen::VectorXd gaussian_vector(Eigen::Index n, Engine& eng);

}  // namespace compsketch
