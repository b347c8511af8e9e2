#include "core/rng.hpp"

namespace compsketch {

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate,
                          std::uint64_t stream) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ replicate);
  h = splitmix64(h ^ stream);
  return h;
}

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Engine& eng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      m(i, j) = normal(eng);
    }
  }
  return m;
}

Eigen::VectorXd gaussian_vector(Eigen::Index n, Engine& eng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = normal(eng);
  }
  return v;
}

}  // namespace compsketch
