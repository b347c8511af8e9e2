#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace compsketch {

struct TwoSampleData {
  Eigen::MatrixXd x1;  // n1 x p
  Eigen::VectorXd y1;  // n1
  Eigen::MatrixXd x2;  // n2 x p
  Eigen::VectorXd y2;  // n2
};

// Throws on inconsistent dimensions, non-finite entries, or when the stacked
// design leaves no room for a sketch (n1 + n2 <= p).
void validate(const TwoSampleData& data);

struct NullSpace {
  Eigen::MatrixXd a;  // n x m, orthonormal columns spanning null(x^T)
  Eigen::Index rank = 0;
  bool rank_deficient = false;
};

// Orthonormal basis of the orthogonal complement of col(x), built by
// projecting a seeded Gaussian matrix and orthonormalizing.  A degenerate
// draw is retried with seed+1, seed+2 before giving up.
NullSpace null_space_basis(const Eigen::MatrixXd& x, std::uint64_t seed);

struct Sketch {
  Eigen::MatrixXd w;          // m x p
  Eigen::VectorXd z;          // m
  Eigen::Index m = 0;         // sketch dimension, n1 + n2 - rank
  Eigen::VectorXd col_norms;  // p, Euclidean norms of the columns of w
  Eigen::Index rank = 0;      // rank of the stacked design
  bool rank_deficient = false;
};

Sketch complementary_sketch(const TwoSampleData& data, std::uint64_t seed);

// Closed form of w^T w: 4 (X1^T X1)(X^T X)^{-1}(X2^T X2), where X stacks the
// two designs.  Requires the stacked design to have full column rank.
Eigen::MatrixXd gram_oracle(const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2);

// Combined Gram matrix of the decoupled designs x1 (L + I) and x2 (L - I)
// with L = (G1+G2)^{-1}(G2-G1); equals gram_oracle(x1, x2) in exact
// arithmetic.
Eigen::MatrixXd decoupled_gram_oracle(const Eigen::MatrixXd& x1,
                                      const Eigen::MatrixXd& x2);

}  // namespace compsketch
