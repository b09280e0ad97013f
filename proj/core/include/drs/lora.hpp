#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "drs/random.hpp"

namespace drs {

// Frozen weight W0 (d x k) plus the trainable low-rank pair B (d x r),
// A (r x k). W0 has no mutating accessor; only B and A change, through
// step().
class LoraLayer {
 public:
  // Throws Error(dimension_mismatch) and Error(rank_too_large) unless
  // 1 <= r < min(d, k).
  LoraLayer(Eigen::MatrixXd w0, Eigen::MatrixXd b, Eigen::MatrixXd a);

  // B = 0, A ~ U(-scale, scale).
  static LoraLayer initialize(Eigen::MatrixXd w0, std::size_t rank, Rng& rng,
                              double scale = 0.01);

  const Eigen::MatrixXd& w0() const { return w0_; }
  const Eigen::MatrixXd& b() const { return b_; }
  const Eigen::MatrixXd& a() const { return a_; }
  Eigen::Index d() const { return w0_.rows(); }
  Eigen::Index k() const { return w0_.cols(); }
  Eigen::Index rank() const { return a_.rows(); }

  // B -= lr * dB, A -= lr * dA. Throws Error(dimension_mismatch).
  void step(const Eigen::MatrixXd& grad_b, const Eigen::MatrixXd& grad_a, double lr);

  struct ParameterRef {
    char matrix;  // 'B' or 'A'
    Eigen::Index row;
    Eigen::Index col;
    bool operator==(const ParameterRef&) const = default;
  };
  // Exactly the entries of B and A, r * (d + k) of them.
  std::vector<ParameterRef> trainable_parameters() const;

 private:
  Eigen::MatrixXd w0_;
  Eigen::MatrixXd b_;
  Eigen::MatrixXd a_;
};

// h = W0 x + B (A x); the d x k product BA is never formed.
// Throws Error(dimension_mismatch).
Eigen::VectorXd lora_forward(const LoraLayer& layer, const Eigen::VectorXd& x);
Eigen::VectorXd frozen_forward(const LoraLayer& layer, const Eigen::VectorXd& x);
Eigen::VectorXd adapter_forward(const LoraLayer& layer, const Eigen::VectorXd& x);

struct ParamCounts {
  std::uint64_t full = 0;  // d * k
  std::uint64_t lora = 0;  // r * (d + k)
  double ratio = 0.0;      // lora / full
};

// Throws Error(rank_too_large) unless r < min(d, k), Error(invalid_argument)
// for r = 0.
ParamCounts param_counts(std::uint64_t d, std::uint64_t k, std::uint64_t r);

struct GradCheckResult {
  Eigen::MatrixXd grad_b;  // g (A x)^T
  Eigen::MatrixXd grad_a;  // (B^T g) x^T
  Eigen::MatrixXd numeric_b;
  Eigen::MatrixXd numeric_a;
  // Largest absolute deviation over both matrices divided by the largest
  // gradient magnitude seen on either side; 0 when every gradient is zero.
  double max_relative_error = 0.0;
};

// Gradients of the scalar g . h with respect to B and A, checked against
// central differences with step `h`. Throws Error(dimension_mismatch).
GradCheckResult grad_check(const LoraLayer& layer, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& g, double h = 1e-5);

// Named weight matrices of a toy model with per-site adapter flags.
struct AdapterSite {
  std::string name;
  std::uint64_t d = 0;
  std::uint64_t k = 0;
  bool adapted = false;
};

class AdapterRegistry {
 public:
  void add(std::string name, std::uint64_t d, std::uint64_t k, bool adapted);
  const std::vector<AdapterSite>& sites() const { return sites_; }
  // full counts every site, lora only adapted ones. Throws like param_counts.
  ParamCounts totals(std::uint64_t r) const;

  // `layers` attention blocks of width `width`: query, key, value and output
  // projections plus a 4x feed-forward pair; query and value adapted.
  static AdapterRegistry toy_transformer(std::size_t layers, std::uint64_t width);

 private:
  std::vector<AdapterSite> sites_;
};

// Randomized self-check used by the lora-demo command.
struct LoraDemoResult {
  std::uint64_t d = 0, k = 0, r = 0;
  ParamCounts counts;
  ParamCounts toy_model;  // query/value adapters of a small registry
  std::size_t layers_checked = 0;
  double worst_forward_error = 0.0;
  double worst_gradient_error = 0.0;
  double forward_tolerance = 0.0;
  double gradient_tolerance = 0.0;
  bool passed() const {
    return worst_forward_error <= forward_tolerance && worst_gradient_error < gradient_tolerance;
  }
};

// Counts for (d, k, r) plus a randomized forward and gradient check over
// `layers` small layers. Throws like param_counts.
LoraDemoResult run_lora_demo(std::uint64_t d, std::uint64_t k, std::uint64_t r,
                             std::size_t layers, std::uint64_t seed);

}  // namespace drs
