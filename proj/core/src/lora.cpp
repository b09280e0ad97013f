#include "drs/lora.hpp"

#include <algorithm>
#include <cmath>

#include "drs/error.hpp"

namespace drs {

namespace {

std::string shape(const Eigen::MatrixXd& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::dimension_mismatch, what);
}

}  // namespace

LoraLayer::LoraLayer(Eigen::MatrixXd w0, Eigen::MatrixXd b, Eigen::MatrixXd a)
    : w0_(std::move(w0)), b_(std::move(b)), a_(std::move(a)) {
  require(b_.rows() == w0_.rows(), "B is " + shape(b_) + " but W0 is " + shape(w0_));
  require(a_.cols() == w0_.cols(), "A is " + shape(a_) + " but W0 is " + shape(w0_));
  require(b_.cols() == a_.rows(), "B is " + shape(b_) + " but A is " + shape(a_));
  if (a_.rows() == 0) throw Error(ErrorCode::invalid_argument, "rank must be at least 1");
  if (a_.rows() >= std::min(w0_.rows(), w0_.cols())) {
    throw Error(ErrorCode::rank_too_large, "rank " + std::to_string(a_.rows()) +
                                               " is not below min(d, k) for W0 " + shape(w0_));
  }
}

LoraLayer LoraLayer::initialize(Eigen::MatrixXd w0, std::size_t rank, Rng& rng, double scale) {
  const auto r = static_cast<Eigen::Index>(rank);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(w0.rows(), r);
  Eigen::MatrixXd a(r, w0.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = scale * (2.0 * rng.unit() - 1.0);
  }
  return LoraLayer(std::move(w0), std::move(b), std::move(a));
}

void LoraLayer::step(const Eigen::MatrixXd& grad_b, const Eigen::MatrixXd& grad_a, double lr) {
  require(grad_b.rows() == b_.rows() && grad_b.cols() == b_.cols(),
          "dB is " + shape(grad_b) + " but B is " + shape(b_));
  require(grad_a.rows() == a_.rows() && grad_a.cols() == a_.cols(),
          "dA is " + shape(grad_a) + " but A is " + shape(a_));
  b_ -= lr * grad_b;
  a_ -= lr * grad_a;
}

std::vector<LoraLayer::ParameterRef> LoraLayer::trainable_parameters() const {
  std::vector<ParameterRef> out;
  out.reserve(static_cast<std::size_t>(b_.size() + a_.size()));
  for (Eigen::Index i = 0; i < b_.rows(); ++i) {
    for (Eigen::Index j = 0; j < b_.cols(); ++j) out.push_back({'B', i, j});
  }
  for (Eigen::Index i = 0; i < a_.rows(); ++i) {
    for (Eigen::Index j = 0; j < a_.cols(); ++j) out.push_back({'A', i, j});
  }
  return out;
}

Eigen::VectorXd frozen_forward(const LoraLayer& layer, const Eigen::VectorXd& x) {
  require(x.size() == layer.k(),
          "x has length " + std::to_string(x.size()) + ", expected " + std::to_string(layer.k()));
  return layer.w0() * x;
}

Eigen::VectorXd adapter_forward(const LoraLayer& layer, const Eigen::VectorXd& x) {
  require(x.size() == layer.k(),
          "x has length " + std::to_string(x.size()) + ", expected " + std::to_string(layer.k()));
  const Eigen::VectorXd ax = layer.a() * x;
  return layer.b() * ax;
}

Eigen::VectorXd lora_forward(const LoraLayer& layer, const Eigen::VectorXd& x) {
  return frozen_forward(layer, x) + adapter_forward(layer, x);
}

ParamCounts param_counts(std::uint64_t d, std::uint64_t k, std::uint64_t r) {
  if (r == 0) throw Error(ErrorCode::invalid_argument, "rank must be at least 1");
  if (r >= std::min(d, k)) {
    throw Error(ErrorCode::rank_too_large, "rank " + std::to_string(r) + " is not below min(" +
                                               std::to_string(d) + ", " + std::to_string(k) + ")");
  }
  ParamCounts c;
  c.full = d * k;
  c.lora = r * (d + k);
  c.ratio = static_cast<double>(c.lora) / static_cast<double>(c.full);
  return c;
}

GradCheckResult grad_check(const LoraLayer& layer, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& g, double h) {
  require(g.size() == layer.d(),
          "g has length " + std::to_string(g.size()) + ", expected " + std::to_string(layer.d()));
  if (!(h > 0.0)) throw Error(ErrorCode::invalid_argument, "finite-difference step must be > 0");
  require(x.size() == layer.k(),
          "x has length " + std::to_string(x.size()) + ", expected " + std::to_string(layer.k()));
  const Eigen::VectorXd ax = layer.a() * x;

  GradCheckResult r;
  r.grad_b = g * ax.transpose();
  r.grad_a = (layer.b().transpose() * g) * x.transpose();

  auto loss = [&](const Eigen::MatrixXd& b, const Eigen::MatrixXd& a) {
    return g.dot(layer.w0() * x + b * (a * x));
  };
  r.numeric_b.resize(layer.b().rows(), layer.b().cols());
  r.numeric_a.resize(layer.a().rows(), layer.a().cols());
  Eigen::MatrixXd b = layer.b();
  Eigen::MatrixXd a = layer.a();
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      const double keep = b(i, j);
      b(i, j) = keep + h;
      const double up = loss(b, a);
      b(i, j) = keep - h;
      const double down = loss(b, a);
      b(i, j) = keep;
      r.numeric_b(i, j) = (up - down) / (2.0 * h);
    }
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double keep = a(i, j);
      a(i, j) = keep + h;
      const double up = loss(b, a);
      a(i, j) = keep - h;
      const double down = loss(b, a);
      a(i, j) = keep;
      r.numeric_a(i, j) = (up - down) / (2.0 * h);
    }
  }

  const double scale = std::max({r.grad_b.cwiseAbs().maxCoeff(), r.grad_a.cwiseAbs().maxCoeff(),
                                 r.numeric_b.cwiseAbs().maxCoeff(),
                                 r.numeric_a.cwiseAbs().maxCoeff()});
  if (scale > 0.0) {
    const double diff = std::max((r.grad_b - r.numeric_b).cwiseAbs().maxCoeff(),
                                 (r.grad_a - r.numeric_a).cwiseAbs().maxCoeff());
    r.max_relative_error = diff / scale;
  }
  return r;
}

void AdapterRegistry::add(std::string name, std::uint64_t d, std::uint64_t k, bool adapted) {
  sites_.push_back({std::move(name), d, k, adapted});
}

ParamCounts AdapterRegistry::totals(std::uint64_t r) const {
  ParamCounts total;
  for (const auto& s : sites_) {
    if (s.adapted) {
      const auto c = param_counts(s.d, s.k, r);
      total.lora += c.lora;
    }
    total.full += s.d * s.k;
  }
  total.ratio = total.full == 0 ? 0.0 : static_cast<double>(total.lora) / total.full;
  return total;
}

AdapterRegistry AdapterRegistry::toy_transformer(std::size_t layers, std::uint64_t width) {
  AdapterRegistry reg;
  for (std::size_t l = 0; l < layers; ++l) {
    const auto prefix = "layer" + std::to_string(l) + ".";
    reg.add(prefix + "attention.query", width, width, true);
    reg.add(prefix + "attention.key", width, width, false);
    reg.add(prefix + "attention.value", width, width, true);
    reg.add(prefix + "attention.output", width, width, false);
    reg.add(prefix + "ffn.up", 4 * width, width, false);
    reg.add(prefix + "ffn.down", width, 4 * width, false);
  }
  return reg;
}

LoraDemoResult run_lora_demo(std::uint64_t d, std::uint64_t k, std::uint64_t r,
                             std::size_t layers, std::uint64_t seed) {
  LoraDemoResult out;
  out.d = d;
  out.k = k;
  out.r = r;
  out.counts = param_counts(d, k, r);
  out.toy_model = AdapterRegistry::toy_transformer(2, std::min(d, k)).totals(r);
  out.forward_tolerance = 1e-10;
  out.gradient_tolerance = 1e-6;

  Rng rng(seed);
  auto random_matrix = [&](Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = 2.0 * rng.unit() - 1.0;
    }
    return m;
  };
  for (std::size_t n = 0; n < layers; ++n) {
    const auto dd = static_cast<Eigen::Index>(2 + rng.below(15));
    const auto kk = static_cast<Eigen::Index>(2 + rng.below(15));
    const auto rr = static_cast<Eigen::Index>(
        1 + rng.below(static_cast<std::size_t>(std::min<Eigen::Index>({4, dd - 1, kk - 1}))));
    LoraLayer layer(random_matrix(dd, kk), random_matrix(dd, rr), random_matrix(rr, kk));
    const Eigen::VectorXd x = random_matrix(kk, 1);
    const Eigen::VectorXd g = random_matrix(dd, 1);

    const Eigen::VectorXd dense = (layer.w0() + layer.b() * layer.a()) * x;
    const Eigen::VectorXd h = lora_forward(layer, x);
    const double scale = std::max(dense.cwiseAbs().maxCoeff(), 1e-300);
    out.worst_forward_error =
        std::max(out.worst_forward_error, (h - dense).cwiseAbs().maxCoeff() / scale);
    out.worst_gradient_error =
        std::max(out.worst_gradient_error, grad_check(layer, x, g).max_relative_error);
    ++out.layers_checked;
  }
  return out;
}

}  // namespace drs
