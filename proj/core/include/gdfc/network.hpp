#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gdfc/types.hpp"

namespace gdfc {

enum class Activation { Sigmoid };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

/// Fully connected feedforward network. weights[l] maps the activations
/// of layer l (size layer_sizes[l]) to layer l+1; biases[l] belongs to
/// layer l+1. The last layer's width is the partition-space dimension.
struct Network {
  std::vector<std::size_t> layer_sizes;
  std::vector<Matrix> weights;
  std::vector<Vec> biases;
  Activation activation = Activation::Sigmoid;

  std::size_t input_dim() const { return layer_sizes.front(); }
  std::size_t output_dim() const { return layer_sizes.back(); }
  /// Number of weight layers (= layer count minus one).
  std::size_t depth() const { return weights.size(); }

  bool operator==(const Network& o) const = default;
};

/// Everything forward() computed, kept for the backward pass.
/// activations[0] is the input sample; activations[l+1] is the
/// elementwise activation of pre_activations[l].
struct ActivationTrace {
  std::vector<Vec> pre_activations;
  std::vector<Vec> activations;

  const Vec& output() const { return activations.back(); }
};

/// Per-layer error terms and the raw update directions built from them.
/// weight_updates[l](q,h) = deltas[l][q] * activations[l][h]; the
/// learning rate and weight decay are applied later by apply_updates.
struct GradientSet {
  std::vector<Vec> deltas;
  std::vector<Matrix> weight_updates;
  std::vector<Vec> bias_updates;
};

/// Seeded initialization: weights uniform in +-1/sqrt(fan_in), biases
/// zero. Requires at least one hidden layer.
Network init_network(const std::vector<std::size_t>& layer_sizes,
                     Activation activation, std::uint64_t seed);

ActivationTrace forward(const Network& net, const Vec& sample);

/// Centroid loss for one mapped sample:
///   E = 1/2 * sum_q [(b_q - cs_q)^2 - xi*(b_q - cn_q)^2] + lambda/2 * sum w^2.
/// The decay term sums over weights only, never biases.
double centroid_loss(const Vec& output, const Vec& c_self, const Vec& c_noself,
                     double xi, double lambda, const Network& net);

/// Output-layer error term: d_q = [(cs_q - b_q) - xi*(cn_q - b_q)] * s'(z_q).
Vec output_delta(const ActivationTrace& trace, const Vec& c_self,
                 const Vec& c_noself, double xi);

/// Propagates the output delta through the hidden layers and pairs each
/// delta with the previous layer's activations.
GradientSet backward(const Network& net, const ActivationTrace& trace,
                     const Vec& out_delta);

/// SGD step: w += eta*(dw - lambda*w); theta += eta*d. Throws
/// DivergenceError if any updated parameter is non-finite.
Network apply_updates(Network net, const GradientSet& grads, double eta,
                      double lambda);

}  // namespace gdfc
