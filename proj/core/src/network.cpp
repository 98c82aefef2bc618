#include "gdfc/network.hpp"

#include <cmath>
#include <stdexcept>

namespace gdfc {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// s'(z) expressed through the activation value: s*(1-s).
double sigmoid_deriv_from_act(double a) { return a * (1.0 - a); }

void check_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": expected size " +
                                std::to_string(want) + ", got " +
                                std::to_string(got));
  }
}

}  // namespace

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::Sigmoid:
      return "sigmoid";
  }
  throw std::invalid_argument("unknown activation");
}

Activation activation_from_name(const std::string& name) {
  if (name == "sigmoid") return Activation::Sigmoid;
  throw std::invalid_argument("unknown activation: " + name);
}

Network init_network(const std::vector<std::size_t>& layer_sizes,
                     Activation activation, std::uint64_t seed) {
  if (layer_sizes.size() < 3) {
    throw std::invalid_argument(
        "init_network: need input, at least one hidden, and output layer");
  }
  for (std::size_t s : layer_sizes) {
    if (s < 1) throw std::invalid_argument("init_network: zero-width layer");
  }

  Network net;
  net.layer_sizes = layer_sizes;
  net.activation = activation;
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const std::size_t fan_in = layer_sizes[l];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Matrix w(layer_sizes[l + 1], fan_in);
    for (double& x : w.data) x = rng.uniform(-bound, bound);
    net.weights.push_back(std::move(w));
    net.biases.emplace_back(layer_sizes[l + 1], 0.0);
  }
  return net;
}

ActivationTrace forward(const Network& net, const Vec& sample) {
  check_dim(sample.size(), net.input_dim(), "forward: sample");
  if (!all_finite(sample)) {
    throw std::invalid_argument("forward: non-finite sample entry");
  }

  ActivationTrace trace;
  trace.activations.push_back(sample);
  for (std::size_t l = 0; l < net.depth(); ++l) {
    const Matrix& w = net.weights[l];
    const Vec& in = trace.activations.back();
    Vec z(w.rows);
    for (std::size_t q = 0; q < w.rows; ++q) {
      double s = net.biases[l][q];
      for (std::size_t h = 0; h < w.cols; ++h) s += w(q, h) * in[h];
      z[q] = s;
    }
    Vec a(z.size());
    for (std::size_t q = 0; q < z.size(); ++q) a[q] = sigmoid(z[q]);
    trace.pre_activations.push_back(std::move(z));
    trace.activations.push_back(std::move(a));
  }
  return trace;
}

double centroid_loss(const Vec& output, const Vec& c_self, const Vec& c_noself,
                     double xi, double lambda, const Network& net) {
  check_dim(c_self.size(), output.size(), "centroid_loss: c_self");
  check_dim(c_noself.size(), output.size(), "centroid_loss: c_noself");
  if (xi < 0.0 || lambda < 0.0) {
    throw std::invalid_argument("centroid_loss: xi and lambda must be >= 0");
  }
  if (!all_finite(output) || !all_finite(c_self) || !all_finite(c_noself)) {
    throw std::invalid_argument("centroid_loss: non-finite input");
  }

  double e = 0.0;
  for (std::size_t q = 0; q < output.size(); ++q) {
    const double ds = output[q] - c_self[q];
    const double dn = output[q] - c_noself[q];
    e += ds * ds - xi * dn * dn;
  }
  e *= 0.5;

  if (lambda > 0.0) {
    double w2 = 0.0;
    for (const Matrix& w : net.weights) {
      for (double x : w.data) w2 += x * x;
    }
    e += 0.5 * lambda * w2;
  }
  return e;
}

Vec output_delta(const ActivationTrace& trace, const Vec& c_self,
                 const Vec& c_noself, double xi) {
  const Vec& out = trace.output();
  check_dim(c_self.size(), out.size(), "output_delta: c_self");
  check_dim(c_noself.size(), out.size(), "output_delta: c_noself");

  Vec delta(out.size());
  for (std::size_t q = 0; q < out.size(); ++q) {
    const double sp = sigmoid_deriv_from_act(out[q]);
    delta[q] = ((c_self[q] - out[q]) - xi * (c_noself[q] - out[q])) * sp;
  }
  return delta;
}

GradientSet backward(const Network& net, const ActivationTrace& trace,
                     const Vec& out_delta) {
  check_dim(out_delta.size(), net.output_dim(), "backward: output delta");

  const std::size_t depth = net.depth();
  GradientSet grads;
  grads.deltas.resize(depth);
  grads.weight_updates.resize(depth);
  grads.bias_updates.resize(depth);

  grads.deltas[depth - 1] = out_delta;
  for (std::size_t l = depth - 1; l-- > 0;) {
    const Matrix& w_up = net.weights[l + 1];
    const Vec& act = trace.activations[l + 1];
    const Vec& up = grads.deltas[l + 1];
    Vec d(act.size());
    for (std::size_t h = 0; h < act.size(); ++h) {
      double s = 0.0;
      for (std::size_t q = 0; q < up.size(); ++q) s += w_up(q, h) * up[q];
      d[h] = sigmoid_deriv_from_act(act[h]) * s;
    }
    grads.deltas[l] = std::move(d);
  }

  for (std::size_t l = 0; l < depth; ++l) {
    const Vec& d = grads.deltas[l];
    const Vec& in = trace.activations[l];
    Matrix dw(d.size(), in.size());
    for (std::size_t q = 0; q < d.size(); ++q) {
      for (std::size_t h = 0; h < in.size(); ++h) dw(q, h) = d[q] * in[h];
    }
    grads.weight_updates[l] = std::move(dw);
    grads.bias_updates[l] = d;
  }
  return grads;
}

Network apply_updates(Network net, const GradientSet& grads, double eta,
                      double lambda) {
  if (eta <= 0.0) throw std::invalid_argument("apply_updates: eta must be > 0");
  if (grads.weight_updates.size() != net.depth()) {
    throw std::invalid_argument("apply_updates: gradient/network shape mismatch");
  }

  for (std::size_t l = 0; l < net.depth(); ++l) {
    Matrix& w = net.weights[l];
    const Matrix& dw = grads.weight_updates[l];
    if (!w.same_shape(dw)) {
      throw std::invalid_argument("apply_updates: weight shape mismatch");
    }
    for (std::size_t i = 0; i < w.data.size(); ++i) {
      w.data[i] += eta * (dw.data[i] - lambda * w.data[i]);
    }
    Vec& b = net.biases[l];
    const Vec& db = grads.bias_updates[l];
    if (b.size() != db.size()) {
      throw std::invalid_argument("apply_updates: bias shape mismatch");
    }
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += eta * db[i];

    if (!all_finite(w) || !all_finite(b)) {
      throw DivergenceError("apply_updates: non-finite parameter after step");
    }
  }
  return net;
}

}  // namespace gdfc
