#include "gdfc/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace gdfc {

namespace {

double loss_at(const Network& net, const Vec& sample, const Vec& cs,
               const Vec& cn, double xi, double lambda) {
  return centroid_loss(forward(net, sample).output(), cs, cn, xi, lambda, net);
}

}  // namespace

GradCheckReport run_gradient_check(std::uint64_t seed,
                                   std::size_t n_architectures, double rel_tol,
                                   double abs_floor, double step) {
  static const double kXis[] = {0.0, 0.5, 1.0};
  static const double kLambdas[] = {0.0, 1e-3};

  Rng rng(seed);
  GradCheckReport report;
  report.pass = true;

  for (std::size_t arch = 0; arch < n_architectures; ++arch) {
    const std::size_t n_weight_layers = 2 + rng.index(3);  // 2..4
    std::vector<std::size_t> layers;
    for (std::size_t l = 0; l <= n_weight_layers; ++l) {
      layers.push_back(2 + rng.index(7));  // widths 2..8
    }
    const std::size_t q = layers.back();
    const double xi = kXis[arch % 3];
    const double lambda = kLambdas[arch % 2];

    Network net = init_network(layers, Activation::Sigmoid, rng.next());
    // Non-trivial weights so no gradient is accidentally zero.
    for (Matrix& w : net.weights) {
      for (double& x : w.data) x = rng.uniform(-1.5, 1.5);
    }
    for (Vec& b : net.biases) {
      for (double& x : b) x = rng.uniform(-0.5, 0.5);
    }

    Vec sample(layers.front());
    for (double& x : sample) x = rng.uniform(0.0, 1.0);
    Vec cs(q), cn(q);
    for (double& x : cs) x = rng.uniform(0.0, 1.0);
    for (double& x : cn) x = rng.uniform(0.0, 1.0);

    const ActivationTrace trace = forward(net, sample);
    const Vec delta = output_delta(trace, cs, cn, xi);
    const GradientSet grads = backward(net, trace, delta);

    auto check = [&](double analytic, double* param, const char* kind) {
      const double saved = *param;
      *param = saved + step;
      const double plus = loss_at(net, sample, cs, cn, xi, lambda);
      *param = saved - step;
      const double minus = loss_at(net, sample, cs, cn, xi, lambda);
      *param = saved;
      const double numeric = (plus - minus) / (2.0 * step);

      ++report.parameters_checked;
      const double scale = std::max(std::abs(analytic), std::abs(numeric));
      const double diff = std::abs(analytic - numeric);
      if (scale > abs_floor) {
        const double rel = diff / scale;
        if (rel > report.max_rel_err) {
          report.max_rel_err = rel;
          report.worst_case = std::string(kind) + " arch " +
                              std::to_string(arch) + " xi " +
                              std::to_string(xi);
        }
        if (rel > rel_tol && diff > abs_floor) report.pass = false;
      }
    };

    // delta is -dE/dz, so dE/dw = -(delta x act) + lambda*w and
    // dE/dtheta = -delta.
    for (std::size_t l = 0; l < net.depth(); ++l) {
      for (std::size_t i = 0; i < net.weights[l].data.size(); ++i) {
        const double analytic = -grads.weight_updates[l].data[i] +
                                lambda * net.weights[l].data[i];
        check(analytic, &net.weights[l].data[i], "weight");
      }
      for (std::size_t i = 0; i < net.biases[l].size(); ++i) {
        check(-grads.bias_updates[l][i], &net.biases[l][i], "bias");
      }
    }
    ++report.architectures;
  }
  return report;
}

}  // namespace gdfc
