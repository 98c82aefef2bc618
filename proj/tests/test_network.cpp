#include <cmath>
#include <vector>

#include "doctest.h"

#include "gdfc/network.hpp"
#include "gdfc/types.hpp"
#include "mse_oracle.hpp"

using namespace gdfc;

namespace {

double sigmoid_ref(double z) { return 1.0 / (1.0 + std::exp(-z)); }

Network copy_with(Network net, std::size_t layer, std::size_t r, std::size_t c,
                  double v, bool bias) {
  if (bias) {
    net.biases[layer][r] = v;
  } else {
    net.weights[layer](r, c) = v;
  }
  return net;
}

double loss_of(const Network& net, const Vec& x, const Vec& cs, const Vec& cn,
               double xi, double lambda) {
  const auto trace = forward(net, x);
  return centroid_loss(trace.output(), cs, cn, xi, lambda, net);
}

}  // namespace

TEST_CASE("init: shapes, bias zero, weight range, determinism") {
  const std::vector<std::size_t> sizes{4, 7, 3};
  const auto net = init_network(sizes, Activation::Sigmoid, 11);
  REQUIRE(net.depth() == 2);
  CHECK(net.weights[0].rows == 7);
  CHECK(net.weights[0].cols == 4);
  CHECK(net.weights[1].rows == 3);
  CHECK(net.weights[1].cols == 7);
  for (std::size_t l = 0; l < 2; ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(sizes[l]));
    for (double w : net.weights[l].data) {
      CHECK(std::abs(w) <= bound);
    }
    for (double b : net.biases[l]) CHECK(b == 0.0);
  }
  CHECK(net == init_network(sizes, Activation::Sigmoid, 11));
  CHECK(net != init_network(sizes, Activation::Sigmoid, 12));
  CHECK_THROWS_AS(init_network({5, 2}, Activation::Sigmoid, 1),
                  std::invalid_argument);
}

TEST_CASE("forward: all-zero parameters give 0.5 everywhere") {
  auto net = init_network({3, 4, 2}, Activation::Sigmoid, 5);
  for (auto& m : net.weights) m.data.assign(m.data.size(), 0.0);
  const auto trace = forward(net, {0.2, 0.9, -1.0});
  REQUIRE(trace.output().size() == 2);
  for (double b : trace.output()) CHECK(b == 0.5);
  for (double a : trace.activations[1]) CHECK(a == 0.5);
}

TEST_CASE("forward: 2-3-2 hand-computed oracle") {
  Network net;
  net.layer_sizes = {2, 3, 2};
  net.weights = {Matrix(3, 2), Matrix(2, 3)};
  net.biases = {Vec{0.1, -0.2, 0.3}, Vec{0.05, -0.05}};
  const double w0[3][2] = {{0.5, -0.4}, {0.2, 0.7}, {-0.6, 0.1}};
  const double w1[2][3] = {{0.3, -0.5, 0.8}, {0.9, 0.4, -0.2}};
  for (std::size_t q = 0; q < 3; ++q)
    for (std::size_t h = 0; h < 2; ++h) net.weights[0](q, h) = w0[q][h];
  for (std::size_t q = 0; q < 2; ++q)
    for (std::size_t h = 0; h < 3; ++h) net.weights[1](q, h) = w1[q][h];

  const Vec x{0.6, -0.3};
  double hid[3];
  for (std::size_t q = 0; q < 3; ++q) {
    hid[q] = sigmoid_ref(w0[q][0] * x[0] + w0[q][1] * x[1] + net.biases[0][q]);
  }
  double out[2];
  for (std::size_t q = 0; q < 2; ++q) {
    out[q] = sigmoid_ref(w1[q][0] * hid[0] + w1[q][1] * hid[1] +
                         w1[q][2] * hid[2] + net.biases[1][q]);
  }
  const auto trace = forward(net, x);
  for (std::size_t q = 0; q < 3; ++q)
    CHECK(trace.activations[1][q] == doctest::Approx(hid[q]).epsilon(1e-15));
  for (std::size_t q = 0; q < 2; ++q)
    CHECK(trace.output()[q] == doctest::Approx(out[q]).epsilon(1e-15));
  CHECK(trace.pre_activations.size() == 2);
  CHECK(trace.activations[0] == x);
}

TEST_CASE("forward: dimension mismatch throws, repeat call deterministic") {
  const auto net = init_network({3, 5, 2}, Activation::Sigmoid, 9);
  CHECK_THROWS_AS(forward(net, {1.0, 2.0}), std::invalid_argument);
  const Vec x{0.1, 0.4, 0.7};
  CHECK(forward(net, x).output() == forward(net, x).output());
}

TEST_CASE("centroid_loss: hand cases") {
  const auto net = init_network({2, 3, 2}, Activation::Sigmoid, 3);
  // Output on its self centroid, xi=0, lambda=0 -> 0.
  CHECK(centroid_loss({0.3, 0.7}, {0.3, 0.7}, {0.9, 0.9}, 0.0, 0.0, net) == 0.0);
  // beta=(1,0), cs=(0,0), cn=(1,1): attract 1/2*(1+0), repel xi/2*(0+1).
  CHECK(centroid_loss({1.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}, 1.0, 0.0, net) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(centroid_loss({1.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}, 0.5, 0.0, net) ==
        doctest::Approx(0.25));
  // lambda adds lambda/2 * sum w^2 (weights only).
  double sumsq = 0.0;
  for (const auto& m : net.weights)
    for (double w : m.data) sumsq += w * w;
  const double base =
      centroid_loss({0.5, 0.5}, {0.1, 0.1}, {0.9, 0.9}, 0.5, 0.0, net);
  CHECK(centroid_loss({0.5, 0.5}, {0.1, 0.1}, {0.9, 0.9}, 0.5, 0.01, net) ==
        doctest::Approx(base + 0.005 * sumsq).epsilon(1e-12));
}

TEST_CASE("output_delta: formula and finite-difference check vs z") {
  ActivationTrace trace;
  const Vec z{0.4, -1.1, 0.0};
  Vec beta(3);
  for (std::size_t q = 0; q < 3; ++q) beta[q] = sigmoid_ref(z[q]);
  trace.pre_activations = {z};
  trace.activations = {Vec{}, beta};
  const Vec cs{0.2, 0.8, 0.5};
  const Vec cn{0.9, 0.1, 0.5};

  SUBCASE("closed form") {
    const double xi = 0.5;
    const auto d = output_delta(trace, cs, cn, xi);
    REQUIRE(d.size() == 3);
    for (std::size_t q = 0; q < 3; ++q) {
      const double want =
          ((cs[q] - beta[q]) - xi * (cn[q] - beta[q])) * beta[q] * (1 - beta[q]);
      CHECK(d[q] == doctest::Approx(want).epsilon(1e-15));
    }
  }
  SUBCASE("beta on both centroids gives zero delta") {
    const auto d = output_delta(trace, beta, beta, 1.0);
    for (double v : d) CHECK(v == 0.0);
  }
  SUBCASE("delta is -dE/dz by central difference") {
    for (const double xi : {0.0, 0.5, 1.0}) {
      const auto d = output_delta(trace, cs, cn, xi);
      const double h = 1e-6;
      for (std::size_t q = 0; q < 3; ++q) {
        auto core = [&](double zq) {
          double e = 0.0;
          for (std::size_t r = 0; r < 3; ++r) {
            const double b = r == q ? sigmoid_ref(zq) : beta[r];
            e += 0.5 * ((b - cs[r]) * (b - cs[r]) -
                        xi * (b - cn[r]) * (b - cn[r]));
          }
          return e;
        };
        const double fd = -(core(z[q] + h) - core(z[q] - h)) / (2 * h);
        CHECK(d[q] == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("backward: zero output delta yields all-zero gradients") {
  const auto net = init_network({3, 4, 2}, Activation::Sigmoid, 21);
  const auto trace = forward(net, {0.2, 0.5, 0.8});
  const auto g = backward(net, trace, Vec{0.0, 0.0});
  for (const auto& d : g.deltas)
    for (double v : d) CHECK(v == 0.0);
  for (const auto& m : g.weight_updates)
    for (double v : m.data) CHECK(v == 0.0);
}

TEST_CASE("backward: hidden delta recurrence on a 2-2-2 hand case") {
  Network net;
  net.layer_sizes = {2, 2, 2};
  net.weights = {Matrix(2, 2), Matrix(2, 2)};
  net.biases = {Vec{0.0, 0.0}, Vec{0.0, 0.0}};
  net.weights[0](0, 0) = 0.4; net.weights[0](0, 1) = -0.3;
  net.weights[0](1, 0) = 0.1; net.weights[0](1, 1) = 0.6;
  net.weights[1](0, 0) = 0.7; net.weights[1](0, 1) = -0.2;
  net.weights[1](1, 0) = 0.5; net.weights[1](1, 1) = 0.9;

  const Vec x{0.3, 0.8};
  const auto trace = forward(net, x);
  const Vec dout{0.11, -0.07};
  const auto g = backward(net, trace, dout);

  const Vec& a1 = trace.activations[1];
  for (std::size_t h = 0; h < 2; ++h) {
    const double want = (net.weights[1](0, h) * dout[0] +
                         net.weights[1](1, h) * dout[1]) *
                        a1[h] * (1 - a1[h]);
    CHECK(g.deltas[0][h] == doctest::Approx(want).epsilon(1e-14));
  }
  for (std::size_t q = 0; q < 2; ++q)
    for (std::size_t h = 0; h < 2; ++h) {
      CHECK(g.weight_updates[1](q, h) ==
            doctest::Approx(dout[q] * a1[h]).epsilon(1e-14));
      CHECK(g.weight_updates[0](q, h) ==
            doctest::Approx(g.deltas[0][q] * x[h]).epsilon(1e-14));
    }
  CHECK(g.bias_updates[1] == dout);
}

TEST_CASE("backward: every parameter gradient matches finite differences") {
  const auto net = init_network({3, 5, 4, 2}, Activation::Sigmoid, 33);
  const Vec x{0.15, 0.6, 0.95};
  const Vec cs{0.2, 0.7};
  const Vec cn{0.8, 0.3};
  const double xi = 0.5, lambda = 1e-3, h = 1e-5;

  const auto trace = forward(net, x);
  const auto dout = output_delta(trace, cs, cn, xi);
  const auto g = backward(net, trace, dout);

  for (std::size_t l = 0; l < net.depth(); ++l) {
    for (std::size_t q = 0; q < net.weights[l].rows; ++q) {
      for (std::size_t c = 0; c < net.weights[l].cols; ++c) {
        const double w = net.weights[l](q, c);
        const double fd =
            (loss_of(copy_with(net, l, q, c, w + h, false), x, cs, cn, xi,
                     lambda) -
             loss_of(copy_with(net, l, q, c, w - h, false), x, cs, cn, xi,
                     lambda)) /
            (2 * h);
        const double analytic = -g.weight_updates[l](q, c) + lambda * w;
        CHECK(std::abs(analytic - fd) <= 1e-7 + 1e-5 * std::abs(fd));
      }
      const double b = net.biases[l][q];
      const double fd =
          (loss_of(copy_with(net, l, q, 0, b + h, true), x, cs, cn, xi,
                   lambda) -
           loss_of(copy_with(net, l, q, 0, b - h, true), x, cs, cn, xi,
                   lambda)) /
          (2 * h);
      CHECK(std::abs(-g.deltas[l][q] - fd) <= 1e-7 + 1e-5 * std::abs(fd));
    }
  }
}

TEST_CASE("apply_updates: decay, identity, descent, divergence guard") {
  auto net = init_network({2, 3, 2}, Activation::Sigmoid, 17);
  GradientSet zero;
  zero.deltas = {Vec(3, 0.0), Vec(2, 0.0)};
  zero.weight_updates = {Matrix(3, 2), Matrix(2, 3)};
  zero.bias_updates = zero.deltas;

  SUBCASE("zero gradients, lambda 0: unchanged") {
    CHECK(apply_updates(net, zero, 0.1, 0.0) == net);
  }
  SUBCASE("zero gradients, lambda > 0: weights shrink, biases untouched") {
    net.biases[0] = {0.3, -0.3, 0.1};
    const auto after = apply_updates(net, zero, 0.1, 0.5);
    for (std::size_t l = 0; l < 2; ++l) {
      for (std::size_t i = 0; i < net.weights[l].data.size(); ++i) {
        CHECK(after.weights[l].data[i] ==
              doctest::Approx(net.weights[l].data[i] * 0.95).epsilon(1e-14));
      }
      CHECK(after.biases[l] == net.biases[l]);
    }
  }
  SUBCASE("one small step lowers the loss") {
    const auto big = init_network({4, 6, 3}, Activation::Sigmoid, 71);
    const Vec x{0.9, 0.1, 0.4, 0.7};
    const Vec cs{0.1, 0.9, 0.5};
    const Vec cn{0.8, 0.2, 0.2};
    const auto trace = forward(big, x);
    const auto g = backward(big, trace, output_delta(trace, cs, cn, 0.5));
    const auto after = apply_updates(big, g, 1e-3, 0.0);
    CHECK(loss_of(after, x, cs, cn, 0.5, 0.0) <
          loss_of(big, x, cs, cn, 0.5, 0.0));
  }
  SUBCASE("non-finite result throws DivergenceError") {
    GradientSet huge = zero;
    huge.weight_updates[0](0, 0) = 1e308;
    CHECK_THROWS_AS(apply_updates(net, huge, 1e10, 0.0), DivergenceError);
  }
  SUBCASE("eta must be positive") {
    CHECK_THROWS_AS(apply_updates(net, zero, 0.0, 0.0), std::invalid_argument);
  }
}

TEST_CASE("reduction: xi=0 with one-hot corners matches MSE backprop") {
  // Same random start in both representations; run 10 SGD steps.
  Rng rng(404);
  auto net = init_network({3, 4, 2}, Activation::Sigmoid, 99);
  mse_oracle::Net ref;
  for (std::size_t l = 0; l < net.depth(); ++l) {
    mse_oracle::M wl(net.weights[l].rows,
                     mse_oracle::V(net.weights[l].cols));
    for (std::size_t q = 0; q < net.weights[l].rows; ++q)
      for (std::size_t h = 0; h < net.weights[l].cols; ++h)
        wl[q][h] = net.weights[l](q, h);
    ref.w.push_back(wl);
    ref.b.push_back(net.biases[l]);
  }

  const double eta = 0.3, lambda = 1e-3;
  for (int step = 0; step < 10; ++step) {
    Vec x(3);
    for (double& v : x) v = rng.uniform();
    const int label = static_cast<int>(rng.index(2));
    Vec target(2, 0.0);
    target[label] = 1.0;
    Vec other(2, 0.0);
    other[1 - label] = 1.0;

    const auto trace = forward(net, x);
    const auto dout = output_delta(trace, target, other, 0.0);
    net = apply_updates(net, backward(net, trace, dout), eta, lambda);
    mse_oracle::step(ref, x, target, eta, lambda);
  }
  for (std::size_t l = 0; l < net.depth(); ++l) {
    for (std::size_t q = 0; q < net.weights[l].rows; ++q) {
      for (std::size_t h = 0; h < net.weights[l].cols; ++h) {
        CHECK(std::abs(net.weights[l](q, h) - ref.w[l][q][h]) <= 1e-12);
      }
      CHECK(std::abs(net.biases[l][q] - ref.b[l][q]) <= 1e-12);
    }
  }
}
