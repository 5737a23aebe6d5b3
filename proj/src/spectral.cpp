#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "eec/graph.hpp"
#include "eec/rng.hpp"

namespace eec {

std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double total = 0.0;
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("symmetric_eigenvalues: matrix is not square");
    for (double x : row) total += x * x;
  }
  const double threshold = 1e-26 * std::max(total, 1.0);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off <= threshold) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p][q];
        if (std::abs(apq) < 1e-300) continue;
        const double app = a[p][p];
        const double aqq = a[q][q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = a[p][k] = c * akp - s * akq;
          a[k][q] = a[q][k] = s * akp + c * akq;
        }
        a[p][p] = app - t * apq;
        a[q][q] = aqq + t * apq;
        a[p][q] = a[q][p] = 0.0;
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

namespace {

void project_out_mean(std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

double norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Power iteration for the top eigenvalue of a PSD operator restricted to the
// complement of the all-ones vector. Returns sqrt of that eigenvalue.
LambdaEstimate deflated_power_iteration(std::size_t dim,
                                        const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                                        const SpectralOptions& options) {
  SplitMix64 rng(0x5EEDULL);
  std::vector<double> x(dim), y(dim);
  for (double& v : x) v = rng.uniform() - 0.5;
  project_out_mean(x);
  double nx = norm(x);
  LambdaEstimate est;
  if (nx == 0.0) return est;
  for (double& v : x) v /= nx;
  double residual = 0.0;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    apply(x, y);
    project_out_mean(y);
    double mu = 0.0;
    for (std::size_t i = 0; i < dim; ++i) mu += x[i] * y[i];
    double r2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) r2 += (y[i] - mu * x[i]) * (y[i] - mu * x[i]);
    residual = std::sqrt(r2);
    est.value = std::sqrt(std::max(mu, 0.0));
    est.iterations = it;
    est.residual = residual;
    if (residual <= options.tolerance * std::max(1.0, mu)) return est;
    const double ny = norm(y);
    if (ny == 0.0) {
      est.value = 0.0;
      est.residual = 0.0;
      return est;
    }
    for (std::size_t i = 0; i < dim; ++i) x[i] = y[i] / ny;
  }
  throw LambdaEstimationError("lambda estimation did not converge within " +
                                  std::to_string(options.max_iterations) + " iterations (residual " +
                                  std::to_string(residual) + ")",
                              residual);
}

}  // namespace

LambdaEstimate expansion_lambda(const RegularGraph& g, const SpectralOptions& options) {
  const std::size_t n = g.vertex_count();
  if (n <= options.dense_cap) {
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t v = 0; v < n; ++v)
      for (auto u : g.neighbors(v)) a[v][u] += 1.0;
    auto eig = symmetric_eigenvalues(std::move(a));
    LambdaEstimate est;
    est.exact = true;
    if (n >= 2) est.value = std::max(eig[1], std::abs(eig[n - 1]));
    return est;
  }
  // A^2 on the complement of the all-ones vector has top eigenvalue
  // max(lambda_2^2, lambda_n^2) = lambda^2.
  std::vector<double> tmp(n);
  auto apply = [&](const std::vector<double>& x, std::vector<double>& out) {
    for (std::size_t v = 0; v < n; ++v) {
      double s = 0.0;
      for (auto u : g.neighbors(v)) s += x[u];
      tmp[v] = s;
    }
    for (std::size_t v = 0; v < n; ++v) {
      double s = 0.0;
      for (auto u : g.neighbors(v)) s += tmp[u];
      out[v] = s;
    }
  };
  return deflated_power_iteration(n, apply, options);
}

LambdaEstimate bipartite_lambda(const BipartiteGraph& g, const SpectralOptions& options) {
  const std::size_t n = g.side_size();
  const std::size_t d = g.degree();
  if (2 * n <= options.dense_cap) {
    // [[0, B], [B^T, 0]] has eigenvalues +-sigma_i.
    std::vector<std::vector<double>> a(2 * n, std::vector<double>(2 * n, 0.0));
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < d; ++i) {
        const auto u = g.left_port(v, i).vertex;
        a[v][n + u] += 1.0;
        a[n + u][v] += 1.0;
      }
    auto eig = symmetric_eigenvalues(std::move(a));
    LambdaEstimate est;
    est.exact = true;
    est.value = n >= 2 ? std::max(eig[1], 0.0) : 0.0;
    return est;
  }
  // B^T B on the complement of the all-ones vector: top eigenvalue sigma_2^2.
  std::vector<double> tmp(n);
  auto apply = [&](const std::vector<double>& x, std::vector<double>& out) {
    for (std::size_t v = 0; v < n; ++v) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += x[g.left_port(v, i).vertex];
      tmp[v] = s;
    }
    for (std::size_t u = 0; u < n; ++u) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += tmp[g.right_port(u, j).vertex];
      out[u] = s;
    }
  };
  return deflated_power_iteration(n, apply, options);
}

}  // namespace eec
