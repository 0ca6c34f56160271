#include "catsem/embed.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "catsem/spaces.hpp"

namespace catsem {

Configuration::Configuration(std::vector<std::string> labels, Eigen::MatrixXd points)
    : labels_(std::move(labels)), points_(std::move(points)) {
  if (labels_.empty()) {
    labels_.reserve(static_cast<size_t>(points_.rows()));
    for (int i = 0; i < points_.rows(); ++i) labels_.push_back("p" + std::to_string(i));
  }
  if (static_cast<int>(labels_.size()) != points_.rows())
    throw NumericError("configuration labels do not match the point count");
}

Eigen::MatrixXd Configuration::distanceMatrix() const {
  const int n = size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (points_.row(i) - points_.row(j)).norm();
    }
  }
  return d;
}

void Configuration::validate(double triangleTol) const {
  Eigen::MatrixXd d = distanceMatrix();
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw NumericError("distance matrix has nonzero diagonal");
    for (int j = 0; j < n; ++j) {
      if (d(i, j) != d(j, i)) throw NumericError("distance matrix is not symmetric");
      for (int k = 0; k < n; ++k) {
        if (d(i, j) > d(i, k) + d(k, j) + triangleTol)
          throw NumericError("distance matrix violates the triangle inequality");
      }
    }
  }
}

GloveDistances gloveDistance(const ProbMatrix& space, bool clampBelowOne) {
  SimilarityMatrix s = similarityS(space);
  const int n = static_cast<int>(s.values.rows());
  GloveDistances out{Eigen::MatrixXd::Zero(n, n), 0};
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      double sik = s.values(i, k);
      if (sik <= 0.0)
        throw NumericError("gloveDistance: non-positive similarity entry for pair (" +
                           s.labels[static_cast<size_t>(i)] + ", " +
                           s.labels[static_cast<size_t>(k)] + ")");
      if (sik < 1.0) {
        if (!clampBelowOne)
          throw NumericError("gloveDistance: similarity below 1 for pair (" +
                             s.labels[static_cast<size_t>(i)] + ", " +
                             s.labels[static_cast<size_t>(k)] + ") and clamping disabled");
        ++out.clampedPairs;
        continue; // distance stays 0
      }
      out.distances(i, k) = std::sqrt(std::log(sik));
    }
  }
  return out;
}

namespace {

void checkDistanceInput(const Eigen::MatrixXd& d) {
  if (d.rows() != d.cols()) throw NumericError("distance matrix must be square");
  for (int i = 0; i < d.rows(); ++i) {
    if (d(i, i) != 0.0) throw NumericError("distance matrix has nonzero diagonal");
    for (int j = 0; j < d.cols(); ++j) {
      if (std::abs(d(i, j) - d(j, i)) > 1e-12)
        throw NumericError("distance matrix is not symmetric");
      if (d(i, j) < 0.0) throw NumericError("distance matrix has negative entries");
    }
  }
}

} // namespace

MdsSolution classicalMds(const Eigen::MatrixXd& distances, int dim,
                         std::vector<std::string> labels) {
  checkDistanceInput(distances);
  const int n = static_cast<int>(distances.rows());
  if (dim < 1 || dim > n) throw NumericError("MDS dimension must lie in [1, n]");

  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n) -
                      Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd b = -0.5 * j * distances.cwiseProduct(distances) * j;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success)
    throw NumericError("classical MDS eigendecomposition failed");

  // eigh returns ascending order; flip to descending
  Eigen::VectorXd values = solver.eigenvalues().reverse();
  Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();

  MdsSolution out;
  out.eigenvalues = values;
  out.clampedMass = (-values.cwiseMin(0.0)).sum();

  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(n, dim);
  for (int c = 0; c < dim; ++c) {
    double lambda = values(c);
    if (lambda > 0.0) coords.col(c) = vectors.col(c) * std::sqrt(lambda);
  }
  out.config = Configuration(std::move(labels), std::move(coords));
  return out;
}

double stress(const Eigen::MatrixXd& realized, const Eigen::MatrixXd& target) {
  double sum = 0.0;
  for (int i = 0; i < target.rows(); ++i) {
    for (int j = 0; j < target.cols(); ++j) {
      if (i == j) continue;
      double gap = target(i, j) - realized(i, j);
      sum += gap * gap;
    }
  }
  return std::sqrt(sum);
}

double stress(const Configuration& config, const Eigen::MatrixXd& target) {
  return stress(config.distanceMatrix(), target);
}

SmacofSolution smacof(const Eigen::MatrixXd& distances, int dim,
                      const SmacofOptions& options, std::vector<std::string> labels) {
  MdsSolution init = classicalMds(distances, dim, std::move(labels));
  const int n = static_cast<int>(distances.rows());

  Eigen::MatrixXd x = init.config.points();
  SmacofSolution out;
  double current = stress(Configuration(init.config.labels(), x), distances);
  out.stressTrace.push_back(current);

  for (int it = 0; it < options.maxIter; ++it) {
    // Guttman transform with unit weights
    Eigen::MatrixXd realized = Configuration(init.config.labels(), x).distanceMatrix();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      double diag = 0.0;
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        double r = realized(i, j);
        double v = r > 0.0 ? -distances(i, j) / r : 0.0;
        b(i, j) = v;
        diag -= v;
      }
      b(i, i) = diag;
    }
    x = (b * x) / static_cast<double>(n);

    double next = stress(Configuration(init.config.labels(), x), distances);
    out.stressTrace.push_back(next);
    ++out.iterations;
    if (current == 0.0 ||
        std::abs(current - next) / std::max(current, 1e-300) < options.tol) {
      current = next;
      break;
    }
    current = next;
  }

  out.config = Configuration(init.config.labels(), std::move(x));
  return out;
}

double klEmbeddingDivergence(const Eigen::MatrixXd& probabilities,
                             const Eigen::MatrixXd& distances) {
  if (probabilities.rows() != distances.rows() || probabilities.cols() != distances.cols())
    throw NumericError("KL divergence: probability and distance shapes differ");
  double sum = 0.0;
  for (int i = 0; i < probabilities.rows(); ++i) {
    for (int j = i + 1; j < probabilities.cols(); ++j) {
      double p = probabilities(i, j);
      if (p <= 0.0)
        throw NumericError("KL divergence: non-positive probability at pair (" +
                           std::to_string(i) + ", " + std::to_string(j) + ")");
      sum += p * std::abs(std::log(p) + distances(i, j));
    }
  }
  return sum;
}

double klEmbeddingDivergence(const Embedding& embedding) {
  return klEmbeddingDivergence(embedding.source.entries(),
                               embedding.target.distanceMatrix());
}

double procrustesError(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw NumericError("procrustes: shapes differ");
  Eigen::MatrixXd ac = a.rowwise() - a.colwise().mean();
  Eigen::MatrixXd bc = b.rowwise() - b.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ac.transpose() * bc,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd rotation = svd.matrixU() * svd.matrixV().transpose();
  return (ac * rotation - bc).norm();
}

double pearsonUpper(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw NumericError("pearson: shapes differ");
  std::vector<double> xs, ys;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = i + 1; j < a.cols(); ++j) {
      xs.push_back(a(i, j));
      ys.push_back(b(i, j));
    }
  }
  const double n = static_cast<double>(xs.size());
  if (n < 2) throw NumericError("pearson: not enough pairs");
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw NumericError("pearson: degenerate (constant) distance matrix");
  return sxy / std::sqrt(sxx * syy);
}

double relativeFrobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double denom = b.norm();
  if (denom == 0.0) throw NumericError("relativeFrobenius: zero reference matrix");
  return (a - b).norm() / denom;
}

} // namespace catsem
