#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "catsem/errors.hpp"
#include "catsem/prob_matrix.hpp"

namespace catsem {

/// A labeled point set in Euclidean space together with its distance
/// matrix.
class Configuration {
public:
  Configuration() = default;
  Configuration(std::vector<std::string> labels, Eigen::MatrixXd points);

  int size() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::MatrixXd& points() const { return points_; }

  Eigen::MatrixXd distanceMatrix() const;

  /// Symmetry, zero diagonal and the triangle inequality of the distance
  /// matrix. Throws NumericError on violation.
  void validate(double triangleTol = 1e-9) const;

private:
  std::vector<std::string> labels_;
  Eigen::MatrixXd points_; // n x d
};

/// An embedding: a semantic space together with the configuration it maps
/// to, decorated with named divergence values.
struct Embedding {
  ProbMatrix source;
  Configuration target;
  std::map<std::string, double> divergences;
};

struct GloveDistances {
  Eigen::MatrixXd distances;
  int clampedPairs = 0; // ordered pairs with S below 1 clamped to distance 0
};

/// d_GV = sqrt(ln S) entrywise from the similarity matrix S of the space.
/// Entries with S < 1 are clamped to 0 and counted when `clampBelowOne`
/// is set; otherwise they raise NumericError.
GloveDistances gloveDistance(const ProbMatrix& space, bool clampBelowOne = true);

struct MdsSolution {
  Configuration config;
  Eigen::VectorXd eigenvalues; // full double-centered spectrum, descending
  double clampedMass = 0.0;    // total negative eigenvalue mass
};

/// Classical (Torgerson) MDS: double-center -1/2 J D^2 J, eigendecompose,
/// keep the top-`dim` non-negative eigenpairs.
MdsSolution classicalMds(const Eigen::MatrixXd& distances, int dim,
                         std::vector<std::string> labels = {});

struct SmacofOptions {
  int maxIter = 500;
  double tol = 1e-9; // relative stress change
};

struct SmacofSolution {
  Configuration config;
  std::vector<double> stressTrace;
  int iterations = 0;
};

/// Stress majorization initialized from classical MDS; the stress trace is
/// non-increasing.
SmacofSolution smacof(const Eigen::MatrixXd& distances, int dim,
                      const SmacofOptions& options = {},
                      std::vector<std::string> labels = {});

/// sqrt of the sum over ordered pairs i != j of squared gaps between the
/// target distances and the realized point distances.
double stress(const Eigen::MatrixXd& realized, const Eigen::MatrixXd& target);
double stress(const Configuration& config, const Eigen::MatrixXd& target);

/// D_KL(f) = sum_{i<j} p_ij |ln(p_ij) + d_ij|. Probabilities must be
/// positive wherever used.
double klEmbeddingDivergence(const Eigen::MatrixXd& probabilities,
                             const Eigen::MatrixXd& distances);
double klEmbeddingDivergence(const Embedding& embedding);

/// Divergence between two embeddings given their object divergences.
inline double pairwiseDivergence(double a, double b) { return std::abs(a - b); }

/// Frobenius distance after centering and the optimal orthogonal
/// alignment of `a` onto `b`.
double procrustesError(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Pearson correlation over the strict upper triangles of two symmetric
/// matrices.
double pearsonUpper(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// ||a - b||_F / ||b||_F.
double relativeFrobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

} // namespace catsem
