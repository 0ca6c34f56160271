#include <doctest.h>

#include <cmath>

#include "catsem/embed.hpp"
#include "test_helpers.hpp"

using namespace catsem;
using catsem::test::namedSet;

TEST_SUITE_BEGIN("embed");

namespace {

Eigen::MatrixXd randomPoints(int n, int dim, unsigned seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd pts(n, dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < dim; ++j) pts(i, j) = scale * (2.0 * catsem::test::uniform01(rng) - 1.0);
  return pts;
}

} // namespace

TEST_CASE("glove distance") {
  ExprSet two = namedSet("w", 2);
  Eigen::MatrixXd p(2, 2);
  p << 0.5, 0.25, 0.25, 0.5;
  ProbMatrix space(two, two, p, MatrixKind::Probabilistic);
  GloveDistances d = gloveDistance(space);
  CHECK(d.clampedPairs == 0);
  CHECK(d.distances(0, 0) == 0.0);
  CHECK(d.distances(1, 1) == 0.0);
  CHECK(d.distances(0, 1) == doctest::Approx(std::sqrt(std::log(4.0))).epsilon(1e-12));
  CHECK(d.distances(0, 1) == d.distances(1, 0));

  SUBCASE("similarity below 1 clamps or throws") {
    Eigen::MatrixXd q(2, 2);
    q << 0.1, 0.9, 0.9, 0.1; // S_01 < 1
    ProbMatrix tight(two, two, q, MatrixKind::Probabilistic);
    GloveDistances clamped = gloveDistance(tight);
    CHECK(clamped.clampedPairs == 2);
    CHECK(clamped.distances(0, 1) == 0.0);
    CHECK_THROWS_AS(gloveDistance(tight, false), NumericError);
  }
}

TEST_CASE("classical MDS") {
  SUBCASE("all-zero distances put every point at the origin") {
    MdsSolution sol = classicalMds(Eigen::MatrixXd::Zero(4, 4), 2);
    CHECK(sol.config.points().cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("equilateral triangle is reconstructed exactly") {
    Eigen::MatrixXd d(3, 3);
    d << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    MdsSolution sol = classicalMds(d, 2);
    Eigen::MatrixXd realized = sol.config.distanceMatrix();
    CHECK((realized - d).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(sol.clampedMass <= 1e-9);
  }
  SUBCASE("planted 5-point sets in 3-D are recovered") {
    for (unsigned seed : {1u, 2u, 3u}) {
      Eigen::MatrixXd pts = randomPoints(5, 3, seed);
      Eigen::MatrixXd d = Configuration({}, pts).distanceMatrix();
      MdsSolution sol = classicalMds(d, 3);
      CHECK((sol.config.distanceMatrix() - d).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
  SUBCASE("dimension above the point count is rejected") {
    CHECK_THROWS_AS(classicalMds(Eigen::MatrixXd::Zero(3, 3), 4), NumericError);
  }
}

TEST_CASE("smacof") {
  SUBCASE("a perfect configuration is a fixed point") {
    Eigen::MatrixXd d(3, 3);
    d << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    SmacofSolution sol = smacof(d, 2);
    CHECK(sol.stressTrace.front() <= 1e-9);
    CHECK(sol.stressTrace.back() <= 1e-9);
    CHECK(sol.iterations <= 1);
  }
  SUBCASE("stress trace is non-increasing on a non-Euclidean target") {
    std::mt19937_64 rng(21);
    // a noisy, generally non-embeddable symmetric dissimilarity
    int n = 8;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        d(i, j) = d(j, i) = 0.2 + catsem::test::uniform01(rng);
    SmacofSolution sol = smacof(d, 2);
    for (size_t t = 1; t < sol.stressTrace.size(); ++t)
      CHECK(sol.stressTrace[t] <= sol.stressTrace[t - 1] + 1e-12);
  }
}

TEST_CASE("stress") {
  Eigen::MatrixXd d(2, 2);
  d << 0, 1, 1, 0;

  SUBCASE("perfect embedding has zero stress") {
    Eigen::MatrixXd pts(2, 1);
    pts << 0, 1;
    CHECK(stress(Configuration({}, pts), d) == 0.0);
  }
  SUBCASE("one pair off by delta gives sqrt(2) delta") {
    double delta = 0.25;
    Eigen::MatrixXd pts(2, 1);
    pts << 0, 1 + delta;
    CHECK(stress(Configuration({}, pts), d) ==
          doctest::Approx(std::sqrt(2.0) * delta).epsilon(1e-12));
  }
  SUBCASE("stress is invariant under isometries") {
    Eigen::MatrixXd pts = randomPoints(6, 3, 5u);
    Eigen::MatrixXd target = Configuration({}, randomPoints(6, 3, 6u)).distanceMatrix();
    // random rotation via QR
    std::mt19937_64 rng(7);
    Eigen::MatrixXd g(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g(i, j) = catsem::test::uniform01(rng) - 0.5;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd rotation = qr.householderQ();
    Eigen::MatrixXd moved = (pts * rotation).rowwise() + Eigen::RowVector3d(1, -2, 3);
    CHECK(stress(Configuration({}, pts), target) ==
          doctest::Approx(stress(Configuration({}, moved), target)).epsilon(1e-10));
  }
}

TEST_CASE("KL embedding divergence") {
  SUBCASE("d = -ln p is the zero of the divergence") {
    Eigen::MatrixXd p(2, 2);
    p << 1.0, 0.5, 0.5, 1.0;
    Eigen::MatrixXd d(2, 2);
    d << 0.0, -std::log(0.5), -std::log(0.5), 0.0;
    CHECK(klEmbeddingDivergence(p, d) == 0.0);
  }
  SUBCASE("single-pair hand value") {
    Eigen::MatrixXd p(2, 2);
    p << 1.0, 0.5, 0.5, 1.0;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
    CHECK(klEmbeddingDivergence(p, d) ==
          doctest::Approx(0.5 * std::abs(std::log(0.5))).epsilon(1e-12));
  }
  SUBCASE("non-positive probability is rejected") {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2, 2);
    CHECK_THROWS_AS(klEmbeddingDivergence(p, p), NumericError);
  }
}

TEST_CASE("pairwise divergence laws") {
  // D(E||E) = 0 exactly and the values form a Lawvere metric
  std::mt19937_64 rng(31);
  std::vector<double> divergences;
  for (int i = 0; i < 60; ++i) divergences.push_back(10.0 * catsem::test::uniform01(rng));
  for (double d : divergences) CHECK(pairwiseDivergence(d, d) == 0.0);
  for (int t = 0; t < 500; ++t) {
    double a = divergences[rng() % divergences.size()];
    double b = divergences[rng() % divergences.size()];
    double c = divergences[rng() % divergences.size()];
    CHECK(pairwiseDivergence(a, c) <=
          pairwiseDivergence(a, b) + pairwiseDivergence(b, c) + 1e-15);
  }
}

TEST_CASE("procrustes error vanishes for rigid motions") {
  Eigen::MatrixXd pts = randomPoints(10, 3, 9u);
  std::mt19937_64 rng(10);
  Eigen::MatrixXd g(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = catsem::test::uniform01(rng) - 0.5;
  Eigen::MatrixXd rotation = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  Eigen::MatrixXd moved = (pts * rotation).rowwise() + Eigen::RowVector3d(4, 5, -6);
  CHECK(procrustesError(moved, pts) <= 1e-10);
  CHECK(procrustesError(pts, pts) <= 1e-12);
}

TEST_CASE("configuration validation") {
  Eigen::MatrixXd pts = randomPoints(5, 2, 11u);
  Configuration config({}, pts);
  CHECK_NOTHROW(config.validate());
  CHECK(config.distanceMatrix().diagonal().cwiseAbs().maxCoeff() == 0.0);
}

TEST_SUITE_END();
