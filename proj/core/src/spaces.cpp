#include "catsem/spaces.hpp"

#include <cmath>

namespace catsem {

Eigen::MatrixXd coocMatrix(const GradedCorpus& corpus, double alpha) {
  const int v = corpus.wordCount();
  Eigen::MatrixXd x(v, v);
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j)
      x(i, j) = static_cast<double>(corpus.cooc(i + 1, j + 1)) + alpha;
  return x;
}

Eigen::MatrixXd fiberContextCounts(const GradedCorpus& corpus, int windowRadius,
                                   double alpha) {
  const int v = corpus.wordCount();
  const int windowGrade = 2 * windowRadius + 1;
  if (corpus.maxGrade() < windowGrade)
    throw CorpusError("corpus does not store grade " + std::to_string(windowGrade) +
                      " expressions needed for window fibers");

  Eigen::MatrixXd r = Eigen::MatrixXd::Constant(v, v, alpha);
  for (const Expression& window : corpus.expressionsOfGrade(windowGrade)) {
    const double c = static_cast<double>(corpus.count(window));
    const int middle = window.at(windowRadius);
    for (int pos = 0; pos < windowGrade; ++pos) {
      if (pos == windowRadius) continue;
      r(middle - 1, window.at(pos) - 1) += c;
    }
  }
  return r;
}

ProbMatrix gloveSpace(const GradedCorpus& corpus, const CoocSpec& spec) {
  if (corpus.wordCount() == 0) throw CorpusError("empty vocabulary");
  if (spec.windowRadius != corpus.windowRadius())
    throw QueryError("co-occurrence window radius " + std::to_string(corpus.windowRadius()) +
                     " does not match the requested radius " +
                     std::to_string(spec.windowRadius));
  if (spec.alpha < 0.0) throw QueryError("smoothing alpha must be non-negative");

  Eigen::MatrixXd p = coocMatrix(corpus, spec.alpha);
  for (int i = 0; i < p.rows(); ++i) {
    double rowSum = p.row(i).sum();
    if (rowSum == 0.0)
      throw NumericError("word '" + corpus.surface(i + 1) +
                         "' has no co-occurrences and alpha = 0");
    p.row(i) /= rowSum;
  }
  ExprSet vocabSet = ExprSet::vocabulary(corpus);
  return ProbMatrix(vocabSet, vocabSet, std::move(p), MatrixKind::RowStochastic);
}

W2vSpace w2vSpace(const GradedCorpus& corpus, const CoocSpec& spec) {
  if (corpus.wordCount() == 0) throw CorpusError("empty vocabulary");
  if (spec.alpha < 0.0) throw QueryError("smoothing alpha must be non-negative");

  const int v = corpus.wordCount();
  Eigen::MatrixXd q = fiberContextCounts(corpus, spec.windowRadius, 0.0);

  W2vSpace out;
  for (int i = 0; i < v; ++i) {
    if (q.row(i).sum() == 0.0) { // no stored full window has this middle word
      if (spec.alpha == 0.0)
        throw NumericError("word '" + corpus.surface(i + 1) +
                           "' has no full windows and alpha = 0");
      out.uniformFallbackWords.push_back(corpus.surface(i + 1));
    }
  }
  q.array() += spec.alpha;
  for (int i = 0; i < v; ++i) q.row(i) /= q.row(i).sum();
  ExprSet vocabSet = ExprSet::vocabulary(corpus);
  out.matrix = ProbMatrix(vocabSet, vocabSet, std::move(q), MatrixKind::RowStochastic);
  return out;
}

SimilarityMatrix similarityS(const ProbMatrix& space) {
  requireSemanticSpace(space);
  const Eigen::MatrixXd& p = space.entries();
  const int n = space.rows();
  SimilarityMatrix s{space.domain().names, Eigen::MatrixXd(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      double cross = p(i, k) * p(k, i);
      if (cross == 0.0)
        throw NumericError("similarity S undefined: zero cross entry for pair (" +
                           space.domain().names[static_cast<size_t>(i)] + ", " +
                           space.domain().names[static_cast<size_t>(k)] + ")");
      s.values(i, k) = (p(i, i) * p(k, k)) / cross;
    }
  }
  return s;
}

SimilarityMatrix similarityT(const ProbMatrix& space) {
  requireSemanticSpace(space);
  const Eigen::MatrixXd& p = space.entries();
  const int n = space.rows();
  SimilarityMatrix t{space.domain().names, Eigen::MatrixXd(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double diag = p(i, i) + p(j, j);
      if (diag == 0.0)
        throw NumericError("similarity T undefined: zero diagonal sum for pair (" +
                           space.domain().names[static_cast<size_t>(i)] + ", " +
                           space.domain().names[static_cast<size_t>(j)] + ")");
      t.values(i, j) = (p(i, j) + p(j, i)) / diag;
    }
  }
  return t;
}

double entropy(const ProbMatrix& space, const GradedCorpus& corpus) {
  requireSemanticSpace(space);
  if (space.rows() != corpus.wordCount())
    throw NumericError("entropy: space is not indexed by this corpus vocabulary");
  const Eigen::MatrixXd& q = space.entries();
  double h = 0.0;
  for (int i = 0; i < q.rows(); ++i) {
    Expression word({static_cast<int32_t>(i) + 1});
    double m = static_cast<double>(corpus.count(word));
    double rowH = 0.0;
    for (int j = 0; j < q.cols(); ++j) {
      double p = q(i, j);
      if (p > 0.0) rowH -= p * std::log(p);
    }
    h += m * rowH;
  }
  return h;
}

} // namespace catsem
