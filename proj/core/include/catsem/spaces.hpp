#pragma once

#include <vector>

#include "catsem/corpus.hpp"
#include "catsem/prob_matrix.hpp"

namespace catsem {

enum class SpaceVariant { Glove, W2v };

struct CoocSpec {
  int windowRadius = 2;
  double alpha = 1.0; // add-alpha smoothing on co-occurrence counts
  SpaceVariant variant = SpaceVariant::Glove;
};

/// Dense smoothed co-occurrence matrix X + alpha over the vocabulary.
Eigen::MatrixXd coocMatrix(const GradedCorpus& corpus, double alpha);

/// Context counts over the grade-(2k+1) window fibers, plus alpha: entry
/// (i,j) counts occurrences of word j at non-middle positions of stored
/// windows whose middle word is i, weighted by window multiplicity.
Eigen::MatrixXd fiberContextCounts(const GradedCorpus& corpus, int windowRadius,
                                   double alpha);

/// GloVe-style semantic space P: window co-occurrence rows normalized to
/// probabilities, P_ij = (X_ij + a) / sum_k (X_ik + a).
ProbMatrix gloveSpace(const GradedCorpus& corpus, const CoocSpec& spec);

struct W2vSpace {
  ProbMatrix matrix;
  /// Words with no stored full window; their rows fell back to the
  /// alpha-uniform distribution.
  std::vector<std::string> uniformFallbackWords;
};

/// Word2Vec-style semantic space Q from window fibers.
W2vSpace w2vSpace(const GradedCorpus& corpus, const CoocSpec& spec);

/// Symmetric positive matrix with unit diagonal.
struct SimilarityMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
};

/// S_ik = (P_ii P_kk) / (P_ik P_ki). Throws NumericError on a vanishing
/// cross entry, naming the offending pair.
SimilarityMatrix similarityS(const ProbMatrix& space);

/// T_ij = (P_ij + P_ji) / (P_ii + P_jj). Throws NumericError on a
/// vanishing diagonal sum.
SimilarityMatrix similarityT(const ProbMatrix& space);

/// Occurrence-weighted row entropy in nats:
/// H(Q) = -sum_i m_i sum_j Q_ij ln Q_ij with m_i the corpus count of word
/// i and 0 ln 0 = 0.
double entropy(const ProbMatrix& space, const GradedCorpus& corpus);

} // namespace catsem
