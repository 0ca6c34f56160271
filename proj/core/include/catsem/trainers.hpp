#pragma once

#include <functional>
#include <vector>

#include "catsem/embed.hpp"
#include "catsem/spaces.hpp"

namespace catsem {

struct TrainOptions {
  int maxIter = 2000;
  double learningRate = 0.05;
  unsigned seed = 42;
  double initScale = 0.1;
  /// Weight cap parameter x_max of the GloVe weighting; 0 means "use the
  /// largest smoothed count".
  double xMax = 0.0;
  /// Halve the step until the loss does not increase; keeps the loss trace
  /// monotone. Disabling gives plain fixed-step gradient descent.
  bool backtracking = true;
};

// ---- GloVe objective --------------------------------------------------

struct GloveParams {
  Eigen::MatrixXd target;      // v_i rows
  Eigen::MatrixXd context;     // v~_j rows
  Eigen::VectorXd biasTarget;  // a_i
  Eigen::VectorXd biasContext; // b_j

  Eigen::MatrixXd wordVectors() const { return 0.5 * (target + context); }
};

/// sum_ij W_ij (v_i^T v~_j + a_i + b_j - lnX_ij)^2
double gloveLoss(const GloveParams& params, const Eigen::MatrixXd& logCounts,
                 const Eigen::MatrixXd& weights);
GloveParams gloveGradient(const GloveParams& params, const Eigen::MatrixXd& logCounts,
                          const Eigen::MatrixXd& weights);

struct GloveResult {
  GloveParams model;
  Embedding embedding;
  std::vector<double> lossTrace;
  Eigen::MatrixXd weights; // the fixed W_ij actually used
};

using GloveIterationHook = std::function<void(int iteration, const GloveParams&)>;

/// Full-batch gradient descent on the GloVe objective over the smoothed
/// co-occurrence counts. Deterministic under the seed; context vectors
/// start equal to target vectors so that with symmetric counts the two
/// stay equal and the averaged word vectors realize the Gram target.
/// Throws NumericError if the loss turns non-finite, naming the iteration.
GloveResult gloveTrainCounts(const Eigen::MatrixXd& smoothedCounts,
                             const std::vector<std::string>& labels, int dim,
                             const TrainOptions& options = {},
                             const GloveIterationHook& hook = nullptr);

GloveResult gloveTrain(const GradedCorpus& corpus, const CoocSpec& spec, int dim,
                       const TrainOptions& options = {},
                       const GloveIterationHook& hook = nullptr);

// ---- Word2Vec-style full softmax objective ----------------------------

/// Occurrence-weighted cross entropy H(Q,S) with S the row softmax of
/// v v^T.
double softmaxLoss(const Eigen::MatrixXd& vectors, const Eigen::MatrixXd& q,
                   const Eigen::VectorXd& rowWeights);
Eigen::MatrixXd softmaxGradient(const Eigen::MatrixXd& vectors, const Eigen::MatrixXd& q,
                                const Eigen::VectorXd& rowWeights);
/// Row softmax of v v^T.
Eigen::MatrixXd softmaxSimilarities(const Eigen::MatrixXd& vectors);

struct SoftmaxResult {
  Eigen::MatrixXd vectors;
  Embedding embedding;
  std::vector<double> crossEntropyTrace; // H(Q, S_t), occurrence weighted
  std::vector<double> klTrace;           // D_KL(Q || S_t) = H(Q,S_t) - H(Q)
  double entropyQ = 0.0;
  double totalWeight = 0.0; // sum of m_i
};

SoftmaxResult softmaxTrainQ(const Eigen::MatrixXd& q, const Eigen::VectorXd& rowWeights,
                            const std::vector<std::string>& labels, int dim,
                            const TrainOptions& options = {});

SoftmaxResult softmaxTrain(const GradedCorpus& corpus, const CoocSpec& spec, int dim,
                           const TrainOptions& options = {});

// ---- Theorem 4.8-style equivalence experiment --------------------------

struct EquivalenceOptions {
  CoocSpec spec{2, 1.0, SpaceVariant::Glove};
  int dim = 12;
  TrainOptions glove{4000, 0.03, 42, 0.1, 0.0, true};
  TrainOptions softmax{3000, 0.5, 42, 0.1, 0.0, true};
  SmacofOptions smacof{500, 1e-9};
  int traceEvery = 10; // distance-trace sampling stride for the GloVe leg
  double minPearson = 0.99;
  double maxRelFrobenius = 0.05;
  double maxKlPerRow = 1e-2;
};

struct EquivalenceReport {
  // GloVe leg: trained distances vs smacof on d_GV
  double pearsonR = 0.0;
  double relFrobenius = 0.0;
  int clampedPairs = 0;
  double gloveFinalLoss = 0.0;
  double smacofStressGlove = 0.0;
  std::vector<double> gloveLossTrace;
  std::vector<double> glovePaperDivergenceTrace;    // sum W (d_GV - d_X)^2
  std::vector<double> gloveAppendixDivergenceTrace; // sum W (d_GV^2 - d_X^2)^2
  std::vector<double> gloveObjectiveGapTrace;       // |objective - appendix form|

  // W2V leg: softmax training vs smacof on -ln of the symmetrized Q
  double entropyQ = 0.0;
  double klPerRow = 0.0;
  double mdsStressW2v = 0.0;
  bool w2vGapNonIncreasingTail = false; // over the last 80% of iterations
  std::vector<double> crossEntropyTrace;
  std::vector<double> klTrace;
  std::vector<double> w2vMdsGapTrace; // |D_W2V - (D_MDS + H(Q))|

  bool thresholdsMet = false;
};

/// Runs both legs of the desk-scale equivalence experiment on one corpus.
EquivalenceReport equivalenceExperiment(const GradedCorpus& corpus,
                                        const EquivalenceOptions& options = {});

} // namespace catsem
