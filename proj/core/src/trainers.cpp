#include "catsem/trainers.hpp"

#include <cmath>
#include <random>

namespace catsem {

namespace {

// Deterministic uniform double in (0,1) from a 64-bit generator; avoids
// distribution implementation differences.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::MatrixXd gaussianMatrix(int rows, int cols, double scale, std::mt19937_64& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      // Box-Muller
      double u1 = std::max(uniform01(rng), 1e-300);
      double u2 = uniform01(rng);
      m(i, j) = scale * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
  }
  return m;
}

Eigen::MatrixXd gloveWeights(const Eigen::MatrixXd& counts, double xMax) {
  double cap = xMax > 0.0 ? xMax : counts.maxCoeff();
  return (counts / cap).array().pow(0.75).min(1.0).matrix();
}

ProbMatrix rowNormalized(const Eigen::MatrixXd& counts, const std::vector<std::string>& labels) {
  Eigen::MatrixXd p = counts;
  for (int i = 0; i < p.rows(); ++i) p.row(i) /= p.row(i).sum();
  ExprSet set;
  set.label = "L1";
  set.names = labels;
  set.elements.resize(labels.size()); // synthetic label-indexed set
  for (size_t i = 0; i < labels.size(); ++i)
    set.elements[i] = Expression({static_cast<int32_t>(i) + 1});
  return ProbMatrix(set, set, std::move(p), MatrixKind::RowStochastic);
}

} // namespace

double gloveLoss(const GloveParams& params, const Eigen::MatrixXd& logCounts,
                 const Eigen::MatrixXd& weights) {
  Eigen::MatrixXd residual = params.target * params.context.transpose();
  residual.colwise() += params.biasTarget;
  residual.rowwise() += params.biasContext.transpose();
  residual -= logCounts;
  return (weights.array() * residual.array().square()).sum();
}

GloveParams gloveGradient(const GloveParams& params, const Eigen::MatrixXd& logCounts,
                          const Eigen::MatrixXd& weights) {
  Eigen::MatrixXd residual = params.target * params.context.transpose();
  residual.colwise() += params.biasTarget;
  residual.rowwise() += params.biasContext.transpose();
  residual -= logCounts;
  Eigen::MatrixXd scaled = 2.0 * weights.cwiseProduct(residual);

  GloveParams grad;
  grad.target = scaled * params.context;
  grad.context = scaled.transpose() * params.target;
  grad.biasTarget = scaled.rowwise().sum();
  grad.biasContext = scaled.colwise().sum();
  return grad;
}

GloveResult gloveTrainCounts(const Eigen::MatrixXd& smoothedCounts,
                             const std::vector<std::string>& labels, int dim,
                             const TrainOptions& options, const GloveIterationHook& hook) {
  const int n = static_cast<int>(smoothedCounts.rows());
  if (smoothedCounts.cols() != n) throw NumericError("co-occurrence matrix must be square");
  if (dim < 1 || dim > n) throw NumericError("embedding dimension must lie in [1, vocab]");
  if (smoothedCounts.minCoeff() <= 0.0)
    throw NumericError("co-occurrence counts must be positive; raise alpha");

  Eigen::MatrixXd logCounts = smoothedCounts.array().log();
  Eigen::MatrixXd weights = gloveWeights(smoothedCounts, options.xMax);

  std::mt19937_64 rng(options.seed);
  GloveParams params;
  params.target = gaussianMatrix(n, dim, options.initScale, rng);
  params.context = params.target;
  params.biasTarget = Eigen::VectorXd::Zero(n);
  params.biasContext = Eigen::VectorXd::Zero(n);

  GloveResult out;
  out.weights = weights;
  double loss = gloveLoss(params, logCounts, weights);
  out.lossTrace.push_back(loss);
  if (hook) hook(0, params);

  double step = options.learningRate;
  for (int it = 1; it <= options.maxIter; ++it) {
    GloveParams grad = gloveGradient(params, logCounts, weights);
    GloveParams next;
    double nextLoss = 0.0;
    while (true) {
      next.target = params.target - step * grad.target;
      next.context = params.context - step * grad.context;
      next.biasTarget = params.biasTarget - step * grad.biasTarget;
      next.biasContext = params.biasContext - step * grad.biasContext;
      nextLoss = gloveLoss(next, logCounts, weights);
      if (!options.backtracking || nextLoss <= loss || step < 1e-14) break;
      step *= 0.5;
    }
    if (!std::isfinite(nextLoss))
      throw NumericError("GloVe loss diverged at iteration " + std::to_string(it));
    params = std::move(next);
    loss = nextLoss;
    out.lossTrace.push_back(loss);
    if (hook) hook(it, params);
    if (options.backtracking) step = std::min(step * 1.1, 1.0);
  }

  out.model = std::move(params);
  Configuration config(labels, out.model.wordVectors());
  ProbMatrix space = rowNormalized(smoothedCounts, labels);
  Embedding embedding{space, config, {}};
  embedding.divergences["glove_objective"] = loss;
  out.embedding = std::move(embedding);
  return out;
}

GloveResult gloveTrain(const GradedCorpus& corpus, const CoocSpec& spec, int dim,
                       const TrainOptions& options, const GloveIterationHook& hook) {
  if (spec.windowRadius != corpus.windowRadius())
    throw QueryError("co-occurrence window radius does not match the corpus");
  Eigen::MatrixXd counts = coocMatrix(corpus, spec.alpha);
  std::vector<std::string> labels = ExprSet::vocabulary(corpus).names;
  return gloveTrainCounts(counts, labels, dim, options, hook);
}

Eigen::MatrixXd softmaxSimilarities(const Eigen::MatrixXd& vectors) {
  Eigen::MatrixXd z = vectors * vectors.transpose();
  Eigen::MatrixXd s(z.rows(), z.cols());
  for (int i = 0; i < z.rows(); ++i) {
    double zmax = z.row(i).maxCoeff();
    Eigen::ArrayXd e = (z.row(i).array() - zmax).exp();
    s.row(i) = (e / e.sum()).matrix();
  }
  return s;
}

double softmaxLoss(const Eigen::MatrixXd& vectors, const Eigen::MatrixXd& q,
                   const Eigen::VectorXd& rowWeights) {
  Eigen::MatrixXd s = softmaxSimilarities(vectors);
  double loss = 0.0;
  for (int i = 0; i < q.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < q.cols(); ++j) {
      if (q(i, j) > 0.0) row -= q(i, j) * std::log(s(i, j));
    }
    loss += rowWeights(i) * row;
  }
  return loss;
}

Eigen::MatrixXd softmaxGradient(const Eigen::MatrixXd& vectors, const Eigen::MatrixXd& q,
                                const Eigen::VectorXd& rowWeights) {
  Eigen::MatrixXd s = softmaxSimilarities(vectors);
  Eigen::MatrixXd g = rowWeights.asDiagonal() * (s - q);
  return (g + g.transpose()) * vectors;
}

SoftmaxResult softmaxTrainQ(const Eigen::MatrixXd& q, const Eigen::VectorXd& rowWeights,
                            const std::vector<std::string>& labels, int dim,
                            const TrainOptions& options) {
  const int n = static_cast<int>(q.rows());
  if (q.cols() != n) throw NumericError("Q must be square");
  if (dim < 1 || dim > n) throw NumericError("embedding dimension must lie in [1, vocab]");

  SoftmaxResult out;
  out.totalWeight = rowWeights.sum();
  for (int i = 0; i < n; ++i) {
    double rowH = 0.0;
    for (int j = 0; j < n; ++j)
      if (q(i, j) > 0.0) rowH -= q(i, j) * std::log(q(i, j));
    out.entropyQ += rowWeights(i) * rowH;
  }

  std::mt19937_64 rng(options.seed);
  Eigen::MatrixXd v = gaussianMatrix(n, dim, options.initScale, rng);

  double loss = softmaxLoss(v, q, rowWeights);
  out.crossEntropyTrace.push_back(loss);
  out.klTrace.push_back(loss - out.entropyQ);

  double step = options.learningRate;
  for (int it = 1; it <= options.maxIter; ++it) {
    Eigen::MatrixXd grad = softmaxGradient(v, q, rowWeights);
    Eigen::MatrixXd next;
    double nextLoss = 0.0;
    while (true) {
      next = v - step * grad;
      nextLoss = softmaxLoss(next, q, rowWeights);
      if (!options.backtracking || nextLoss <= loss || step < 1e-14) break;
      step *= 0.5;
    }
    if (!std::isfinite(nextLoss))
      throw NumericError("softmax loss diverged at iteration " + std::to_string(it));
    v = std::move(next);
    loss = nextLoss;
    out.crossEntropyTrace.push_back(loss);
    out.klTrace.push_back(loss - out.entropyQ);
    if (options.backtracking) step = std::min(step * 1.1, 10.0);
  }

  out.vectors = v;
  ProbMatrix space = rowNormalized(q, labels);
  Embedding embedding{space, Configuration(labels, v), {}};
  embedding.divergences["cross_entropy"] = loss;
  embedding.divergences["kl"] = loss - out.entropyQ;
  out.embedding = std::move(embedding);
  return out;
}

SoftmaxResult softmaxTrain(const GradedCorpus& corpus, const CoocSpec& spec, int dim,
                           const TrainOptions& options) {
  W2vSpace w2v = w2vSpace(corpus, spec);
  const int n = corpus.wordCount();
  Eigen::VectorXd m(n);
  for (int i = 0; i < n; ++i)
    m(i) = static_cast<double>(corpus.count(Expression({static_cast<int32_t>(i) + 1})));
  return softmaxTrainQ(w2v.matrix.entries(), m, w2v.matrix.domain().names, dim, options);
}

EquivalenceReport equivalenceExperiment(const GradedCorpus& corpus,
                                        const EquivalenceOptions& options) {
  EquivalenceReport report;

  // ---- GloVe leg -------------------------------------------------------
  ProbMatrix p = gloveSpace(corpus, options.spec);
  GloveDistances dGV = gloveDistance(p);
  report.clampedPairs = dGV.clampedPairs;

  Eigen::MatrixXd dGVsq = dGV.distances.cwiseProduct(dGV.distances);
  Eigen::MatrixXd counts = coocMatrix(corpus, options.spec.alpha);
  Eigen::MatrixXd weightsUsed =
      (counts / counts.maxCoeff()).array().pow(0.75).min(1.0).matrix();

  std::vector<double> paperDiv, appendixDiv;
  GloveIterationHook hook = [&](int it, const GloveParams& params) {
    if (it % options.traceEvery != 0) return;
    Eigen::MatrixXd dX = Configuration({}, params.wordVectors()).distanceMatrix();
    double paper = 0.0, appendix = 0.0;
    for (int i = 0; i < dX.rows(); ++i) {
      for (int j = 0; j < dX.cols(); ++j) {
        if (i == j) continue;
        double gapD = dGV.distances(i, j) - dX(i, j);
        double gapSq = dGVsq(i, j) - dX(i, j) * dX(i, j);
        paper += weightsUsed(i, j) * gapD * gapD;
        appendix += weightsUsed(i, j) * gapSq * gapSq;
      }
    }
    paperDiv.push_back(paper);
    appendixDiv.push_back(appendix);
  };

  GloveResult glove = gloveTrain(corpus, options.spec, options.dim, options.glove, hook);
  report.gloveLossTrace = glove.lossTrace;
  report.gloveFinalLoss = glove.lossTrace.back();
  report.glovePaperDivergenceTrace = std::move(paperDiv);
  report.gloveAppendixDivergenceTrace = std::move(appendixDiv);
  for (size_t i = 0; i < report.gloveAppendixDivergenceTrace.size(); ++i) {
    size_t lossIdx = std::min(i * static_cast<size_t>(options.traceEvery),
                              report.gloveLossTrace.size() - 1);
    report.gloveObjectiveGapTrace.push_back(std::abs(
        report.gloveLossTrace[lossIdx] - report.gloveAppendixDivergenceTrace[i]));
  }

  SmacofSolution mdsGlove =
      smacof(dGV.distances, options.dim, options.smacof, p.domain().names);
  report.smacofStressGlove = mdsGlove.stressTrace.back();

  Eigen::MatrixXd trained = glove.embedding.target.distanceMatrix();
  Eigen::MatrixXd viaMds = mdsGlove.config.distanceMatrix();
  report.pearsonR = pearsonUpper(trained, viaMds);
  report.relFrobenius = relativeFrobenius(trained, viaMds);

  // ---- W2V leg -----------------------------------------------------------
  SoftmaxResult softmax = softmaxTrain(corpus, options.spec, options.dim, options.softmax);
  report.entropyQ = softmax.entropyQ;
  report.crossEntropyTrace = softmax.crossEntropyTrace;
  report.klTrace = softmax.klTrace;
  report.klPerRow = softmax.klTrace.back() / softmax.totalWeight;

  const Eigen::MatrixXd& q = softmax.embedding.source.entries();
  Eigen::MatrixXd qHat = 0.5 * (q + q.transpose());
  qHat /= qHat.maxCoeff(); // scale the largest entry to 1
  Eigen::MatrixXd dW2v = (-qHat.array().log()).matrix();
  dW2v.diagonal().setZero();

  SmacofSolution mdsW2v =
      smacof(dW2v, options.dim, options.smacof, softmax.embedding.source.domain().names);
  report.mdsStressW2v = mdsW2v.stressTrace.back();

  for (double kl : report.klTrace)
    report.w2vMdsGapTrace.push_back(std::abs(kl - report.mdsStressW2v));
  size_t tailStart = report.w2vMdsGapTrace.size() / 5;
  report.w2vGapNonIncreasingTail = true;
  for (size_t i = tailStart + 1; i < report.w2vMdsGapTrace.size(); ++i) {
    if (report.w2vMdsGapTrace[i] > report.w2vMdsGapTrace[i - 1] + 1e-9) {
      report.w2vGapNonIncreasingTail = false;
      break;
    }
  }

  report.thresholdsMet = report.pearsonR >= options.minPearson &&
                         report.relFrobenius <= options.maxRelFrobenius &&
                         report.klPerRow <= options.maxKlPerRow &&
                         report.w2vGapNonIncreasingTail;
  return report;
}

} // namespace catsem
