#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "catsem/prob_matrix.hpp"

namespace catsem {

enum class SimilarityChoice { S, T };

/// Bias query: how much more similar is `target` to `first` than to
/// `second` under the chosen similarity matrix.
struct BiasQuery {
  std::string target; // w_i
  std::string first;  // w_k
  std::string second; // w_j
  SimilarityChoice choice = SimilarityChoice::S;
};

/// b_i(k,j) = S_ik / S_ij over the chosen similarity matrix; 1 means
/// unbiased. Throws QueryError for unknown or non-distinct words and
/// NumericError when an involved entry is undefined.
double biasScore(const ProbMatrix& space, const BiasQuery& query);

struct BiasReport {
  BiasQuery query;
  double score = 0.0;
  std::map<std::string, double> probabilities; // contributing entries
  double postDebiasScore = 0.0;
  double distanceFirstBefore = 0.0;  // d_GV(i,k) before
  double distanceSecondBefore = 0.0; // d_GV(i,j) before
  double distanceFirstAfter = 0.0;
  double distanceSecondAfter = 0.0;
  bool renormalized = false;
  double maxInducedDrift = 0.0; // over the supplied audited triples
  std::string error;            // per-row audit failures
};

struct DebiasResult {
  ProbMatrix space;
  BiasReport report;
};

/// Multiplicatively rescales the four cross entries so that
/// p_kk/(p_ik p_ki) = p_jj/(p_ij p_ji), using the geometric-mean
/// projection that keeps the combined cross mass invariant in log space.
/// Diagonals are untouched. Optional row renormalization restores
/// stochasticity of the touched rows and re-reports the score;
/// `auditedTriples` feeds the induced-drift figure.
DebiasResult debias(const ProbMatrix& space, const BiasQuery& query,
                    bool renormalizeRows = false,
                    std::span<const BiasQuery> auditedTriples = {});

/// Batch audit over an explicit query list, sorted by |ln b| descending.
/// Unknown words produce per-row error entries instead of failing the
/// batch. `threads` caps worker threads (1 = sequential); results are
/// deterministic regardless of the thread count.
std::vector<BiasReport> biasAuditQueries(const ProbMatrix& space,
                                         const std::vector<BiasQuery>& queries,
                                         int threads = 1);

/// Cross-product wrapper: one biasScore per (target, pair).
std::vector<BiasReport> biasAudit(const ProbMatrix& space,
                                  const std::vector<std::pair<std::string, std::string>>& pairs,
                                  const std::vector<std::string>& targets,
                                  SimilarityChoice choice = SimilarityChoice::S,
                                  int threads = 1);

} // namespace catsem
