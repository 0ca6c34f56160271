#pragma once

#include "catsem/corpus.hpp"
#include "catsem/prob_matrix.hpp"

namespace catsem {

/// Context domain for the Yoneda similarity infimum.
///
/// Under the literal AllExpressions reading the context g = b forces the
/// similarity of any two distinct expressions to 0, so the default domain
/// restricts contexts to common extensions of both arguments.
enum class ContextDomain { AllExpressions, FixedGrade, CommonExtensions };

struct SimilarityQuery {
  Expression a;
  Expression b;
  ContextDomain domain = ContextDomain::CommonExtensions;
  int contextGrade = 0; // used by FixedGrade
};

/// Same-grade similarity p(a||b): the infimum over contexts g of
/// min{p(g|a)/p(g|b), 1}, skipping contexts where the denominator
/// vanishes. Returns 1 when a == b; 0 when the common-extension domain is
/// empty. Throws QueryError on unequal grades.
double similarity(const GradedCorpus& corpus, const SimilarityQuery& query);

struct ColimitQuery {
  Expression left;  // g-
  Expression right; // g+
  double weightLeft = 1.0;
  double weightRight = 1.0;
  int middleLength = 1;
};

struct Completion {
  Expression expression;
  double probability; // C(t) / sum_v C(g- v g+)
};

/// Weighted colimit of the two-context diagram: the stored completion
/// g- w g+ maximizing min{p(t|g-)/W1, p(t|g+)/W2, 1}, ties broken by the
/// lexicographically smallest middle-word surface. The reported
/// probability is the completion probability of the winning expression.
/// Throws QueryError when no completion exists.
Completion weightedColimit(const GradedCorpus& corpus, const ColimitQuery& query);

/// Full completion distribution p(w|g+-) over middle words; rows sum to 1
/// over the stored candidates. Throws QueryError when no completion exists.
ProbMatrix completionDistribution(const GradedCorpus& corpus, const Expression& left,
                                  const Expression& right);

} // namespace catsem
