#pragma once

#include "catsem/corpus.hpp"
#include "catsem/prob_matrix.hpp"

namespace catsem {

/// Conditional extension probability p(t|g) = C(t)/C(g) for contiguous
/// extensions g <= t; 1 when g and t coincide; 0 otherwise (including
/// unknown t and same-grade g != t). Throws QueryError when g itself is
/// not in the corpus.
double extensionProb(const GradedCorpus& corpus, const Expression& g, const Expression& t);

/// Row of probabilities p(gw|g) over one-word right extensions, indexed by
/// the extending word. Entries sum to at most 1.
ProbMatrix forwardDistribution(const GradedCorpus& corpus, const Expression& g);

/// Mirror of forwardDistribution for left extensions: p(wg|g).
ProbMatrix backwardDistribution(const GradedCorpus& corpus, const Expression& g);

} // namespace catsem
