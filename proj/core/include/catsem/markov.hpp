#pragma once

#include <vector>

#include "catsem/prob_matrix.hpp"

namespace catsem {

/// Composition in the matrix category. Two row-stochastic factors compose
/// by the plain matrix product and stay row-stochastic. Otherwise every
/// row of the product is divided by the ceiling of the corresponding row
/// sum of the left factor and the result is probabilistic. Composition
/// with an identity matrix returns the other operand verbatim (the literal
/// ceiling rule does not satisfy the identity law for probabilistic rows
/// summing above 1).
ProbMatrix compose(const ProbMatrix& f, const ProbMatrix& g);

/// Tensor product of objects: all corpus expressions that are a
/// concatenation of an element of X followed by an element of Y. The unit
/// object (grade-0 piece) is returned when no such expression exists.
ExprSet tensorObjects(const GradedCorpus& corpus, const ExprSet& x, const ExprSet& y);

/// Tensor product of morphisms p: A->B and q: X->Y over the concatenation
/// sets A(x)X and B(x)Y, entries multiplying pairwise. Throws QueryError
/// when either tensor object is trivial.
ProbMatrix tensorMorphisms(const GradedCorpus& corpus, const ProbMatrix& p,
                           const ProbMatrix& q);

/// Kronecker product on Cartesian products of the labeled sets.
ProbMatrix cartesianProduct(const ProbMatrix& p, const ProbMatrix& q);

struct TelephoneResult {
  Eigen::VectorXd distribution;
  int argmaxIndex = -1;
  std::string argmaxName;
  int steps = 0;
  bool converged = false; // fixed-point mode only
};

/// Semantic telephone: composes `space` with itself `steps` times (via the
/// category composition rule) and applies the result to the start
/// distribution. The argmax uses lexicographic tie-breaking on element
/// names. The start must sum to 1 within 1e-9.
TelephoneResult telephone(const ProbMatrix& space, const Eigen::VectorXd& start, int steps);

/// Telephone along a chain f1, ..., fk applied in order.
TelephoneResult telephone(const std::vector<ProbMatrix>& chain, const Eigen::VectorXd& start);

/// One-hot start at the given expression of the space's domain.
TelephoneResult telephone(const ProbMatrix& space, const Expression& start, int steps);

/// Iterates v <- v f until the L1 change drops below `tol` or `maxSteps`
/// iterations. Requires a row-stochastic endomorphism.
TelephoneResult telephoneFixedPoint(const ProbMatrix& space, const Eigen::VectorXd& start,
                                    double tol = 1e-10, int maxSteps = 10000);

} // namespace catsem
