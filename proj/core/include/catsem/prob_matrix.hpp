#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "catsem/corpus.hpp"
#include "catsem/errors.hpp"

namespace catsem {

/// An ordered set of expressions — an object of the matrix category.
/// The element order fixes matrix indexing. `names` always carries one
/// display label per element; `elements` holds the actual expressions for
/// corpus-backed sets and stays empty for synthetic sets (e.g. Cartesian
/// products), whose identity lives in the names.
struct ExprSet {
  std::string label;
  std::vector<Expression> elements;
  std::vector<std::string> names;

  static ExprSet unit();
  static ExprSet fromGrade(const GradedCorpus& corpus, int n);
  static ExprSet vocabulary(const GradedCorpus& corpus); // L_T^1

  int size() const { return static_cast<int>(names.size()); }
  bool isUnit() const;
  bool sameElements(const ExprSet& other) const;
  int indexOfName(const std::string& name) const; // -1 if absent
};

enum class MatrixKind { RowStochastic, Probabilistic };

/// A labeled matrix with entries in [0,1]; rows are indexed by the source
/// (conditioning) set and columns by the target set, so a row-stochastic
/// matrix has unit row sums. Immutable value type.
class ProbMatrix {
public:
  /// Empty 0x0 matrix over empty sets; placeholder for default-constructed
  /// aggregates.
  ProbMatrix() = default;
  ProbMatrix(ExprSet domain, ExprSet codomain, Eigen::MatrixXd entries, MatrixKind kind);

  static ProbMatrix identity(const ExprSet& object);

  const ExprSet& domain() const { return domain_; }
  const ExprSet& codomain() const { return codomain_; }
  const Eigen::MatrixXd& entries() const { return entries_; }
  MatrixKind kind() const { return kind_; }

  int rows() const { return static_cast<int>(entries_.rows()); }
  int cols() const { return static_cast<int>(entries_.cols()); }
  double at(int i, int j) const { return entries_(i, j); }

  bool isSquare() const { return rows() == cols(); }
  bool isIdentityMatrix() const;

  /// Entry range and, for row-stochastic matrices, unit row sums.
  /// Throws NumericError on violation.
  void validate(double tol = 1e-12) const;

private:
  ExprSet domain_;
  ExprSet codomain_;
  Eigen::MatrixXd entries_;
  MatrixKind kind_ = MatrixKind::Probabilistic;
};

/// A semantic space is an endomorphism of the vocabulary: a square
/// vocabulary-indexed ProbMatrix. Throws NumericError if `m` is not square
/// with matching domain and codomain.
void requireSemanticSpace(const ProbMatrix& m);

} // namespace catsem
