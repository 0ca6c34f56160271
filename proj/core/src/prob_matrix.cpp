#include "catsem/prob_matrix.hpp"

#include <algorithm>

namespace catsem {

ExprSet ExprSet::unit() {
  ExprSet s;
  s.label = "L0";
  s.elements = {Expression::unit()};
  s.names = {std::string(kEosSurface)};
  return s;
}

ExprSet ExprSet::fromGrade(const GradedCorpus& corpus, int n) {
  if (n == 0) return unit();
  ExprSet s;
  s.label = "L" + std::to_string(n);
  for (const Expression& e : corpus.expressionsOfGrade(n)) {
    s.elements.push_back(e);
    s.names.push_back(corpus.render(e));
  }
  return s;
}

ExprSet ExprSet::vocabulary(const GradedCorpus& corpus) {
  ExprSet s;
  s.label = "L1";
  for (const Token& t : corpus.vocab()) {
    if (t.id == kEosId) continue;
    s.elements.push_back(Expression({t.id}));
    s.names.push_back(t.surface);
  }
  return s;
}

bool ExprSet::isUnit() const {
  return elements.size() == 1 && elements.front().isUnit();
}

bool ExprSet::sameElements(const ExprSet& other) const {
  return elements == other.elements && names == other.names;
}

int ExprSet::indexOfName(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

ProbMatrix::ProbMatrix(ExprSet domain, ExprSet codomain, Eigen::MatrixXd entries,
                       MatrixKind kind)
    : domain_(std::move(domain)), codomain_(std::move(codomain)),
      entries_(std::move(entries)), kind_(kind) {
  if (entries_.rows() != domain_.size() || entries_.cols() != codomain_.size())
    throw NumericError("matrix shape does not match its labeled sets");
  validate();
}

ProbMatrix ProbMatrix::identity(const ExprSet& object) {
  return ProbMatrix(object, object,
                    Eigen::MatrixXd::Identity(object.size(), object.size()),
                    MatrixKind::RowStochastic);
}

bool ProbMatrix::isIdentityMatrix() const {
  if (!isSquare() || !domain_.sameElements(codomain_)) return false;
  return entries_ == Eigen::MatrixXd::Identity(rows(), cols());
}

void ProbMatrix::validate(double tol) const {
  if (entries_.size() > 0) {
    if (!entries_.allFinite()) throw NumericError("matrix has non-finite entries");
    double lo = entries_.minCoeff();
    double hi = entries_.maxCoeff();
    if (lo < -tol || hi > 1.0 + tol)
      throw NumericError("matrix entry outside [0,1]");
  }
  if (kind_ == MatrixKind::RowStochastic) {
    for (int i = 0; i < rows(); ++i) {
      if (std::abs(entries_.row(i).sum() - 1.0) > tol)
        throw NumericError("row-stochastic matrix row " + std::to_string(i) +
                           " does not sum to 1");
    }
  }
}

void requireSemanticSpace(const ProbMatrix& m) {
  if (!m.isSquare() || !m.domain().sameElements(m.codomain()))
    throw NumericError("semantic space must be an endomorphism of the vocabulary");
}

} // namespace catsem
