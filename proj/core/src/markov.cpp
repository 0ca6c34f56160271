#include "catsem/markov.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace catsem {

namespace {

// Ceiling with a small guard so a row sum that is an integer up to
// round-off does not get bumped to the next integer.
double guardedCeil(double x) {
  double c = std::ceil(x - 1e-9);
  return c < 1.0 ? 1.0 : c;
}

Eigen::MatrixXd clampUnitRange(Eigen::MatrixXd m) {
  if (m.size() > 0 && (m.minCoeff() < -1e-12 || m.maxCoeff() > 1.0 + 1e-12))
    throw NumericError("composition produced an entry outside [0,1]");
  return m.cwiseMax(0.0).cwiseMin(1.0);
}

} // namespace

ProbMatrix compose(const ProbMatrix& f, const ProbMatrix& g) {
  if (!f.codomain().sameElements(g.domain()))
    throw NumericError("compose: codomain of the first factor does not match the domain "
                       "of the second");
  if (f.isIdentityMatrix()) return g;
  if (g.isIdentityMatrix()) return f;

  if (f.kind() == MatrixKind::RowStochastic && g.kind() == MatrixKind::RowStochastic) {
    return ProbMatrix(f.domain(), g.codomain(), clampUnitRange(f.entries() * g.entries()),
                      MatrixKind::RowStochastic);
  }

  Eigen::MatrixXd h = f.entries() * g.entries();
  for (int i = 0; i < h.rows(); ++i) h.row(i) /= guardedCeil(f.entries().row(i).sum());
  return ProbMatrix(f.domain(), g.codomain(), clampUnitRange(std::move(h)),
                    MatrixKind::Probabilistic);
}

ExprSet tensorObjects(const GradedCorpus& corpus, const ExprSet& x, const ExprSet& y) {
  std::vector<Expression> found;
  for (const Expression& a : x.elements) {
    for (const Expression& b : y.elements) {
      Expression joined = a.concat(b);
      if (corpus.contains(joined)) found.push_back(std::move(joined));
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  if (found.empty() || (found.size() == 1 && found.front().isUnit())) return ExprSet::unit();

  ExprSet out;
  out.label = x.label + "*" + y.label;
  for (Expression& e : found) {
    out.names.push_back(corpus.render(e));
    out.elements.push_back(std::move(e));
  }
  return out;
}

ProbMatrix tensorMorphisms(const GradedCorpus& corpus, const ProbMatrix& p,
                           const ProbMatrix& q) {
  ExprSet source = tensorObjects(corpus, p.domain(), q.domain());
  ExprSet target = tensorObjects(corpus, p.codomain(), q.codomain());
  if (source.isUnit() || target.isUnit())
    throw QueryError("tensorMorphisms: tensor object is trivial (empty product)");

  std::unordered_map<Expression, int, ExpressionHash> sourceIndex, targetIndex;
  for (int i = 0; i < source.size(); ++i) sourceIndex[source.elements[static_cast<size_t>(i)]] = i;
  for (int j = 0; j < target.size(); ++j) targetIndex[target.elements[static_cast<size_t>(j)]] = j;

  Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(source.size(), target.size());
  std::vector<bool> assigned(static_cast<size_t>(source.size() * target.size()), false);

  for (int a = 0; a < p.rows(); ++a) {
    for (int xIdx = 0; xIdx < q.rows(); ++xIdx) {
      auto sIt = sourceIndex.find(
          p.domain().elements[static_cast<size_t>(a)].concat(q.domain().elements[static_cast<size_t>(xIdx)]));
      if (sIt == sourceIndex.end()) continue;
      for (int b = 0; b < p.cols(); ++b) {
        for (int yIdx = 0; yIdx < q.cols(); ++yIdx) {
          auto tIt = targetIndex.find(p.codomain().elements[static_cast<size_t>(b)].concat(
              q.codomain().elements[static_cast<size_t>(yIdx)]));
          if (tIt == targetIndex.end()) continue;
          size_t flat = static_cast<size_t>(sIt->second) * static_cast<size_t>(target.size()) +
                        static_cast<size_t>(tIt->second);
          if (assigned[flat]) continue; // first decomposition wins
          assigned[flat] = true;
          entries(sIt->second, tIt->second) = p.at(a, b) * q.at(xIdx, yIdx);
        }
      }
    }
  }

  MatrixKind kind = MatrixKind::Probabilistic;
  if ((entries.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12)
    kind = MatrixKind::RowStochastic;
  return ProbMatrix(std::move(source), std::move(target), std::move(entries), kind);
}

ProbMatrix cartesianProduct(const ProbMatrix& p, const ProbMatrix& q) {
  auto productSet = [](const ExprSet& a, const ExprSet& b) {
    ExprSet out;
    out.label = a.label + "x" + b.label;
    for (const std::string& na : a.names)
      for (const std::string& nb : b.names) out.names.push_back("(" + na + "," + nb + ")");
    return out;
  };

  Eigen::MatrixXd entries(p.rows() * q.rows(), p.cols() * q.cols());
  for (int a = 0; a < p.rows(); ++a)
    for (int b = 0; b < p.cols(); ++b)
      entries.block(a * q.rows(), b * q.cols(), q.rows(), q.cols()) = p.at(a, b) * q.entries();

  MatrixKind kind = (p.kind() == MatrixKind::RowStochastic &&
                     q.kind() == MatrixKind::RowStochastic)
                        ? MatrixKind::RowStochastic
                        : MatrixKind::Probabilistic;
  return ProbMatrix(productSet(p.domain(), q.domain()), productSet(p.codomain(), q.codomain()),
                    std::move(entries), kind);
}

namespace {

void checkStart(const ProbMatrix& space, const Eigen::VectorXd& start) {
  if (start.size() != space.rows())
    throw QueryError("telephone start vector does not match the space");
  if (std::abs(start.sum() - 1.0) > 1e-9)
    throw QueryError("telephone start distribution must sum to 1");
  if (start.minCoeff() < 0.0) throw QueryError("telephone start distribution has negative mass");
}

TelephoneResult finish(const ExprSet& codomain, Eigen::VectorXd dist, int steps,
                       bool converged) {
  TelephoneResult r;
  r.steps = steps;
  r.converged = converged;
  r.argmaxIndex = 0;
  for (int j = 1; j < dist.size(); ++j) {
    if (dist(j) > dist(r.argmaxIndex) ||
        (dist(j) == dist(r.argmaxIndex) &&
         codomain.names[static_cast<size_t>(j)] < codomain.names[static_cast<size_t>(r.argmaxIndex)]))
      r.argmaxIndex = j;
  }
  r.argmaxName = codomain.names[static_cast<size_t>(r.argmaxIndex)];
  r.distribution = std::move(dist);
  return r;
}

} // namespace

TelephoneResult telephone(const ProbMatrix& space, const Eigen::VectorXd& start, int steps) {
  if (!space.isSquare() || !space.domain().sameElements(space.codomain()))
    throw NumericError("telephone requires an endomorphism");
  if (steps < 0) throw QueryError("telephone steps must be non-negative");
  checkStart(space, start);

  if (steps == 0) return finish(space.codomain(), start, 0, false);
  ProbMatrix total = space;
  for (int s = 1; s < steps; ++s) total = compose(total, space);
  return finish(space.codomain(), total.entries().transpose() * start, steps, false);
}

TelephoneResult telephone(const std::vector<ProbMatrix>& chain, const Eigen::VectorXd& start) {
  if (chain.empty()) throw QueryError("telephone chain is empty");
  checkStart(chain.front(), start);
  ProbMatrix total = chain.front();
  for (size_t i = 1; i < chain.size(); ++i) total = compose(total, chain[i]);
  return finish(total.codomain(), total.entries().transpose() * start,
                static_cast<int>(chain.size()), false);
}

TelephoneResult telephone(const ProbMatrix& space, const Expression& start, int steps) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(space.rows());
  auto it = std::find(space.domain().elements.begin(), space.domain().elements.end(), start);
  if (it == space.domain().elements.end())
    throw QueryError("telephone start expression not in the space");
  v(static_cast<int>(it - space.domain().elements.begin())) = 1.0;
  return telephone(space, v, steps);
}

TelephoneResult telephoneFixedPoint(const ProbMatrix& space, const Eigen::VectorXd& start,
                                    double tol, int maxSteps) {
  if (!space.isSquare() || !space.domain().sameElements(space.codomain()))
    throw NumericError("telephone requires an endomorphism");
  if (space.kind() != MatrixKind::RowStochastic)
    throw NumericError("fixed-point mode requires a row-stochastic space");
  checkStart(space, start);

  Eigen::VectorXd v = start;
  for (int s = 1; s <= maxSteps; ++s) {
    Eigen::VectorXd next = space.entries().transpose() * v;
    double change = (next - v).cwiseAbs().sum();
    v = std::move(next);
    if (change < tol) return finish(space.codomain(), std::move(v), s, true);
  }
  return finish(space.codomain(), std::move(v), maxSteps, false);
}

} // namespace catsem
