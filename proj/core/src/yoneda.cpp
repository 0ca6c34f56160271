#include "catsem/yoneda.hpp"

#include <algorithm>
#include <limits>

#include "catsem/syntax.hpp"

namespace catsem {

namespace {

double cappedRatio(double num, double den) {
  double r = num / den;
  return r < 1.0 ? r : 1.0;
}

} // namespace

double similarity(const GradedCorpus& corpus, const SimilarityQuery& query) {
  if (query.a.grade() != query.b.grade())
    throw QueryError("similarity requires expressions of equal grade");
  if (!corpus.contains(query.a) || !corpus.contains(query.b))
    throw QueryError("similarity arguments must be in the corpus");
  if (query.a == query.b) return 1.0;

  double inf = 1.0;
  bool sawContext = false;

  auto visit = [&](const Expression& g) {
    double den = extensionProb(corpus, query.b, g);
    if (den == 0.0) return; // 0/0 positions are skipped
    sawContext = true;
    double num = extensionProb(corpus, query.a, g);
    inf = std::min(inf, cappedRatio(num, den));
  };

  switch (query.domain) {
  case ContextDomain::CommonExtensions: {
    for (int n = query.a.grade(); n <= corpus.maxGrade(); ++n) {
      for (const Expression& g : corpus.expressionsOfGrade(n)) {
        if (g.contains(query.a) && g.contains(query.b)) visit(g);
      }
    }
    if (!sawContext) return 0.0; // no expression extends both
    return inf;
  }
  case ContextDomain::FixedGrade: {
    for (const Expression& g : corpus.expressionsOfGrade(query.contextGrade)) visit(g);
    return inf;
  }
  case ContextDomain::AllExpressions: {
    for (int n = 1; n <= corpus.maxGrade(); ++n) {
      for (const Expression& g : corpus.expressionsOfGrade(n)) visit(g);
    }
    return inf;
  }
  }
  throw QueryError("unknown context domain");
}

namespace {

struct CandidateScan {
  std::vector<int32_t> middles;
  std::vector<uint64_t> counts;
  uint64_t total = 0;
};

CandidateScan scanCandidates(const GradedCorpus& corpus, const Expression& left,
                             const Expression& right) {
  CandidateScan scan;
  for (const Token& t : corpus.vocab()) {
    if (t.id == kEosId) continue;
    Expression cand = left.concat(Expression({t.id})).concat(right);
    uint64_t c = corpus.count(cand);
    if (c == 0) continue;
    scan.middles.push_back(t.id);
    scan.counts.push_back(c);
    scan.total += c;
  }
  return scan;
}

} // namespace

Completion weightedColimit(const GradedCorpus& corpus, const ColimitQuery& query) {
  if (query.middleLength != 1)
    throw QueryError("only single-word completions are supported");
  if (query.weightLeft <= 0.0 || query.weightLeft > 1.0 || query.weightRight <= 0.0 ||
      query.weightRight > 1.0)
    throw QueryError("colimit weights must lie in (0,1]");
  if (!corpus.contains(query.left) || !corpus.contains(query.right))
    throw QueryError("colimit context not in corpus");

  CandidateScan scan = scanCandidates(corpus, query.left, query.right);
  if (scan.middles.empty()) throw QueryError("no completion: empty candidate set");

  int best = -1;
  double bestScore = -1.0;
  for (size_t i = 0; i < scan.middles.size(); ++i) {
    Expression cand =
        query.left.concat(Expression({scan.middles[i]})).concat(query.right);
    double score = std::min(
        {extensionProb(corpus, query.left, cand) / query.weightLeft,
         extensionProb(corpus, query.right, cand) / query.weightRight, 1.0});
    if (score > bestScore ||
        (score == bestScore && corpus.surface(scan.middles[i]) <
                                   corpus.surface(scan.middles[static_cast<size_t>(best)]))) {
      best = static_cast<int>(i);
      bestScore = score;
    }
  }

  Expression winner =
      query.left.concat(Expression({scan.middles[static_cast<size_t>(best)]})).concat(query.right);
  double p = static_cast<double>(scan.counts[static_cast<size_t>(best)]) /
             static_cast<double>(scan.total);
  return {winner, p};
}

ProbMatrix completionDistribution(const GradedCorpus& corpus, const Expression& left,
                                  const Expression& right) {
  if (!corpus.contains(left) || !corpus.contains(right))
    throw QueryError("colimit context not in corpus");
  CandidateScan scan = scanCandidates(corpus, left, right);
  if (scan.middles.empty()) throw QueryError("no completion: empty candidate set");

  ExprSet domain;
  domain.label = corpus.render(left) + " _ " + corpus.render(right);
  domain.elements = {left.concat(right)};
  domain.names = {domain.label};

  ExprSet codomain;
  codomain.label = "middle-words";
  Eigen::MatrixXd entries(1, static_cast<int>(scan.middles.size()));
  for (size_t i = 0; i < scan.middles.size(); ++i) {
    codomain.elements.push_back(Expression({scan.middles[i]}));
    codomain.names.push_back(corpus.surface(scan.middles[i]));
    entries(0, static_cast<int>(i)) =
        static_cast<double>(scan.counts[i]) / static_cast<double>(scan.total);
  }
  return ProbMatrix(std::move(domain), std::move(codomain), std::move(entries),
                    MatrixKind::RowStochastic);
}

} // namespace catsem
