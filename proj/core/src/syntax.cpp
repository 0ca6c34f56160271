#include "catsem/syntax.hpp"

namespace catsem {

double extensionProb(const GradedCorpus& corpus, const Expression& g, const Expression& t) {
  if (!corpus.contains(g))
    throw QueryError("cannot condition on unseen expression: " + corpus.render(g));
  if (g == t) return 1.0;
  if (g.grade() >= t.grade()) return 0.0;
  if (!corpus.contains(t) || !t.contains(g)) return 0.0;
  return static_cast<double>(corpus.count(t)) / static_cast<double>(corpus.count(g));
}

namespace {

ProbMatrix extensionRow(const GradedCorpus& corpus, const Expression& g, bool forward) {
  if (!corpus.contains(g))
    throw QueryError("cannot condition on unseen expression: " + corpus.render(g));
  const double cg = static_cast<double>(corpus.count(g));

  ExprSet domain;
  domain.label = corpus.render(g);
  domain.elements = {g};
  domain.names = {corpus.render(g)};

  ExprSet codomain;
  codomain.label = forward ? "right-extensions" : "left-extensions";
  std::vector<double> probs;
  for (const Token& t : corpus.vocab()) {
    if (t.id == kEosId) continue;
    Expression word({t.id});
    Expression ext = forward ? g.concat(word) : word.concat(g);
    uint64_t c = corpus.count(ext);
    if (c == 0) continue;
    codomain.elements.push_back(word);
    codomain.names.push_back(t.surface);
    probs.push_back(static_cast<double>(c) / cg);
  }

  Eigen::MatrixXd entries(1, static_cast<int>(probs.size()));
  for (size_t j = 0; j < probs.size(); ++j) entries(0, static_cast<int>(j)) = probs[j];
  return ProbMatrix(std::move(domain), std::move(codomain), std::move(entries),
                    MatrixKind::Probabilistic);
}

} // namespace

ProbMatrix forwardDistribution(const GradedCorpus& corpus, const Expression& g) {
  return extensionRow(corpus, g, true);
}

ProbMatrix backwardDistribution(const GradedCorpus& corpus, const Expression& g) {
  return extensionRow(corpus, g, false);
}

} // namespace catsem
