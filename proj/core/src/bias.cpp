#include "catsem/bias.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace catsem {

namespace {

struct QueryIndices {
  int i, k, j;
};

QueryIndices resolve(const ProbMatrix& space, const BiasQuery& query) {
  requireSemanticSpace(space);
  int i = space.domain().indexOfName(query.target);
  int k = space.domain().indexOfName(query.first);
  int j = space.domain().indexOfName(query.second);
  if (i < 0) throw QueryError("unknown word: " + query.target);
  if (k < 0) throw QueryError("unknown word: " + query.first);
  if (j < 0) throw QueryError("unknown word: " + query.second);
  if (i == k || i == j || k == j)
    throw QueryError("bias query needs three distinct words");
  return {i, k, j};
}

double entryS(const Eigen::MatrixXd& p, int i, int k, const ProbMatrix& space) {
  double cross = p(i, k) * p(k, i);
  if (cross == 0.0)
    throw NumericError("similarity S undefined: zero cross entry for pair (" +
                       space.domain().names[static_cast<size_t>(i)] + ", " +
                       space.domain().names[static_cast<size_t>(k)] + ")");
  return (p(i, i) * p(k, k)) / cross;
}

double entryT(const Eigen::MatrixXd& p, int i, int k, const ProbMatrix& space) {
  double diag = p(i, i) + p(k, k);
  if (diag == 0.0)
    throw NumericError("similarity T undefined: zero diagonal sum for pair (" +
                       space.domain().names[static_cast<size_t>(i)] + ", " +
                       space.domain().names[static_cast<size_t>(k)] + ")");
  return (p(i, k) + p(k, i)) / diag;
}

double similarityEntry(const ProbMatrix& space, SimilarityChoice choice, int a, int b) {
  return choice == SimilarityChoice::S ? entryS(space.entries(), a, b, space)
                                       : entryT(space.entries(), a, b, space);
}

// d_GV for one pair, with the usual clamp at S < 1.
double pairDistance(const ProbMatrix& space, int a, int b) {
  double s = entryS(space.entries(), a, b, space);
  if (s <= 0.0) throw NumericError("gloveDistance: non-positive similarity entry");
  return s < 1.0 ? 0.0 : std::sqrt(std::log(s));
}

} // namespace

double biasScore(const ProbMatrix& space, const BiasQuery& query) {
  QueryIndices q = resolve(space, query);
  double sik = similarityEntry(space, query.choice, q.i, q.k);
  double sij = similarityEntry(space, query.choice, q.i, q.j);
  if (sij == 0.0) throw NumericError("bias undefined: zero similarity to second word");
  return sik / sij;
}

DebiasResult debias(const ProbMatrix& space, const BiasQuery& query, bool renormalizeRows,
                    std::span<const BiasQuery> auditedTriples) {
  QueryIndices q = resolve(space, query);
  const Eigen::MatrixXd& p = space.entries();

  BiasReport report;
  report.query = query;
  report.score = biasScore(space, query);
  report.distanceFirstBefore = pairDistance(space, q.i, q.k);
  report.distanceSecondBefore = pairDistance(space, q.i, q.j);

  double pik = p(q.i, q.k), pki = p(q.k, q.i);
  double pij = p(q.i, q.j), pji = p(q.j, q.i);
  double pkk = p(q.k, q.k), pjj = p(q.j, q.j);
  if (pik == 0.0 || pki == 0.0 || pij == 0.0 || pji == 0.0 || pkk == 0.0 || pjj == 0.0)
    throw NumericError("debias needs all six involved entries to be positive");

  report.probabilities = {{"p_ik", pik}, {"p_ki", pki}, {"p_ij", pij}, {"p_ji", pji},
                          {"p_kk", pkk}, {"p_jj", pjj},
                          {"s_ik", entryS(p, q.i, q.k, space)},
                          {"s_ij", entryS(p, q.i, q.j, space)}};

  // geometric-mean projection: both cross products end at c * diagonal
  double rk = (pik * pki) / pkk;
  double rj = (pij * pji) / pjj;
  double c = std::sqrt(rk * rj);
  double scaleK = std::sqrt(c * pkk / (pik * pki));
  double scaleJ = std::sqrt(c * pjj / (pij * pji));

  Eigen::MatrixXd next = p;
  next(q.i, q.k) = pik * scaleK;
  next(q.k, q.i) = pki * scaleK;
  next(q.i, q.j) = pij * scaleJ;
  next(q.j, q.i) = pji * scaleJ;
  if (next.maxCoeff() > 1.0)
    throw NumericError("debias would push an entry above 1");

  MatrixKind kind = MatrixKind::Probabilistic;
  if (renormalizeRows) {
    for (int row : {q.i, q.k, q.j}) next.row(row) /= next.row(row).sum();
    kind = space.kind();
    report.renormalized = true;
  }
  ProbMatrix debiased(space.domain(), space.codomain(), std::move(next), kind);

  report.postDebiasScore = biasScore(debiased, query);
  report.distanceFirstAfter = pairDistance(debiased, q.i, q.k);
  report.distanceSecondAfter = pairDistance(debiased, q.i, q.j);

  for (const BiasQuery& other : auditedTriples) {
    if (other.target == query.target && other.first == query.first &&
        other.second == query.second)
      continue;
    double before = biasScore(space, other);
    double after = biasScore(debiased, other);
    report.maxInducedDrift = std::max(report.maxInducedDrift, std::abs(after - before));
  }

  return {std::move(debiased), std::move(report)};
}

std::vector<BiasReport> biasAuditQueries(const ProbMatrix& space,
                                         const std::vector<BiasQuery>& queries,
                                         int threads) {
  std::vector<BiasReport> reports(queries.size());
  auto runRange = [&](size_t begin, size_t end) {
    for (size_t idx = begin; idx < end; ++idx) {
      BiasReport& r = reports[idx];
      r.query = queries[idx];
      try {
        r.score = biasScore(space, queries[idx]);
      } catch (const Error& e) {
        r.error = e.what();
        r.score = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };

  int workers = std::max(1, threads);
  if (workers == 1 || queries.size() < 2) {
    runRange(0, queries.size());
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (queries.size() + static_cast<size_t>(workers) - 1) /
                   static_cast<size_t>(workers);
    for (int w = 0; w < workers; ++w) {
      size_t begin = static_cast<size_t>(w) * chunk;
      size_t end = std::min(queries.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(runRange, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  std::stable_sort(reports.begin(), reports.end(),
                   [](const BiasReport& a, const BiasReport& b) {
                     bool aOk = a.error.empty(), bOk = b.error.empty();
                     if (aOk != bOk) return aOk; // errors sink to the bottom
                     if (!aOk) return false;
                     return std::abs(std::log(a.score)) > std::abs(std::log(b.score));
                   });
  return reports;
}

std::vector<BiasReport> biasAudit(const ProbMatrix& space,
                                  const std::vector<std::pair<std::string, std::string>>& pairs,
                                  const std::vector<std::string>& targets,
                                  SimilarityChoice choice, int threads) {
  std::vector<BiasQuery> queries;
  for (const std::string& target : targets)
    for (const auto& [first, second] : pairs)
      queries.push_back({target, first, second, choice});
  return biasAuditQueries(space, queries, threads);
}

} // namespace catsem
