#include "catsem/synthetic.hpp"

#include <cmath>
#include <random>

namespace catsem {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int sampleRow(const Eigen::MatrixXd& transitions, int state, std::mt19937_64& rng) {
  double u = uniform01(rng);
  double acc = 0.0;
  const int n = static_cast<int>(transitions.cols());
  for (int j = 0; j < n; ++j) {
    acc += transitions(state, j);
    if (u < acc) return j;
  }
  return n - 1;
}

} // namespace

Eigen::MatrixXd markovChainTransitions(const MarkovCorpusSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const int n = spec.vocab;
  Eigen::MatrixXd p(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int d = std::min(std::abs(i - j), n - std::abs(i - j));
      p(i, j) = std::exp(-spec.bandScale * d * d) * (0.6 + 0.8 * uniform01(rng));
    }
  }
  for (int i = 0; i < n; ++i) p.row(i) /= p.row(i).sum();
  return p;
}

std::vector<std::vector<std::string>> markovChainSentences(const MarkovCorpusSpec& spec) {
  Eigen::MatrixXd transitions = markovChainTransitions(spec);
  std::mt19937_64 rng(spec.seed + 0x9e3779b9u);

  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(spec.vocab));
  for (int i = 0; i < spec.vocab; ++i) names.push_back("w" + std::to_string(i));

  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> sentence;
  int state = static_cast<int>(rng() % static_cast<uint64_t>(spec.vocab));
  for (int t = 0; t < spec.tokens; ++t) {
    sentence.push_back(names[static_cast<size_t>(state)]);
    if (static_cast<int>(sentence.size()) == spec.sentenceLength) {
      sentences.push_back(std::move(sentence));
      sentence.clear();
    }
    state = sampleRow(transitions, state, rng);
  }
  if (!sentence.empty()) sentences.push_back(std::move(sentence));
  return sentences;
}

Eigen::MatrixXd randomStochasticMatrix(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = 0.05 + uniform01(rng);
    m.row(i) /= m.row(i).sum();
  }
  return m;
}

} // namespace catsem
