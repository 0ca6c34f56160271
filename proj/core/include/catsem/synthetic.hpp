#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace catsem {

/// Synthetic Markov-chain corpus: tokens are drawn from an ergodic chain
/// whose transition matrix has a noisy circular band structure, then cut
/// into fixed-length sentences. Fully deterministic under the seed.
struct MarkovCorpusSpec {
  int vocab = 12;
  int tokens = 20000;
  int sentenceLength = 20;
  unsigned seed = 42;
  double bandScale = 0.5; // decay of the transition band with circular distance
};

std::vector<std::vector<std::string>> markovChainSentences(const MarkovCorpusSpec& spec);

/// The transition matrix used by markovChainSentences for the same spec.
Eigen::MatrixXd markovChainTransitions(const MarkovCorpusSpec& spec);

/// Random strictly positive row-stochastic matrix, deterministic under the
/// seed. Used by property tests and the telephone stationarity check.
Eigen::MatrixXd randomStochasticMatrix(int n, unsigned seed);

} // namespace catsem
