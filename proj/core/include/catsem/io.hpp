#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "catsem/bias.hpp"
#include "catsem/corpus.hpp"
#include "catsem/embed.hpp"
#include "catsem/prob_matrix.hpp"
#include "catsem/run_config.hpp"
#include "catsem/spaces.hpp"
#include "catsem/trainers.hpp"

namespace catsem {

// ---- corpus snapshots (JSON, bit-exact round trip) ---------------------

std::string corpusToJson(const GradedCorpus& corpus);
GradedCorpus corpusFromJson(const std::string& text);

void saveCorpus(const GradedCorpus& corpus, const std::filesystem::path& path);
GradedCorpus loadCorpus(const std::filesystem::path& path);

// ---- labeled matrices (CSV with a JSON sidecar) ------------------------

/// Writes `path` as CSV with a header row/column of labels, plus
/// `path + ".json"` carrying kind and set labels.
void saveMatrixCsv(const ProbMatrix& matrix, const std::filesystem::path& path);
ProbMatrix loadMatrixCsv(const std::filesystem::path& path);

void saveSimilarityCsv(const SimilarityMatrix& matrix, const std::filesystem::path& path);
SimilarityMatrix loadSimilarityCsv(const std::filesystem::path& path);

// ---- embeddings ---------------------------------------------------------

void saveEmbeddingCsv(const Configuration& config, const std::filesystem::path& path);
Configuration loadEmbeddingCsv(const std::filesystem::path& path);

// ---- reports -------------------------------------------------------------

std::string equivalenceReportToJson(const EquivalenceReport& report, const RunConfig& config);
std::string biasReportsToJson(const std::vector<BiasReport>& reports, const RunConfig& config);
std::string embeddingReportToJson(const Embedding& embedding,
                                  const std::vector<double>& lossTrace,
                                  const RunConfig& config);
std::string telephoneReportToJson(const std::vector<std::string>& names,
                                  const std::vector<double>& distribution,
                                  const std::string& argmaxName, int steps, bool converged,
                                  const RunConfig& config);

/// Parses an audit query file: a JSON array of
/// {"target": ..., "pair": [first, second]} objects.
std::vector<BiasQuery> parseAuditQueries(const std::string& text,
                                         SimilarityChoice choice = SimilarityChoice::S);

void writeTextFile(const std::filesystem::path& path, const std::string& text);
std::string readTextFile(const std::filesystem::path& path);

} // namespace catsem
