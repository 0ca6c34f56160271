#include "catsem/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace catsem {

namespace {

using nlohmann::json;

std::string formatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string idKey(const Expression& e) {
  std::string key;
  for (size_t i = 0; i < e.ids().size(); ++i) {
    if (i) key += ' ';
    key += std::to_string(e.ids()[i]);
  }
  return key;
}

Expression keyToExpression(const std::string& key) {
  std::vector<int32_t> ids;
  std::istringstream in(key);
  int32_t id;
  while (in >> id) ids.push_back(id);
  return Expression(std::move(ids));
}

json configToJson(const RunConfig& config) {
  json j;
  j["command"] = config.command;
  j["corpus"] = config.corpusPath;
  j["out"] = config.outDir;
  j["max_grade"] = config.maxGrade;
  j["window"] = config.windowRadius;
  j["alpha"] = config.alpha;
  j["dim"] = config.dim;
  j["seed"] = config.seed;
  j["weights"] = config.weights;
  j["deterministic"] = config.deterministic;
  j["threads"] = config.threads;
  j["extra"] = config.extra;
  return j;
}

} // namespace

std::string corpusToJson(const GradedCorpus& corpus) {
  json j;
  j["format"] = "catsem-corpus";
  j["format_version"] = 1;
  j["max_grade"] = corpus.maxGrade();
  j["window_radius"] = corpus.windowRadius();
  j["total_tokens"] = corpus.totalTokens();
  j["sentence_count"] = corpus.sentenceCount();

  json vocab = json::array();
  for (const Token& t : corpus.vocab()) vocab.push_back(t.surface);
  j["vocab"] = std::move(vocab);

  json counts = json::object();
  for (int n = 1; n <= corpus.maxGrade(); ++n) {
    const auto& bucket = corpus.expressionsOfGrade(n);
    if (bucket.empty()) continue;
    json table = json::object();
    for (const Expression& e : bucket) table[idKey(e)] = corpus.count(e);
    counts[std::to_string(n)] = std::move(table);
  }
  j["counts"] = std::move(counts);

  json cooc = json::object();
  const int v = corpus.wordCount();
  for (int i = 1; i <= v; ++i) {
    json row = json::object();
    for (int k = 1; k <= v; ++k) {
      uint64_t c = corpus.cooc(i, k);
      if (c) row[std::to_string(k)] = c;
    }
    if (!row.empty()) cooc[std::to_string(i)] = std::move(row);
  }
  j["window_cooc"] = std::move(cooc);

  return j.dump(2) + "\n";
}

GradedCorpus corpusFromJson(const std::string& text) {
  try {
    json j = json::parse(text);
    if (j.value("format", "") != "catsem-corpus" || j.value("format_version", 0) != 1)
      throw CorpusError("not a catsem corpus snapshot");

    CorpusBuilder builder(j.at("max_grade").get<int>(), j.at("window_radius").get<int>());
    builder.setVocab(j.at("vocab").get<std::vector<std::string>>());
    builder.setTotals(j.at("total_tokens").get<uint64_t>(),
                      j.at("sentence_count").get<uint64_t>());
    for (const auto& [grade, table] : j.at("counts").items()) {
      (void)grade;
      for (const auto& [key, value] : table.items())
        builder.addCount(keyToExpression(key), value.get<uint64_t>());
    }
    for (const auto& [row, table] : j.at("window_cooc").items()) {
      int32_t i = static_cast<int32_t>(std::stol(row));
      for (const auto& [col, value] : table.items())
        builder.addCooc(i, static_cast<int32_t>(std::stol(col)), value.get<uint64_t>());
    }
    return builder.finish();
  } catch (const json::exception& e) {
    throw CorpusError(std::string("malformed corpus snapshot: ") + e.what());
  }
}

void saveCorpus(const GradedCorpus& corpus, const std::filesystem::path& path) {
  writeTextFile(path, corpusToJson(corpus));
}

GradedCorpus loadCorpus(const std::filesystem::path& path) {
  return corpusFromJson(readTextFile(path));
}

namespace {

void writeLabeledCsv(const std::filesystem::path& path,
                     const std::vector<std::string>& rowLabels,
                     const std::vector<std::string>& colLabels,
                     const Eigen::MatrixXd& values) {
  std::ostringstream out;
  for (const std::string& c : colLabels) out << ',' << c;
  out << '\n';
  for (int i = 0; i < values.rows(); ++i) {
    out << rowLabels[static_cast<size_t>(i)];
    for (int j = 0; j < values.cols(); ++j) out << ',' << formatDouble(values(i, j));
    out << '\n';
  }
  writeTextFile(path, out.str());
}

struct LabeledCsv {
  std::vector<std::string> rowLabels;
  std::vector<std::string> colLabels;
  Eigen::MatrixXd values;
};

LabeledCsv readLabeledCsv(const std::filesystem::path& path) {
  std::string text = readTextFile(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw CorpusError("empty matrix CSV: " + path.string());

  LabeledCsv csv;
  {
    std::istringstream header(line);
    std::string cell;
    std::getline(header, cell, ','); // leading empty cell
    while (std::getline(header, cell, ',')) csv.colLabels.push_back(cell);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    csv.rowLabels.push_back(cell);
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::strtod(cell.c_str(), nullptr));
    if (values.size() != csv.colLabels.size())
      throw CorpusError("ragged matrix CSV: " + path.string());
    rows.push_back(std::move(values));
  }
  csv.values.resize(static_cast<int>(rows.size()), static_cast<int>(csv.colLabels.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      csv.values(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return csv;
}

std::filesystem::path sidecarPath(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

} // namespace

void saveMatrixCsv(const ProbMatrix& matrix, const std::filesystem::path& path) {
  writeLabeledCsv(path, matrix.domain().names, matrix.codomain().names, matrix.entries());
  json meta;
  meta["format"] = "catsem-matrix";
  meta["format_version"] = 1;
  meta["kind"] =
      matrix.kind() == MatrixKind::RowStochastic ? "row_stochastic" : "probabilistic";
  meta["domain_label"] = matrix.domain().label;
  meta["codomain_label"] = matrix.codomain().label;
  writeTextFile(sidecarPath(path), meta.dump(2) + "\n");
}

ProbMatrix loadMatrixCsv(const std::filesystem::path& path) {
  LabeledCsv csv = readLabeledCsv(path);
  json meta;
  try {
    meta = json::parse(readTextFile(sidecarPath(path)));
  } catch (const json::exception& e) {
    throw CorpusError(std::string("malformed matrix sidecar: ") + e.what());
  }
  if (meta.value("format", "") != "catsem-matrix")
    throw CorpusError("not a catsem matrix sidecar: " + sidecarPath(path).string());

  ExprSet domain, codomain;
  domain.label = meta.value("domain_label", "");
  domain.names = csv.rowLabels;
  codomain.label = meta.value("codomain_label", "");
  codomain.names = csv.colLabels;
  MatrixKind kind = meta.value("kind", "") == "row_stochastic" ? MatrixKind::RowStochastic
                                                               : MatrixKind::Probabilistic;
  return ProbMatrix(std::move(domain), std::move(codomain), std::move(csv.values), kind);
}

void saveSimilarityCsv(const SimilarityMatrix& matrix, const std::filesystem::path& path) {
  writeLabeledCsv(path, matrix.labels, matrix.labels, matrix.values);
  json meta;
  meta["format"] = "catsem-matrix";
  meta["format_version"] = 1;
  meta["kind"] = "similarity";
  meta["domain_label"] = "L1";
  meta["codomain_label"] = "L1";
  writeTextFile(sidecarPath(path), meta.dump(2) + "\n");
}

SimilarityMatrix loadSimilarityCsv(const std::filesystem::path& path) {
  LabeledCsv csv = readLabeledCsv(path);
  return {std::move(csv.rowLabels), std::move(csv.values)};
}

void saveEmbeddingCsv(const Configuration& config, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "# format: catsem-embedding-v1\n";
  out << "word";
  for (int j = 0; j < config.dim(); ++j) out << ",x" << j;
  out << '\n';
  for (int i = 0; i < config.size(); ++i) {
    out << config.labels()[static_cast<size_t>(i)];
    for (int j = 0; j < config.dim(); ++j) out << ',' << formatDouble(config.points()(i, j));
    out << '\n';
  }
  writeTextFile(path, out.str());
}

Configuration loadEmbeddingCsv(const std::filesystem::path& path) {
  std::istringstream in(readTextFile(path));
  std::string line;
  if (!std::getline(in, line) || line != "# format: catsem-embedding-v1")
    throw CorpusError("not a catsem embedding CSV: " + path.string());
  if (!std::getline(in, line)) throw CorpusError("embedding CSV missing header");

  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    labels.push_back(cell);
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw CorpusError("embedding CSV has no rows");
  Eigen::MatrixXd points(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size())
      throw CorpusError("ragged embedding CSV");
    for (size_t j = 0; j < rows[i].size(); ++j)
      points(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return Configuration(std::move(labels), std::move(points));
}

std::string equivalenceReportToJson(const EquivalenceReport& report, const RunConfig& config) {
  json j;
  j["format"] = "catsem-equivalence-report";
  j["format_version"] = 1;
  j["config"] = configToJson(config);

  json glove;
  glove["pearson_r"] = report.pearsonR;
  glove["rel_frobenius"] = report.relFrobenius;
  glove["clamped_pairs"] = report.clampedPairs;
  glove["final_loss"] = report.gloveFinalLoss;
  glove["smacof_stress"] = report.smacofStressGlove;
  glove["loss_trace"] = report.gloveLossTrace;
  glove["paper_divergence_trace"] = report.glovePaperDivergenceTrace;
  glove["appendix_divergence_trace"] = report.gloveAppendixDivergenceTrace;
  glove["objective_gap_trace"] = report.gloveObjectiveGapTrace;
  j["glove_leg"] = std::move(glove);

  json w2v;
  w2v["entropy_q"] = report.entropyQ;
  w2v["kl_per_row"] = report.klPerRow;
  w2v["mds_stress"] = report.mdsStressW2v;
  w2v["gap_non_increasing_tail"] = report.w2vGapNonIncreasingTail;
  w2v["cross_entropy_trace"] = report.crossEntropyTrace;
  w2v["kl_trace"] = report.klTrace;
  w2v["w2v_mds_gap_trace"] = report.w2vMdsGapTrace;
  j["w2v_leg"] = std::move(w2v);

  j["thresholds_met"] = report.thresholdsMet;
  return j.dump(2) + "\n";
}

std::string biasReportsToJson(const std::vector<BiasReport>& reports, const RunConfig& config) {
  json j;
  j["format"] = "catsem-bias-report";
  j["format_version"] = 1;
  j["config"] = configToJson(config);
  json rows = json::array();
  for (const BiasReport& r : reports) {
    json row;
    row["target"] = r.query.target;
    row["pair"] = {r.query.first, r.query.second};
    row["similarity"] = r.query.choice == SimilarityChoice::S ? "S" : "T";
    if (!r.error.empty()) {
      row["error"] = r.error;
    } else {
      row["score"] = r.score;
      row["abs_log_score"] = std::abs(std::log(r.score));
      if (!r.probabilities.empty()) row["probabilities"] = r.probabilities;
      if (r.postDebiasScore != 0.0) {
        row["post_debias_score"] = r.postDebiasScore;
        row["distance_first_before"] = r.distanceFirstBefore;
        row["distance_second_before"] = r.distanceSecondBefore;
        row["distance_first_after"] = r.distanceFirstAfter;
        row["distance_second_after"] = r.distanceSecondAfter;
        row["renormalized"] = r.renormalized;
        row["max_induced_drift"] = r.maxInducedDrift;
      }
    }
    rows.push_back(std::move(row));
  }
  j["reports"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string embeddingReportToJson(const Embedding& embedding,
                                  const std::vector<double>& lossTrace,
                                  const RunConfig& config) {
  json j;
  j["format"] = "catsem-embedding-report";
  j["format_version"] = 1;
  j["config"] = configToJson(config);
  j["divergences"] = embedding.divergences;
  j["loss_trace"] = lossTrace;
  j["labels"] = embedding.target.labels();
  j["dim"] = embedding.target.dim();
  return j.dump(2) + "\n";
}

std::string telephoneReportToJson(const std::vector<std::string>& names,
                                  const std::vector<double>& distribution,
                                  const std::string& argmaxName, int steps, bool converged,
                                  const RunConfig& config) {
  json j;
  j["format"] = "catsem-telephone-report";
  j["format_version"] = 1;
  j["config"] = configToJson(config);
  j["names"] = names;
  j["distribution"] = distribution;
  j["argmax"] = argmaxName;
  j["steps"] = steps;
  j["converged"] = converged;
  return j.dump(2) + "\n";
}

std::vector<BiasQuery> parseAuditQueries(const std::string& text, SimilarityChoice choice) {
  try {
    json j = json::parse(text);
    if (!j.is_array()) throw CorpusError("audit query file must be a JSON array");
    std::vector<BiasQuery> queries;
    for (const json& row : j) {
      BiasQuery q;
      q.target = row.at("target").get<std::string>();
      const json& pair = row.at("pair");
      q.first = pair.at(0).get<std::string>();
      q.second = pair.at(1).get<std::string>();
      q.choice = choice;
      queries.push_back(std::move(q));
    }
    return queries;
  } catch (const json::exception& e) {
    throw CorpusError(std::string("malformed audit query file: ") + e.what());
  }
}

void writeTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError("cannot write file: " + path.string());
  out << text;
  if (!out) throw CorpusError("failed writing file: " + path.string());
}

std::string readTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace catsem
