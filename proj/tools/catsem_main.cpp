// catsem — corpus-to-embedding toolkit command line.
//
// Exit codes: 0 success, 2 corpus/file errors, 3 query errors,
// 4 numeric errors (including violated equivalence thresholds).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "catsem/bias.hpp"
#include "catsem/embed.hpp"
#include "catsem/io.hpp"
#include "catsem/markov.hpp"
#include "catsem/spaces.hpp"
#include "catsem/synthetic.hpp"
#include "catsem/trainers.hpp"
#include "catsem/yoneda.hpp"

namespace {

using namespace catsem;

constexpr int kExitCorpus = 2;
constexpr int kExitQuery = 3;
constexpr int kExitNumeric = 4;

int threadCap() {
  const char* env = std::getenv("CATSEM_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

struct CommonOptions {
  std::string corpusPath;
  std::string outDir = ".";
  int maxGrade = 5;
  int windowRadius = 2;
  double alpha = 1.0;
  int dim = 12;
  unsigned seed = 42;
  bool deterministic = true;

  void attach(CLI::App* cmd, bool needsCorpus = true) {
    auto* opt = cmd->add_option("--corpus", corpusPath,
                                "corpus text file or .json snapshot");
    if (needsCorpus) opt->required();
    cmd->add_option("--out", outDir, "output directory for reports");
    cmd->add_option("--max-grade", maxGrade, "maximum stored n-gram grade");
    cmd->add_option("--window", windowRadius, "co-occurrence window radius");
    cmd->add_option("--alpha", alpha, "add-alpha smoothing");
    cmd->add_option("--dim", dim, "embedding dimension");
    cmd->add_option("--seed", seed, "RNG seed for trainers");
    cmd->add_flag("--deterministic,!--no-deterministic", deterministic,
                  "sequential deterministic mode (default on)");
  }

  RunConfig runConfig(const std::string& command) const {
    RunConfig rc;
    rc.command = command;
    rc.corpusPath = corpusPath;
    rc.outDir = outDir;
    rc.maxGrade = maxGrade;
    rc.windowRadius = windowRadius;
    rc.alpha = alpha;
    rc.dim = dim;
    rc.seed = seed;
    rc.deterministic = deterministic;
    rc.threads = threadCap();
    return rc;
  }

  GradedCorpus load() const {
    if (corpusPath.size() > 5 && corpusPath.substr(corpusPath.size() - 5) == ".json")
      return loadCorpus(corpusPath);
    return buildGradedCorpus(tokenize(readTextFile(corpusPath)), maxGrade, windowRadius);
  }

  std::filesystem::path outFile(const std::string& name) const {
    std::filesystem::create_directories(outDir);
    return std::filesystem::path(outDir) / name;
  }
};

void printDistributionRow(const ProbMatrix& row) {
  for (int j = 0; j < row.cols(); ++j)
    std::printf("%s %.6g\n", row.codomain().names[static_cast<size_t>(j)].c_str(),
                row.at(0, j));
}

int runIngest(const CommonOptions& common) {
  GradedCorpus corpus = common.load();
  saveCorpus(corpus, common.outFile("corpus.json"));
  std::printf("vocab %d words, %llu tokens, %llu sentences\n", corpus.wordCount(),
              static_cast<unsigned long long>(corpus.totalTokens()),
              static_cast<unsigned long long>(corpus.sentenceCount()));
  for (int n = 1; n <= corpus.maxGrade(); ++n)
    std::printf("grade %d: %zu expressions\n", n, corpus.expressionsOfGrade(n).size());
  std::printf("snapshot: %s\n", common.outFile("corpus.json").string().c_str());
  return 0;
}

int runComplete(const CommonOptions& common, const std::string& left,
                const std::string& right, std::vector<double> weights) {
  GradedCorpus corpus = common.load();
  ColimitQuery query{corpus.parse(left), corpus.parse(right)};
  if (!weights.empty()) {
    if (weights.size() != 2) throw QueryError("--weights takes exactly two values");
    query.weightLeft = weights[0];
    query.weightRight = weights[1];
  }
  ProbMatrix dist = completionDistribution(corpus, query.left, query.right);
  printDistributionRow(dist);
  Completion top = weightedColimit(corpus, query);
  std::printf("colimit: %s  p=%.6g\n", corpus.render(top.expression).c_str(),
              top.probability);
  return 0;
}

int runSimilarity(const CommonOptions& common, const std::string& a, const std::string& b,
                  const std::string& domain, int grade) {
  GradedCorpus corpus = common.load();
  SimilarityQuery query{corpus.parse(a), corpus.parse(b)};
  if (domain == "common") {
    query.domain = ContextDomain::CommonExtensions;
  } else if (domain == "all") {
    query.domain = ContextDomain::AllExpressions;
  } else if (domain == "grade") {
    query.domain = ContextDomain::FixedGrade;
    query.contextGrade = grade;
  } else {
    throw QueryError("unknown similarity domain: " + domain);
  }
  std::printf("similarity %.12g\n", similarity(corpus, query));
  return 0;
}

int runEmbed(const CommonOptions& common, const std::string& variant, int iters,
             double learningRate) {
  GradedCorpus corpus = common.load();
  RunConfig rc = common.runConfig("embed");
  rc.extra["variant"] = variant;
  rc.extra["iters"] = std::to_string(iters);

  CoocSpec spec{common.windowRadius, common.alpha,
                variant == "w2v" ? SpaceVariant::W2v : SpaceVariant::Glove};
  TrainOptions opt;
  opt.maxIter = iters;
  opt.seed = common.seed;
  if (learningRate > 0) opt.learningRate = learningRate;

  Embedding embedding;
  std::vector<double> trace;
  if (variant == "w2v") {
    SoftmaxResult res = softmaxTrain(corpus, spec, common.dim, opt);
    embedding = std::move(res.embedding);
    trace = std::move(res.klTrace);
  } else if (variant == "glove") {
    GloveResult res = gloveTrain(corpus, spec, common.dim, opt);
    embedding = std::move(res.embedding);
    trace = std::move(res.lossTrace);
    GloveDistances d = gloveDistance(embedding.source);
    embedding.divergences["stress_vs_dgv"] =
        stress(embedding.target.distanceMatrix(), d.distances);
    embedding.divergences["kl"] =
        klEmbeddingDivergence(embedding.source.entries(), d.distances);
  } else {
    throw QueryError("unknown embedding variant: " + variant);
  }

  saveEmbeddingCsv(embedding.target, common.outFile("embedding.csv"));
  saveMatrixCsv(embedding.source, common.outFile("space.csv"));
  writeTextFile(common.outFile("report.json"), embeddingReportToJson(embedding, trace, rc));
  std::printf("embedding: %s\n", common.outFile("embedding.csv").string().c_str());
  std::printf("report: %s\n", common.outFile("report.json").string().c_str());
  return 0;
}

int runEquivalence(const CommonOptions& common, int gloveIters, int softmaxIters,
                   double minPearson, double maxRelFrob) {
  GradedCorpus corpus = common.load();
  RunConfig rc = common.runConfig("equivalence");
  rc.extra["glove_iters"] = std::to_string(gloveIters);
  rc.extra["softmax_iters"] = std::to_string(softmaxIters);

  EquivalenceOptions opt;
  opt.spec = CoocSpec{common.windowRadius, common.alpha, SpaceVariant::Glove};
  opt.dim = common.dim;
  opt.glove.maxIter = gloveIters;
  opt.glove.seed = common.seed;
  opt.softmax.maxIter = softmaxIters;
  opt.softmax.seed = common.seed;
  opt.minPearson = minPearson;
  opt.maxRelFrobenius = maxRelFrob;

  EquivalenceReport report = equivalenceExperiment(corpus, opt);
  writeTextFile(common.outFile("report.json"), equivalenceReportToJson(report, rc));
  std::printf("pearson_r %.6f\nrel_frobenius %.6f\nkl_per_row %.6g\n", report.pearsonR,
              report.relFrobenius, report.klPerRow);
  std::printf("report: %s\n", common.outFile("report.json").string().c_str());
  if (!report.thresholdsMet) {
    std::fprintf(stderr, "equivalence thresholds violated\n");
    return kExitNumeric;
  }
  return 0;
}

int runAudit(const CommonOptions& common, const std::string& queriesPath,
             const std::string& similarityName, bool applyDebias) {
  GradedCorpus corpus = common.load();
  RunConfig rc = common.runConfig("audit");
  rc.extra["queries"] = queriesPath;
  rc.extra["similarity"] = similarityName;

  SimilarityChoice choice =
      similarityName == "T" ? SimilarityChoice::T : SimilarityChoice::S;
  std::vector<BiasQuery> queries = parseAuditQueries(readTextFile(queriesPath), choice);

  CoocSpec spec{common.windowRadius, common.alpha, SpaceVariant::Glove};
  ProbMatrix space = gloveSpace(corpus, spec);

  std::vector<BiasReport> reports;
  if (applyDebias) {
    for (const BiasQuery& q : queries) {
      try {
        DebiasResult res = debias(space, q, false, queries);
        reports.push_back(std::move(res.report));
      } catch (const Error& e) {
        BiasReport r;
        r.query = q;
        r.error = e.what();
        reports.push_back(std::move(r));
      }
    }
  } else {
    reports = biasAuditQueries(space, queries, threadCap());
  }

  writeTextFile(common.outFile("audit.json"), biasReportsToJson(reports, rc));
  std::printf("audit rows: %zu\n", reports.size());
  std::printf("report: %s\n", common.outFile("audit.json").string().c_str());
  return 0;
}

int runTelephone(const CommonOptions& common, const std::string& startWord, int steps,
                 bool fixedPoint, const std::string& variant) {
  GradedCorpus corpus = common.load();
  RunConfig rc = common.runConfig("telephone");
  rc.extra["start"] = startWord;
  rc.extra["variant"] = variant;
  rc.extra["mode"] = fixedPoint ? "fixed-point" : ("steps:" + std::to_string(steps));

  CoocSpec spec{common.windowRadius, common.alpha,
                variant == "w2v" ? SpaceVariant::W2v : SpaceVariant::Glove};
  ProbMatrix space = variant == "w2v" ? w2vSpace(corpus, spec).matrix
                                      : gloveSpace(corpus, spec);

  auto idOpt = corpus.tokenId(startWord);
  if (!idOpt) throw QueryError("unknown word: " + startWord);
  Expression start({*idOpt});

  TelephoneResult result;
  if (fixedPoint) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(space.rows());
    v(space.domain().indexOfName(startWord)) = 1.0;
    result = telephoneFixedPoint(space, v);
  } else {
    result = telephone(space, start, steps);
  }

  std::vector<double> dist(result.distribution.data(),
                           result.distribution.data() + result.distribution.size());
  writeTextFile(common.outFile("telephone.json"),
                telephoneReportToJson(space.codomain().names, dist, result.argmaxName,
                                      result.steps, result.converged, rc));
  std::printf("argmax: %s\n", result.argmaxName.c_str());
  std::printf("report: %s\n", common.outFile("telephone.json").string().c_str());
  return 0;
}

int runSynth(int vocab, int tokens, int sentenceLength, unsigned seed,
             const std::string& outPath) {
  MarkovCorpusSpec spec;
  spec.vocab = vocab;
  spec.tokens = tokens;
  spec.sentenceLength = sentenceLength;
  spec.seed = seed;
  std::string text;
  for (const auto& sentence : markovChainSentences(spec)) {
    for (size_t i = 0; i < sentence.size(); ++i) {
      if (i) text += ' ';
      text += sentence[i];
    }
    text += ".\n";
  }
  writeTextFile(outPath, text);
  std::printf("wrote %s\n", outPath.c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"catsem: corpus-to-embedding toolkit"};
  app.require_subcommand(1);

  CommonOptions ingestOpt, completeOpt, similarityOpt, embedOpt, equivOpt, auditOpt,
      telephoneOpt;

  auto* ingest = app.add_subcommand("ingest", "build and persist a corpus snapshot");
  ingestOpt.attach(ingest);

  auto* complete = app.add_subcommand("complete", "two-sided completion (weighted colimit)");
  completeOpt.attach(complete);
  std::string left, right;
  std::vector<double> weights;
  complete->add_option("left", left, "left context")->required();
  complete->add_option("right", right, "right context")->required();
  complete->add_option("--weights", weights, "colimit weights W(1) W(2)")->expected(2);

  auto* sim = app.add_subcommand("similarity", "Yoneda similarity of two expressions");
  similarityOpt.attach(sim);
  std::string simA, simB, simDomain = "common";
  int simGrade = 2;
  sim->add_option("a", simA, "first expression")->required();
  sim->add_option("b", simB, "second expression")->required();
  sim->add_option("--domain", simDomain, "context domain: common|all|grade");
  sim->add_option("--grade", simGrade, "context grade for --domain grade");

  auto* embed = app.add_subcommand("embed", "train a desk-scale embedding");
  embedOpt.attach(embed);
  std::string embedVariant = "glove";
  int embedIters = 2000;
  double embedLr = 0.0;
  embed->add_option("--variant", embedVariant, "glove|w2v");
  embed->add_option("--iters", embedIters, "gradient descent iterations");
  embed->add_option("--lr", embedLr, "learning rate override");

  auto* equiv = app.add_subcommand("equivalence", "run the trainer-vs-MDS equivalence experiment");
  equivOpt.attach(equiv);
  int gloveIters = 4000, softmaxIters = 3000;
  double minPearson = 0.99, maxRelFrob = 0.05;
  equiv->add_option("--glove-iters", gloveIters, "GloVe leg iterations");
  equiv->add_option("--softmax-iters", softmaxIters, "softmax leg iterations");
  equiv->add_option("--min-pearson", minPearson, "acceptance threshold on Pearson r");
  equiv->add_option("--max-rel-frob", maxRelFrob, "acceptance threshold on relative Frobenius error");

  auto* audit = app.add_subcommand("audit", "batch bias audit over a query file");
  auditOpt.attach(audit);
  std::string queriesPath, similarityName = "S";
  bool applyDebias = false;
  audit->add_option("--queries", queriesPath, "JSON array of {target, pair}")->required();
  audit->add_option("--similarity", similarityName, "similarity matrix: S|T");
  audit->add_flag("--debias", applyDebias, "also debias each query and report post scores");

  auto* telephone = app.add_subcommand("telephone", "iterate a semantic space on a start word");
  telephoneOpt.attach(telephone);
  std::string startWord, telVariant = "glove";
  int telSteps = 1;
  bool telFixedPoint = false;
  telephone->add_option("--start", startWord, "start word")->required();
  telephone->add_option("--steps", telSteps, "number of compositions");
  telephone->add_flag("--fixed-point", telFixedPoint, "iterate to the stationary distribution");
  telephone->add_option("--variant", telVariant, "space to iterate: glove|w2v");

  auto* synth = app.add_subcommand("synth", "generate a synthetic Markov-chain corpus");
  int synthVocab = 12, synthTokens = 20000, synthSentence = 20;
  unsigned synthSeed = 42;
  std::string synthOut = "corpus.txt";
  synth->add_option("--vocab", synthVocab, "vocabulary size");
  synth->add_option("--tokens", synthTokens, "token count");
  synth->add_option("--sentence-length", synthSentence, "sentence length");
  synth->add_option("--seed", synthSeed, "generator seed");
  synth->add_option("--out", synthOut, "output text file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) return runIngest(ingestOpt);
    if (complete->parsed()) return runComplete(completeOpt, left, right, weights);
    if (sim->parsed()) return runSimilarity(similarityOpt, simA, simB, simDomain, simGrade);
    if (embed->parsed()) return runEmbed(embedOpt, embedVariant, embedIters, embedLr);
    if (equiv->parsed())
      return runEquivalence(equivOpt, gloveIters, softmaxIters, minPearson, maxRelFrob);
    if (audit->parsed()) return runAudit(auditOpt, queriesPath, similarityName, applyDebias);
    if (telephone->parsed())
      return runTelephone(telephoneOpt, startWord, telSteps, telFixedPoint, telVariant);
    if (synth->parsed())
      return runSynth(synthVocab, synthTokens, synthSentence, synthSeed, synthOut);
  } catch (const CorpusError& e) {
    std::fprintf(stderr, "corpus error: %s\n", e.what());
    return kExitCorpus;
  } catch (const QueryError& e) {
    std::fprintf(stderr, "no completion / query error: %s\n", e.what());
    return kExitQuery;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
