#pragma once

#include <map>
#include <string>
#include <vector>

namespace catsem {

/// Provenance record echoed verbatim into every report.
struct RunConfig {
  std::string command;
  std::string corpusPath;
  std::string outDir;
  int maxGrade = 5;
  int windowRadius = 2;
  double alpha = 1.0;
  int dim = 12;
  unsigned seed = 42;
  std::vector<double> weights; // colimit weights, when given
  bool deterministic = true;
  int threads = 1;
  std::map<std::string, std::string> extra; // subcommand-specific flags
};

} // namespace catsem
