#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "catsem/errors.hpp"

namespace catsem {

/// An expression is a contiguous token sequence from the corpus, identified
/// by its token ids. The empty expression is the end-of-sequence unit <eos>
/// (grade 0); the grade of any other expression is its word count.
class Expression {
public:
  Expression() = default;
  explicit Expression(std::vector<int32_t> ids) : ids_(std::move(ids)) {}

  static Expression unit() { return Expression{}; }

  int grade() const { return static_cast<int>(ids_.size()); }
  bool isUnit() const { return ids_.empty(); }
  const std::vector<int32_t>& ids() const { return ids_; }
  int32_t at(int i) const { return ids_[static_cast<size_t>(i)]; }

  /// Contiguous containment: true iff `sub` occurs as a contiguous run
  /// inside this expression. The unit is contained in everything.
  bool contains(const Expression& sub) const;

  Expression concat(const Expression& other) const;
  Expression slice(int pos, int len) const;

  bool operator==(const Expression&) const = default;
  auto operator<=>(const Expression&) const = default;

private:
  std::vector<int32_t> ids_;
};

struct ExpressionHash {
  size_t operator()(const Expression& e) const noexcept;
};

struct Token {
  std::string surface;
  int32_t id = 0;
};

/// Reserved end-of-sequence symbol: fixed id 0, stored once in the
/// vocabulary, never inside expressions.
inline constexpr int32_t kEosId = 0;
inline constexpr std::string_view kEosSurface = "<eos>";

struct TokenizerConfig {
  bool lowercase = true;
  std::string sentenceTerminators = ".!?";
};

/// Splits raw text into sentences of normalized word surfaces. Sentences
/// break at terminal punctuation; other punctuation is stripped; empty
/// input yields an empty corpus.
std::vector<std::vector<std::string>> tokenize(std::string_view text,
                                               const TokenizerConfig& config = {});

struct Neighborhood {
  Expression anchor;
  std::optional<int> grade;
  std::vector<Expression> members;
};

/// The graded expression store: occurrence counts for every contiguous
/// n-gram up to the maximum grade, windowed co-occurrence counts over the
/// vocabulary, and the vocabulary itself in first-occurrence order.
/// Immutable after construction and safe to share across threads.
class GradedCorpus {
public:
  int maxGrade() const { return maxGrade_; }
  int windowRadius() const { return windowRadius_; }

  /// Full vocabulary; index 0 is always <eos>.
  const std::vector<Token>& vocab() const { return vocab_; }
  /// Number of real words (vocabulary without <eos>), i.e. |L_T^1|.
  int wordCount() const { return static_cast<int>(vocab_.size()) - 1; }
  uint64_t totalTokens() const { return totalTokens_; }
  uint64_t sentenceCount() const { return sentenceCount_; }

  bool contains(const Expression& e) const;
  /// Occurrence count C(e); 0 for unknown expressions. The unit counts
  /// once per sentence.
  uint64_t count(const Expression& e) const;

  /// All stored expressions of grade n, sorted by id sequence.
  const std::vector<Expression>& expressionsOfGrade(int n) const;

  /// Window co-occurrence X_ij: occurrences of word j within distance
  /// <= windowRadius of an occurrence of word i, inside sentences.
  uint64_t cooc(int32_t wi, int32_t wj) const;

  std::optional<int32_t> tokenId(std::string_view surface) const;
  const std::string& surface(int32_t id) const;

  /// Parses a space-joined word string into an Expression.
  /// Throws QueryError for unknown words.
  Expression parse(std::string_view spaceJoinedWords) const;
  std::string render(const Expression& e) const;

  /// Alexandrov neighborhood U_x, optionally filtered to a single grade.
  /// Throws QueryError if the anchor is not in the corpus.
  Neighborhood neighborhood(const Expression& x, std::optional<int> grade = {}) const;

  friend GradedCorpus buildGradedCorpus(const std::vector<std::vector<std::string>>& sentences,
                                        int maxGrade, int windowRadius);
  friend class CorpusBuilder;

private:
  int maxGrade_ = 0;
  int windowRadius_ = 0;
  uint64_t totalTokens_ = 0;
  uint64_t sentenceCount_ = 0;
  std::vector<Token> vocab_;
  std::unordered_map<std::string, int32_t> idBySurface_;
  std::unordered_map<Expression, uint64_t, ExpressionHash> counts_;
  std::vector<std::vector<Expression>> byGrade_;
  std::unordered_map<uint64_t, uint64_t> cooc_;
};

/// Builds the graded corpus: every contiguous n-gram with 1 <= n <= maxGrade
/// that does not cross a sentence boundary, plus radius-windowRadius
/// co-occurrence counts.
GradedCorpus buildGradedCorpus(const std::vector<std::vector<std::string>>& sentences,
                               int maxGrade, int windowRadius);

/// Low-level builder used by snapshot loading; assembles a corpus from
/// already-validated tables.
class CorpusBuilder {
public:
  CorpusBuilder(int maxGrade, int windowRadius);
  void setVocab(std::vector<std::string> surfaces); // includes <eos> first
  void addCount(Expression e, uint64_t c);
  void addCooc(int32_t wi, int32_t wj, uint64_t c);
  void setTotals(uint64_t tokens, uint64_t sentences);
  GradedCorpus finish();

private:
  GradedCorpus corpus_;
};

} // namespace catsem
