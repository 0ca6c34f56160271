#include "catsem/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace catsem {

bool Expression::contains(const Expression& sub) const {
  if (sub.ids_.empty()) return true;
  if (sub.ids_.size() > ids_.size()) return false;
  auto it = std::search(ids_.begin(), ids_.end(), sub.ids_.begin(), sub.ids_.end());
  return it != ids_.end();
}

Expression Expression::concat(const Expression& other) const {
  std::vector<int32_t> joined = ids_;
  joined.insert(joined.end(), other.ids_.begin(), other.ids_.end());
  return Expression(std::move(joined));
}

Expression Expression::slice(int pos, int len) const {
  return Expression(std::vector<int32_t>(ids_.begin() + pos, ids_.begin() + pos + len));
}

size_t ExpressionHash::operator()(const Expression& e) const noexcept {
  // FNV-1a over the id bytes
  uint64_t h = 1469598103934665603ull;
  for (int32_t id : e.ids()) {
    for (int b = 0; b < 4; ++b) {
      h ^= static_cast<uint64_t>((id >> (8 * b)) & 0xff);
      h *= 1099511628211ull;
    }
  }
  return static_cast<size_t>(h);
}

std::vector<std::vector<std::string>> tokenize(std::string_view text,
                                               const TokenizerConfig& config) {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> sentence;
  std::string word;

  auto flushWord = [&] {
    if (!word.empty()) {
      sentence.push_back(word);
      word.clear();
    }
  };
  auto flushSentence = [&] {
    flushWord();
    if (!sentence.empty()) {
      sentences.push_back(std::move(sentence));
      sentence.clear();
    }
  };

  for (char c : text) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      flushWord();
    } else if (config.sentenceTerminators.find(c) != std::string::npos) {
      flushSentence();
    } else if (uc < 0x80 && std::ispunct(uc)) {
      // non-terminal punctuation is stripped
    } else {
      word.push_back(config.lowercase ? static_cast<char>(std::tolower(uc)) : c);
    }
  }
  flushSentence();
  return sentences;
}

namespace {

uint64_t coocKey(int32_t wi, int32_t wj) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(wi)) << 32) |
         static_cast<uint64_t>(static_cast<uint32_t>(wj));
}

} // namespace

bool GradedCorpus::contains(const Expression& e) const {
  if (e.isUnit()) return true;
  return counts_.find(e) != counts_.end();
}

uint64_t GradedCorpus::count(const Expression& e) const {
  if (e.isUnit()) return sentenceCount_;
  auto it = counts_.find(e);
  return it == counts_.end() ? 0 : it->second;
}

const std::vector<Expression>& GradedCorpus::expressionsOfGrade(int n) const {
  static const std::vector<Expression> kEmpty;
  if (n < 1 || n >= static_cast<int>(byGrade_.size())) return kEmpty;
  return byGrade_[static_cast<size_t>(n)];
}

uint64_t GradedCorpus::cooc(int32_t wi, int32_t wj) const {
  auto it = cooc_.find(coocKey(wi, wj));
  return it == cooc_.end() ? 0 : it->second;
}

std::optional<int32_t> GradedCorpus::tokenId(std::string_view surface) const {
  auto it = idBySurface_.find(std::string(surface));
  if (it == idBySurface_.end()) return std::nullopt;
  return it->second;
}

const std::string& GradedCorpus::surface(int32_t id) const {
  return vocab_.at(static_cast<size_t>(id)).surface;
}

Expression GradedCorpus::parse(std::string_view spaceJoinedWords) const {
  std::vector<int32_t> ids;
  std::istringstream in{std::string(spaceJoinedWords)};
  std::string w;
  while (in >> w) {
    if (w == kEosSurface) continue;
    auto id = tokenId(w);
    if (!id) throw QueryError("unknown word: " + w);
    ids.push_back(*id);
  }
  return Expression(std::move(ids));
}

std::string GradedCorpus::render(const Expression& e) const {
  if (e.isUnit()) return std::string(kEosSurface);
  std::string out;
  for (size_t i = 0; i < e.ids().size(); ++i) {
    if (i) out += ' ';
    out += surface(e.ids()[i]);
  }
  return out;
}

Neighborhood GradedCorpus::neighborhood(const Expression& x, std::optional<int> grade) const {
  if (!contains(x)) throw QueryError("neighborhood anchor not in corpus");
  Neighborhood nb{x, grade, {}};
  int lo = grade ? *grade : std::max(1, x.grade());
  int hi = grade ? *grade : maxGrade_;
  for (int n = lo; n <= hi; ++n) {
    for (const Expression& e : expressionsOfGrade(n)) {
      if (e.contains(x)) nb.members.push_back(e);
    }
  }
  return nb;
}

GradedCorpus buildGradedCorpus(const std::vector<std::vector<std::string>>& sentences,
                               int maxGrade, int windowRadius) {
  if (maxGrade < 1) throw CorpusError("maxGrade must be >= 1");
  if (windowRadius < 1) throw CorpusError("windowRadius must be >= 1");

  GradedCorpus c;
  c.maxGrade_ = maxGrade;
  c.windowRadius_ = windowRadius;
  c.vocab_.push_back({std::string(kEosSurface), kEosId});
  c.byGrade_.resize(static_cast<size_t>(maxGrade) + 1);

  auto idOf = [&](const std::string& surface) {
    auto it = c.idBySurface_.find(surface);
    if (it != c.idBySurface_.end()) return it->second;
    int32_t id = static_cast<int32_t>(c.vocab_.size());
    c.vocab_.push_back({surface, id});
    c.idBySurface_.emplace(surface, id);
    return id;
  };

  for (const auto& sentence : sentences) {
    if (sentence.empty()) continue;
    ++c.sentenceCount_;
    c.totalTokens_ += sentence.size();
    std::vector<int32_t> ids;
    ids.reserve(sentence.size());
    for (const auto& w : sentence) ids.push_back(idOf(w));

    const int len = static_cast<int>(ids.size());
    for (int start = 0; start < len; ++start) {
      for (int n = 1; n <= maxGrade && start + n <= len; ++n) {
        Expression e(std::vector<int32_t>(ids.begin() + start, ids.begin() + start + n));
        ++c.counts_[std::move(e)];
      }
      for (int q = std::max(0, start - windowRadius);
           q <= std::min(len - 1, start + windowRadius); ++q) {
        if (q == start) continue;
        ++c.cooc_[coocKey(ids[static_cast<size_t>(start)], ids[static_cast<size_t>(q)])];
      }
    }
  }

  for (const auto& [expr, n] : c.counts_) {
    (void)n;
    c.byGrade_[static_cast<size_t>(expr.grade())].push_back(expr);
  }
  for (auto& bucket : c.byGrade_) std::sort(bucket.begin(), bucket.end());
  return c;
}

CorpusBuilder::CorpusBuilder(int maxGrade, int windowRadius) {
  if (maxGrade < 1) throw CorpusError("maxGrade must be >= 1");
  if (windowRadius < 1) throw CorpusError("windowRadius must be >= 1");
  corpus_.maxGrade_ = maxGrade;
  corpus_.windowRadius_ = windowRadius;
  corpus_.byGrade_.resize(static_cast<size_t>(maxGrade) + 1);
}

void CorpusBuilder::setVocab(std::vector<std::string> surfaces) {
  if (surfaces.empty() || surfaces.front() != kEosSurface)
    throw CorpusError("vocabulary must start with " + std::string(kEosSurface));
  corpus_.vocab_.clear();
  corpus_.idBySurface_.clear();
  for (size_t i = 0; i < surfaces.size(); ++i) {
    int32_t id = static_cast<int32_t>(i);
    corpus_.vocab_.push_back({surfaces[i], id});
    if (id != kEosId) corpus_.idBySurface_.emplace(surfaces[i], id);
  }
}

void CorpusBuilder::addCount(Expression e, uint64_t c) {
  if (e.grade() < 1 || e.grade() > corpus_.maxGrade_)
    throw CorpusError("snapshot expression grade out of range");
  if (c == 0) throw CorpusError("snapshot count must be positive");
  corpus_.counts_[e] = c;
}

void CorpusBuilder::addCooc(int32_t wi, int32_t wj, uint64_t c) {
  corpus_.cooc_[coocKey(wi, wj)] = c;
}

void CorpusBuilder::setTotals(uint64_t tokens, uint64_t sentences) {
  corpus_.totalTokens_ = tokens;
  corpus_.sentenceCount_ = sentences;
}

GradedCorpus CorpusBuilder::finish() {
  for (const auto& [expr, n] : corpus_.counts_) {
    (void)n;
    corpus_.byGrade_[static_cast<size_t>(expr.grade())].push_back(expr);
  }
  for (auto& bucket : corpus_.byGrade_) std::sort(bucket.begin(), bucket.end());
  return std::move(corpus_);
}

} // namespace catsem
