#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "vcop/archive.hpp"

namespace vcop {

// Lowercased word tokens. A token is a maximal run of ASCII alphanumerics
// and non-ASCII UTF-8 bytes; hyphens split ("re-test" -> re, test); tokens
// without a letter (standalone numbers) are dropped. ASCII letters fold to
// lower case, non-ASCII bytes pass through unchanged.
std::vector<std::string> tokenize(std::string_view text);

struct Lexicon {
  std::unordered_set<std::string> positive;
  std::unordered_set<std::string> negative;
  std::string source;

  // One lowercase token per line; '#' lines and blanks ignored. Throws when
  // the two lists overlap.
  static Lexicon load(const std::string& positive_path, const std::string& negative_path);
  // The word lists shipped under data/lexicon/, compiled in.
  static Lexicon builtin();
};

std::span<const std::string_view> builtin_positive_words();
std::span<const std::string_view> builtin_negative_words();

// Maps a post text to [0,1]; 1 most positive, below 0.5 negative.
class SentimentScorer {
 public:
  virtual ~SentimentScorer() = default;
  virtual double score(std::string_view text) const = 0;
};

// 0.5 + 0.5 (P - N) / (P + N) over lexicon hits; 0.5 when nothing matches.
class LexiconScorer final : public SentimentScorer {
 public:
  explicit LexiconScorer(Lexicon lexicon);
  double score(std::string_view text) const override;

 private:
  Lexicon lexicon_;
};

// Corpus-wide add-one-smoothed unigram probabilities:
//   p(token) = (count + 1) / (total + vocabulary + 1)
// with one reserved slot of mass for unseen tokens, so probabilities sum to
// one over the vocabulary plus the unseen slot.
class Dictionary {
 public:
  static Dictionary build(const Archive& archive);

  double probability(const std::string& token) const;
  double information_bits(const std::string& token) const;  // -log2 p
  std::size_t vocabulary_size() const { return counts_.size(); }
  std::uint64_t total_tokens() const { return total_; }

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Population standard deviation; nullopt for an empty sample.
std::optional<double> emotionality(std::span<const double> scores);

// Mean per-token information content of one post, in bits.
double post_complexity(std::span<const std::string> tokens, const Dictionary& dictionary);

struct LanguageRow {
  std::string community_id;
  YearMonth month;
  // All three are absent when the month has no token-bearing post.
  std::optional<double> sentiment;     // mean per-post score
  std::optional<double> emotionality;  // population sd of per-post scores
  std::optional<double> complexity;    // mean per-post bits per token
};

std::vector<LanguageRow> compute_language(const Archive& archive,
                                          const std::vector<MonthWindow>& windows,
                                          const SentimentScorer& scorer,
                                          const Dictionary& dictionary,
                                          int jobs = 1);

}  // namespace vcop
