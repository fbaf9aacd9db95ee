#include "vcop/language.hpp"

#include <cmath>
#include <fstream>

#include "vcop/error.hpp"
#include "vcop/util.hpp"

namespace vcop {
namespace {

bool is_token_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c >= 0x80;
}

bool is_letter_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

std::unordered_set<std::string> load_word_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file: " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    words.insert(line);
  }
  return words;
}

void check_disjoint(const Lexicon& lexicon) {
  for (const auto& word : lexicon.positive) {
    if (lexicon.negative.count(word)) {
      throw Error("lexicon lists overlap on token: " + word);
    }
  }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  bool has_letter = false;
  auto flush = [&] {
    if (!current.empty() && has_letter) tokens.push_back(current);
    current.clear();
    has_letter = false;
  };
  for (const char raw : text) {
    const auto c = static_cast<unsigned char>(raw);
    if (is_token_byte(c)) {
      has_letter = has_letter || is_letter_byte(c);
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : raw);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

Lexicon Lexicon::load(const std::string& positive_path, const std::string& negative_path) {
  Lexicon lexicon;
  lexicon.positive = load_word_file(positive_path);
  lexicon.negative = load_word_file(negative_path);
  lexicon.source = positive_path + " + " + negative_path;
  check_disjoint(lexicon);
  return lexicon;
}

Lexicon Lexicon::builtin() {
  Lexicon lexicon;
  for (const auto word : builtin_positive_words()) lexicon.positive.emplace(word);
  for (const auto word : builtin_negative_words()) lexicon.negative.emplace(word);
  lexicon.source = "builtin";
  check_disjoint(lexicon);
  return lexicon;
}

LexiconScorer::LexiconScorer(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}

double LexiconScorer::score(std::string_view text) const {
  int positive = 0;
  int negative = 0;
  for (const auto& token : tokenize(text)) {
    if (lexicon_.positive.count(token)) ++positive;
    if (lexicon_.negative.count(token)) ++negative;
  }
  if (positive + negative == 0) return 0.5;
  return 0.5 + 0.5 * static_cast<double>(positive - negative) / (positive + negative);
}

Dictionary Dictionary::build(const Archive& archive) {
  Dictionary d;
  for (const auto& post : archive.posts) {
    for (auto& token : tokenize(post.text)) {
      ++d.counts_[std::move(token)];
      ++d.total_;
    }
  }
  if (d.total_ == 0) throw Error("cannot build a dictionary from a token-free corpus");
  return d;
}

double Dictionary::probability(const std::string& token) const {
  const auto it = counts_.find(token);
  const auto count = it == counts_.end() ? 0 : it->second;
  return static_cast<double>(count + 1) /
         static_cast<double>(total_ + counts_.size() + 1);
}

double Dictionary::information_bits(const std::string& token) const {
  return -std::log2(probability(token));
}

std::optional<double> emotionality(std::span<const double> scores) {
  if (scores.empty()) return std::nullopt;
  double mean = 0.0;
  for (const double s : scores) mean += s;
  mean /= static_cast<double>(scores.size());
  double ss = 0.0;
  for (const double s : scores) ss += (s - mean) * (s - mean);
  return std::sqrt(ss / static_cast<double>(scores.size()));
}

double post_complexity(std::span<const std::string> tokens, const Dictionary& dictionary) {
  double bits = 0.0;
  for (const auto& token : tokens) bits += dictionary.information_bits(token);
  return bits / static_cast<double>(tokens.size());
}

std::vector<LanguageRow> compute_language(const Archive& archive,
                                          const std::vector<MonthWindow>& windows,
                                          const SentimentScorer& scorer,
                                          const Dictionary& dictionary, int jobs) {
  std::vector<LanguageRow> rows(windows.size());
  parallel_for(windows.size(), jobs, [&](std::size_t i) {
    const MonthWindow& w = windows[i];
    LanguageRow row{w.community_id, w.month, {}, {}, {}};
    std::vector<double> scores;
    double bits_sum = 0.0;
    for (const std::uint32_t p : w.post_index) {
      const auto tokens = tokenize(archive.posts[p].text);
      if (tokens.empty()) continue;  // empty posts contribute no tokens
      scores.push_back(scorer.score(archive.posts[p].text));
      bits_sum += post_complexity(tokens, dictionary);
    }
    if (!scores.empty()) {
      double mean = 0.0;
      for (const double s : scores) mean += s;
      row.sentiment = mean / static_cast<double>(scores.size());
      row.emotionality = emotionality(scores);
      row.complexity = bits_sum / static_cast<double>(scores.size());
    }
    rows[i] = std::move(row);
  });
  return rows;
}

}  // namespace vcop
