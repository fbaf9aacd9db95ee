#include "vcop/language.hpp"

namespace vcop {
namespace {

// Hand-curated general-purpose opinion words; the same lists ship as plain
// text under data/lexicon/. Small on purpose; pass --lexicon-pos and
// --lexicon-neg to swap in a domain lexicon.
constexpr std::string_view kPositive[] = {
    "agree",       "amazing",      "appreciate",  "appreciated", "awesome",
    "beneficial",  "benefit",      "best",        "better",      "brilliant",
    "clear",       "congrats",     "congratulations", "constructive", "correct",
    "easier",      "easy",         "effective",   "efficient",   "encourage",
    "encouraging", "enjoy",        "enjoyed",     "excellent",   "excited",
    "exciting",    "fantastic",    "friendly",    "generous",    "glad",
    "good",        "grateful",     "great",       "happy",       "helpful",
    "hope",        "hopeful",      "impressive",  "improve",     "improved",
    "improvement", "innovative",   "insightful",  "inspired",    "inspiring",
    "interesting", "kind",         "love",        "meaningful",  "nice",
    "outstanding", "perfect",      "pleased",     "positive",    "productive",
    "progress",    "promising",    "recommend",   "recommended", "reliable",
    "resolve",     "resolved",     "rewarding",   "right",       "robust",
    "safe",        "smooth",       "solved",      "strong",      "succeed",
    "success",     "successful",   "superb",      "support",     "supportive",
    "thank",       "thanks",       "trust",       "trusted",     "useful",
    "valuable",    "welcome",      "win",         "wonderful",
};

constexpr std::string_view kNegative[] = {
    "afraid",      "angry",        "annoyed",     "annoying",    "awful",
    "bad",         "blocked",      "broken",      "chaos",       "complain",
    "complaint",   "concern",      "concerned",   "concerning",  "confused",
    "confusing",   "confusion",    "crisis",      "danger",      "dangerous",
    "delay",       "delayed",      "difficult",   "disappointed", "disappointing",
    "disappointment", "doubt",     "doubtful",    "error",       "errors",
    "fail",        "failed",       "failing",     "failure",     "fear",
    "frustrated",  "frustrating",  "frustration", "harm",        "harmful",
    "horrible",    "hurt",         "ill",         "impossible",  "inadequate",
    "insufficient", "lack",        "lacking",     "lose",        "losing",
    "lost",        "mess",         "misleading",  "missing",     "mistake",
    "mistakes",    "negative",     "pain",        "painful",     "poor",
    "problem",     "problems",     "reject",      "rejected",    "risk",
    "risky",       "sad",          "severe",      "sick",        "slow",
    "struggle",    "struggling",   "terrible",    "unclear",     "unfortunate",
    "unfortunately", "useless",    "waste",       "wasted",      "weak",
    "worried",     "worry",        "worrying",    "worse",       "worst",
    "wrong",
};

}  // namespace

std::span<const std::string_view> builtin_positive_words() { return kPositive; }
std::span<const std::string_view> builtin_negative_words() { return kNegative; }

}  // namespace vcop
