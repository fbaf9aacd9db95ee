#include "vcop/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "vcop/error.hpp"
#include "vcop/language.hpp"

namespace vcop {
namespace {

constexpr double kLexiconTokenShare = 0.25;
constexpr int kCommonPool = 50;
constexpr int kRarePool = 5000;
constexpr int kMaxParentTries = 16;

std::string padded(const char* prefix, std::uint64_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%0*llu", prefix, width,
                static_cast<unsigned long long>(n));
  return buf;
}

void validate(const CommunitySpec& spec) {
  auto dial = [&](double v, const char* name) {
    if (v < 0.0 || v > 1.0) {
      throw Error("spec " + spec.community_id + ": " + name + " must lie in [0,1]");
    }
  };
  if (spec.community_id.empty()) throw Error("spec without community_id");
  if (spec.months < 1) throw Error("spec " + spec.community_id + ": months must be >= 1");
  if (spec.members < 1 && spec.posts_per_month > 0.0) {
    throw Error("spec " + spec.community_id + ": positive post rate with no members");
  }
  if (spec.members < 1) throw Error("spec " + spec.community_id + ": members must be >= 1");
  if (spec.initial_members < 0 || spec.initial_members > spec.members) {
    throw Error("spec " + spec.community_id + ": initial_members outside 0..members");
  }
  if (spec.posts_per_month < 0.0) {
    throw Error("spec " + spec.community_id + ": negative post rate");
  }
  dial(spec.centralization, "centralization");
  dial(spec.rotation, "rotation");
  dial(spec.sentiment_bias, "sentiment_bias");
  dial(spec.rare_vocabulary, "rare_vocabulary");
  if (spec.growth_coupling < 0.0) {
    throw Error("spec " + spec.community_id + ": negative growth_coupling");
  }
}

struct GeneratedPost {
  Instant timestamp;
  int author;                 // roster index
  std::optional<std::size_t> parent;  // index into the community's post list
};

std::string make_text(Rng& rng, const CommunitySpec& spec) {
  const auto positive = builtin_positive_words();
  const auto negative = builtin_negative_words();
  const int tokens = 3 + static_cast<int>(rng.below(10));
  std::string text;
  for (int i = 0; i < tokens; ++i) {
    if (!text.empty()) text.push_back(' ');
    if (rng.uniform() < kLexiconTokenShare) {
      if (rng.uniform() < spec.sentiment_bias) {
        text += positive[rng.below(positive.size())];
      } else {
        text += negative[rng.below(negative.size())];
      }
    } else if (rng.uniform() < spec.rare_vocabulary) {
      text += padded("zeta", rng.below(kRarePool), 4);
    } else {
      // Quadratic skew keeps the common pool zipf-like.
      const double u = rng.uniform();
      text += padded("word", static_cast<std::uint64_t>(u * u * kCommonPool), 2);
    }
  }
  return text;
}

void generate_community(const CommunitySpec& spec, std::vector<PostRecord>& out) {
  validate(spec);
  Rng rng(spec.seed);

  std::vector<GeneratedPost> history;
  std::vector<std::vector<std::size_t>> posts_of_author(
      static_cast<std::size_t>(spec.members));
  int activated = 0;
  int hub = 0;

  const double base_join =
      std::max(1.0, static_cast<double>(spec.members) / (2.0 * spec.months));
  YearMonth month = spec.start;
  for (int mi = 0; mi < spec.months; ++mi, month = month.next()) {
    const Instant begin = month.begin();
    const auto days = (month.end() - begin) / kSecondsPerDay;

    // New contributors this month; each posts at least once, so joiner
    // counts downstream equal the activations made here.
    const double expected_join =
        base_join + spec.growth_coupling * spec.centralization;
    int joining = rng.poisson(expected_join);
    if (mi == 0) {
      const int cohort = spec.initial_members > 0 ? spec.initial_members
                                                  : std::min(3, spec.members);
      joining = std::max(joining, cohort);
    }
    joining = std::min(joining, spec.members - activated);

    int posts = std::max(rng.poisson(spec.posts_per_month), joining);
    if (mi == 0 && activated + joining > 0) posts = std::max(posts, 1);

    // Hub schedule: one possible handover per day, among activated members.
    std::vector<int> hub_by_day(static_cast<std::size_t>(days));
    const int active_after_join = activated + joining;
    for (std::size_t d = 0; d < hub_by_day.size(); ++d) {
      if (active_after_join > 0 && rng.uniform() < spec.rotation) {
        hub = static_cast<int>(rng.below(static_cast<std::uint64_t>(active_after_join)));
      }
      hub_by_day[d] = hub;
    }

    std::vector<Instant> stamps;
    stamps.reserve(static_cast<std::size_t>(posts));
    for (int i = 0; i < posts; ++i) {
      stamps.push_back(begin + static_cast<Instant>(
                                   rng.below(static_cast<std::uint64_t>(days * kSecondsPerDay))));
    }
    std::sort(stamps.begin(), stamps.end());

    for (int i = 0; i < posts; ++i) {
      GeneratedPost post;
      post.timestamp = stamps[static_cast<std::size_t>(i)];
      if (i < joining) {
        post.author = activated + i;  // the new member's debut post
      } else if (active_after_join > 0) {
        post.author = static_cast<int>(
            rng.below(static_cast<std::uint64_t>(active_after_join)));
      } else {
        break;
      }

      const auto day = static_cast<std::size_t>((post.timestamp - begin) / kSecondsPerDay);
      const int day_hub = hub_by_day[day];
      if (!history.empty()) {
        if (post.author != day_hub && rng.uniform() < spec.centralization) {
          const auto& hub_posts = posts_of_author[static_cast<std::size_t>(day_hub)];
          if (!hub_posts.empty()) post.parent = hub_posts[rng.below(hub_posts.size())];
        } else {
          // Uniform branch: reply to somebody else's post, or start a thread
          // when the draw keeps landing on the author's own.
          for (int attempt = 0; attempt < kMaxParentTries; ++attempt) {
            const std::size_t pick = rng.below(history.size());
            if (history[pick].author != post.author) {
              post.parent = pick;
              break;
            }
          }
        }
      }
      posts_of_author[static_cast<std::size_t>(post.author)].push_back(history.size());
      history.push_back(post);
    }
    activated = active_after_join;
  }

  for (std::size_t i = 0; i < history.size(); ++i) {
    const GeneratedPost& g = history[i];
    PostRecord record;
    record.post_id = spec.community_id + padded("_p", i, 6);
    record.community_id = spec.community_id;
    record.author_id = spec.community_id + padded("_m", static_cast<std::uint64_t>(g.author), 4);
    if (g.parent) record.parent_post_id = spec.community_id + padded("_p", *g.parent, 6);
    record.timestamp = g.timestamp;
    record.text = make_text(rng, spec);
    out.push_back(std::move(record));
  }
}

}  // namespace

int Rng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  if (mean > 700.0) throw Error("poisson mean too large for the product method");
  const double limit = std::exp(-mean);
  int k = 0;
  double product = 1.0;
  do {
    ++k;
    product *= uniform();
  } while (product > limit);
  return k - 1;
}

Archive generate_archive(const std::vector<CommunitySpec>& specs) {
  if (specs.empty()) throw Error("no community specs given");
  std::vector<PostRecord> posts;
  for (const auto& spec : specs) generate_community(spec, posts);
  if (posts.empty()) throw Error("specs generated no posts");
  return finalize_archive(std::move(posts));
}

std::vector<CommunitySpec> load_community_specs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad spec file " + path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("communities") || !doc["communities"].is_array()) {
    throw Error("spec file must be an object with a \"communities\" array");
  }
  std::vector<CommunitySpec> specs;
  for (const auto& item : doc["communities"]) {
    CommunitySpec spec;
    try {
      spec.community_id = item.at("community_id").get<std::string>();
      spec.members = item.at("members").get<int>();
      spec.initial_members = item.value("initial_members", 0);
      spec.months = item.at("months").get<int>();
      spec.posts_per_month = item.at("posts_per_month").get<double>();
      spec.seed = item.at("seed").get<std::uint64_t>();
      spec.centralization = item.value("centralization", spec.centralization);
      spec.rotation = item.value("rotation", spec.rotation);
      spec.sentiment_bias = item.value("sentiment_bias", spec.sentiment_bias);
      spec.rare_vocabulary = item.value("rare_vocabulary", spec.rare_vocabulary);
      spec.growth_coupling = item.value("growth_coupling", spec.growth_coupling);
      if (item.contains("start")) {
        const auto start = YearMonth::parse(item["start"].get<std::string>());
        if (!start) throw Error("bad start month: " + item["start"].get<std::string>());
        spec.start = *start;
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error("bad community spec entry: " + std::string(e.what()));
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

}  // namespace vcop
