#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vcop/archive.hpp"

namespace vcop {

// Deterministic generator dial set for one synthetic community. The dials
// give the pipeline controllable ground truth: centralization shapes how
// star-like the monthly reply graphs are, rotation how often the hub role
// moves, and the text dials steer the language metrics.
struct CommunitySpec {
  std::string community_id;
  int members = 0;            // roster size; activated over the run
  int initial_members = 0;    // month-zero cohort; 0 derives it from the rate
  int months = 0;
  double posts_per_month = 0.0;
  double centralization = 0.0;  // P(reply targets the current hub) vs uniform
  double rotation = 0.0;        // per-day P(hub role moves to another member)
  double sentiment_bias = 0.5;  // share of lexicon tokens drawn positive
  double rare_vocabulary = 0.0; // share of content tokens from the rare pool
  double growth_coupling = 0.0; // extra expected joiners per unit centralization
  std::uint64_t seed = 0;
  YearMonth start{2008, 4};
};

// mt19937_64 with hand-rolled draws; std:: distributions are
// implementation-defined, these are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  int poisson(double mean);  // Knuth's product method; mean <= ~700

 private:
  std::mt19937_64 engine_;
};

// Byte-identical output for identical specs. Every activated member posts at
// least once in their activation month, so generator activations equal the
// pipeline's joiner counts.
Archive generate_archive(const std::vector<CommunitySpec>& specs);

// JSON spec file: {"communities": [{...}, ...]}. Field names match the
// struct; community_id, members, months, posts_per_month and seed are
// required, the dials default as above.
std::vector<CommunitySpec> load_community_specs(const std::string& path);

}  // namespace vcop
