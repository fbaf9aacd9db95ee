#include <doctest.h>

#include <map>
#include <sstream>

#include "vcop/error.hpp"
#include "vcop/ingest.hpp"

using namespace vcop;

namespace {

IngestResult parse_jsonl_text(const std::string& text) {
  std::istringstream in(text);
  return parse_archive(in, ArchiveFormat::jsonl);
}

const char* kRecord =
    R"({"post_id":"p1","community_id":"c1","author_id":"alice","parent_post_id":null,"timestamp":"2010-03-14T09:26:53Z","text":"hello"})";

}  // namespace

TEST_SUITE_BEGIN("ingest");

TEST_CASE("single json-lines record maps onto one post") {
  const auto result = parse_jsonl_text(std::string(kRecord) + "\n");
  CHECK(result.records_seen == 1);
  CHECK(result.records_kept == 1);
  CHECK(result.diagnostics.empty());
  REQUIRE(result.archive.posts.size() == 1);
  const PostRecord& post = result.archive.posts[0];
  CHECK(post.post_id == "p1");
  CHECK(post.community_id == "c1");
  CHECK(post.author_id == "alice");
  CHECK_FALSE(post.parent_post_id.has_value());
  CHECK(post.timestamp == *parse_iso8601("2010-03-14T09:26:53Z"));
  CHECK(post.text == "hello");
  CHECK(result.archive.communities == std::vector<std::string>{"c1"});
}

TEST_CASE("missing timestamp drops the record with a diagnostic") {
  const std::string good = std::string(kRecord) + "\n";
  const std::string bad =
      R"({"post_id":"p2","community_id":"c1","author_id":"bob","parent_post_id":null,"text":"x"})";
  const auto result = parse_jsonl_text(good + bad + "\n");
  CHECK(result.archive.posts.size() == 1);
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].line == 2);
  CHECK(result.diagnostics[0].message == "missing field: timestamp");
}

TEST_CASE("unresolvable parent becomes a thread starter") {
  const std::string reply =
      R"({"post_id":"p2","community_id":"c1","author_id":"bob","parent_post_id":"ghost","timestamp":"2010-03-15T00:00:00Z","text":"re"})";
  const auto result = parse_jsonl_text(std::string(kRecord) + "\n" + reply + "\n");
  CHECK(result.archive.posts.size() == 2);
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].message ==
        "unresolvable parent_post_id: ghost, treated as thread-starting");
  for (const auto& post : result.archive.posts) {
    CHECK_FALSE(post.parent_post_id.has_value());
  }
}

TEST_CASE("duplicate post ids keep the first occurrence") {
  const std::string dup =
      R"({"post_id":"p1","community_id":"c1","author_id":"carol","parent_post_id":null,"timestamp":"2010-03-20T00:00:00Z","text":"later"})";
  const auto result = parse_jsonl_text(std::string(kRecord) + "\n" + dup + "\n");
  REQUIRE(result.archive.posts.size() == 1);
  CHECK(result.archive.posts[0].author_id == "alice");
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].message == "duplicate post_id: p1");
}

TEST_CASE("parent after reply is flagged but kept") {
  const std::string late_parent =
      R"({"post_id":"p0","community_id":"c1","author_id":"zed","parent_post_id":null,"timestamp":"2011-01-01T00:00:00Z","text":"op"})";
  const std::string early_reply =
      R"({"post_id":"p2","community_id":"c1","author_id":"bob","parent_post_id":"p0","timestamp":"2010-01-01T00:00:00Z","text":"re"})";
  const auto result = parse_jsonl_text(late_parent + "\n" + early_reply + "\n");
  CHECK(result.archive.posts.size() == 2);
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].message == "parent posted after reply: p0");
  // Still a reply; the link survives.
  CHECK(result.archive.posts[0].parent_post_id == "p0");
}

TEST_CASE("zero valid records is fatal") {
  CHECK_THROWS_AS(parse_jsonl_text("not json\n"), Error);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_archive(empty, ArchiveFormat::jsonl), Error);
}

TEST_CASE("csv archives parse with quoting and any column order") {
  std::istringstream in(
      "text,post_id,community_id,author_id,parent_post_id,timestamp\n"
      "\"hi, there\",p1,c1,alice,,2010-03-14T09:26:53Z\n"
      "reply,p2,c1,bob,p1,2010-03-14T10:00:00Z\n");
  const auto result = parse_archive(in, ArchiveFormat::csv);
  CHECK(result.diagnostics.empty());
  REQUIRE(result.archive.posts.size() == 2);
  CHECK(result.archive.posts[0].text == "hi, there");
  CHECK(result.archive.posts[1].parent_post_id == "p1");
}

TEST_CASE("csv header must name all six columns") {
  std::istringstream in("post_id,community_id,author_id\n1,2,3\n");
  CHECK_THROWS_WITH_AS(parse_archive(in, ArchiveFormat::csv),
                       "csv header missing column: parent_post_id", Error);
}

TEST_CASE("serialization round trips the archive") {
  const std::string reply =
      R"({"post_id":"p2","community_id":"c1","author_id":"bob","parent_post_id":"p1","timestamp":"2010-03-15T00:00:00Z","text":"re \"quoted\" é"})";
  const auto first = parse_jsonl_text(std::string(kRecord) + "\n" + reply + "\n");
  std::ostringstream out;
  write_jsonl(out, first.archive);
  std::istringstream in(out.str());
  const auto second = parse_archive(in, ArchiveFormat::jsonl);
  CHECK(second.diagnostics.empty());
  CHECK(first.archive.posts == second.archive.posts);
}

TEST_CASE("windows cover the span with empty months emitted") {
  std::ostringstream text;
  text << R"({"post_id":"a","community_id":"c1","author_id":"u1","parent_post_id":null,"timestamp":"2010-01-10T00:00:00Z","text":"x"})"
       << '\n'
       << R"({"post_id":"b","community_id":"c1","author_id":"u2","parent_post_id":null,"timestamp":"2010-03-31T23:59:59Z","text":"y"})"
       << '\n';
  const auto result = parse_jsonl_text(text.str());
  const auto windows = window_by_month(result.archive);
  REQUIRE(windows.size() == 3);
  CHECK(windows[0].month == YearMonth(2010, 1));
  CHECK(windows[1].month == YearMonth(2010, 2));
  CHECK(windows[1].post_index.empty());
  CHECK(windows[2].month == YearMonth(2010, 3));
  CHECK(windows[2].post_index.size() == 1);  // boundary post lands in March
}

TEST_CASE("windows partition the posts per community") {
  std::ostringstream text;
  int id = 0;
  for (const char* community : {"c1", "c2"}) {
    for (const char* stamp : {"2010-01-05T12:00:00Z", "2010-01-20T12:00:00Z",
                              "2010-04-01T00:00:00Z"}) {
      text << "{\"post_id\":\"p" << id++ << "\",\"community_id\":\"" << community
           << "\",\"author_id\":\"u\",\"parent_post_id\":null,\"timestamp\":\""
           << stamp << "\",\"text\":\"t\"}\n";
    }
  }
  const auto result = parse_jsonl_text(text.str());
  const auto windows = window_by_month(result.archive);
  CHECK(windows.size() == 8);  // two communities, Jan..Apr each

  std::map<std::string, int> window_posts;
  std::map<std::uint32_t, int> seen;
  for (const auto& w : windows) {
    for (const auto i : w.post_index) {
      ++seen[i];
      ++window_posts[w.community_id];
      CHECK(result.archive.posts[i].community_id == w.community_id);
      CHECK(YearMonth::of(result.archive.posts[i].timestamp) == w.month);
    }
  }
  CHECK(seen.size() == result.archive.posts.size());
  for (const auto& [index, count] : seen) CHECK(count == 1);
  CHECK(window_posts["c1"] == 3);
  CHECK(window_posts["c2"] == 3);
}

TEST_CASE("ingest report lists counts and diagnostics") {
  const std::string bad =
      R"({"post_id":"p2","community_id":"c1","author_id":"bob","parent_post_id":null,"text":"x"})";
  const auto result = parse_jsonl_text(std::string(kRecord) + "\n" + bad + "\n");
  const std::string report = render_ingest_report(result);
  CHECK(report.find("records seen:    2") != std::string::npos);
  CHECK(report.find("records kept:    1") != std::string::npos);
  CHECK(report.find("line 2: missing field: timestamp") != std::string::npos);
}

TEST_SUITE_END();
