#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cantor/error.hpp"
#include "cantor/store.hpp"

using namespace cantor;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("cantor-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::vector<DenominatorRecord>& rs) {
  RecordWriter w(p, DigitSystem::ternary());
  for (const auto& r : rs) w.append(r);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("json line round trip") {
  const auto r = enumerate(13);
  const auto line = record_to_json_line(r);
  CHECK(line.find("\"q\":13") != std::string::npos);
  CHECK(record_from_json_line(line) == r);

  auto bare = enumerate(82, std::nullopt, {.keep_numerators = false});
  CHECK(record_from_json_line(record_to_json_line(bare)) == bare);

  CHECK_THROWS_AS(record_from_json_line("{\"q\":13}"), IntegrityError);
  CHECK_THROWS_AS(record_from_json_line("not json"), IntegrityError);
}

TEST_CASE("append then load a single record") {
  TempDir dir;
  const auto file = dir.path / "one.jsonl";
  const auto r = enumerate(13);
  write_file(file, {r});
  const auto contents = read_record_file(file);
  REQUIRE(contents.records.size() == 1);
  CHECK(contents.records[0] == r);
  CHECK(contents.system == DigitSystem::ternary());
  CHECK_FALSE(contents.torn_tail);
}

TEST_CASE("writer enforces increasing q and resumes after the last record") {
  TempDir dir;
  const auto file = dir.path / "r.jsonl";
  {
    RecordWriter w(file, DigitSystem::ternary());
    w.append(enumerate(4));
    w.append(enumerate(5));
    CHECK(w.last_q() == 5u);
    CHECK_THROWS_AS(w.append(enumerate(5)), IntegrityError);
  }
  RecordWriter again(file, DigitSystem::ternary());
  CHECK(again.last_q() == 5u);
  CHECK_THROWS_AS(again.append(enumerate(4)), IntegrityError);
  again.append(enumerate(7));
  CHECK(read_record_file(file).records.size() == 3);
  CHECK_THROWS_AS(RecordWriter(file, DigitSystem(5, {0, 4})), IntegrityError);
}

TEST_CASE("second writer on a locked file is refused") {
  TempDir dir;
  const auto file = dir.path / "lock.jsonl";
  RecordWriter w(file, DigitSystem::ternary());
  CHECK_THROWS_AS(RecordWriter(file, DigitSystem::ternary()), IntegrityError);
}

TEST_CASE("torn tail is ignored, corrupt lines are not") {
  TempDir dir;
  const auto file = dir.path / "t.jsonl";
  write_file(file, {enumerate(4), enumerate(5)});
  {
    std::ofstream out(file, std::ios::app | std::ios::binary);
    out << "{\"q\":7,\"ell\":";
  }
  const auto c = read_record_file(file);
  CHECK(c.records.size() == 2);
  CHECK(c.torn_tail);

  const auto bad = dir.path / "bad.jsonl";
  write_file(bad, {enumerate(4)});
  {
    std::ofstream out(bad, std::ios::app | std::ios::binary);
    out << "garbage\n";
  }
  CHECK_THROWS_AS(read_record_file(bad), IntegrityError);

  const auto wrong = dir.path / "wrong.jsonl";
  write_file(wrong, {enumerate(13)});
  std::string text = slurp(wrong);
  text.replace(text.find("\"n_q\":6"), 7, "\"n_q\":5");
  std::ofstream(wrong, std::ios::binary | std::ios::trunc) << text;
  CHECK_THROWS_AS(read_record_file(wrong), IntegrityError);

  CHECK_THROWS_AS(read_record_file(dir.path / "missing.jsonl"), IntegrityError);
}

TEST_CASE("merge of disjoint ranges is the union") {
  TempDir dir;
  const auto a = dir.path / "a.jsonl";
  const auto b = dir.path / "b.jsonl";
  const auto out = dir.path / "m.jsonl";
  const auto ra = enumerate_range(2, 20, std::nullopt, 1, true);
  const auto rb = enumerate_range(21, 40, std::nullopt, 1, true);
  write_file(a, ra);
  write_file(b, rb);
  merge_record_files(a, b, out);
  auto expected = ra;
  expected.insert(expected.end(), rb.begin(), rb.end());
  CHECK(read_record_file(out).records == expected);

  // Overlapping but consistent inputs deduplicate.
  const auto c = dir.path / "c.jsonl";
  write_file(c, enumerate_range(15, 25, std::nullopt, 1, true));
  const auto out2 = dir.path / "m2.jsonl";
  merge_record_files(a, c, out2);
  CHECK(read_record_file(out2).records.size() == 24);
}

TEST_CASE("merge with a conflicting record names the denominator") {
  TempDir dir;
  const auto a = dir.path / "a.jsonl";
  const auto b = dir.path / "b.jsonl";
  auto r = enumerate(13, std::nullopt, {.keep_numerators = false});
  write_file(a, {r});
  std::string text = slurp(a);
  text.replace(text.find("\"n_q\":6"), 7, "\"n_q\":12");
  std::ofstream(b, std::ios::binary | std::ios::trunc) << text;
  try {
    merge_record_files(a, b, dir.path / "m.jsonl");
    FAIL("expected an integrity error");
  } catch (const IntegrityError& e) {
    CHECK(std::string(e.what()).find("13") != std::string::npos);
  }
}

TEST_CASE("store resume does no repeated work") {
  TempDir dir;
  RecordStore store(dir.path, DigitSystem::ternary());
  RecordStore::ScanStats stats;
  auto first = store.ensure_range(2, 200, std::nullopt, 2, &stats);
  CHECK(stats.computed == 199);
  CHECK(stats.reused == 0);
  CHECK(first.size() == 199);

  RecordStore::ScanStats again;
  auto second = store.ensure_range(2, 200, std::nullopt, 2, &again);
  CHECK(again.computed == 0);
  CHECK(again.reused == 199);
  CHECK(second == first);

  RecordStore::ScanStats grow;
  auto third = store.ensure_range(100, 300, std::nullopt, 2, &grow);
  CHECK(grow.computed == 100);
  CHECK(grow.reused == 101);
  CHECK(third.front().q == 100);
  CHECK(third.back().q == 300);
  CHECK(store.load(2, 300).size() == 299);
  CHECK(store.directory() == dir.path / "b3-F02");
  CHECK(store.range_file(2, 200).filename() == "records-2-200.jsonl");
  CHECK(store.files().size() == 2);
}

TEST_CASE("records agree across threads and with the store") {
  TempDir dir;
  const auto one = enumerate_range(2, 500, std::nullopt, 1);
  const auto four = enumerate_range(2, 500, std::nullopt, 4);
  CHECK(one == four);
  RecordStore store(dir.path, DigitSystem::ternary());
  auto stored = store.ensure_range(2, 500, std::nullopt, 3);
  for (auto& r : stored) r.numerators.reset();
  auto plain = one;
  for (auto& r : plain) r.numerators.reset();
  CHECK(stored == plain);
}

TEST_CASE("csv export") {
  std::ostringstream out;
  write_records_csv(out, {enumerate(13), enumerate(23)});
  CHECK(out.str() == "q,ell,phi,n_q,mlo\r\n13,3,12,6,6\r\n23,11,22,0,1\r\n");
}
