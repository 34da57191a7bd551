#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cantor/digitsys.hpp"
#include "cantor/enumerator.hpp"

namespace cantor {

inline constexpr int kSchemaVersion = 1;
// Numerator lists are written only for records with at most this many.
inline constexpr std::uint64_t kMaxStoredNumerators = 10'000;

std::string record_to_json_line(const DenominatorRecord& record);
DenominatorRecord record_from_json_line(const std::string& line);

/// Reads a record file. Validates the header, schema version, every record
/// and strict q ordering; a final line without a newline (torn write) is
/// ignored. Throws IntegrityError on any violation.
struct RecordFileContents {
  DigitSystem system = DigitSystem::ternary();
  std::vector<DenominatorRecord> records;
  bool torn_tail = false;
};
RecordFileContents read_record_file(const std::filesystem::path& path);

/// Append-only writer holding an exclusive advisory lock on the file. Each
/// record is written with a single write(2) of one complete line.
class RecordWriter {
 public:
  RecordWriter(const std::filesystem::path& path, const DigitSystem& system, bool sync = false);
  ~RecordWriter();
  RecordWriter(const RecordWriter&) = delete;
  RecordWriter& operator=(const RecordWriter&) = delete;

  void append(const DenominatorRecord& record);
  std::optional<std::uint64_t> last_q() const noexcept { return last_q_; }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  int fd_ = -1;
  bool sync_;
  std::optional<std::uint64_t> last_q_;
};

/// Merges two record files of the same system into `out`, deduplicating by
/// q. Conflicting records for one q raise IntegrityError naming that q.
void merge_record_files(const std::filesystem::path& a, const std::filesystem::path& b,
                        const std::filesystem::path& out);

/// Directory of record files `<root>/<system-tag>/records-<qmin>-<qmax>.jsonl`.
class RecordStore {
 public:
  RecordStore(std::filesystem::path root, DigitSystem system);

  std::filesystem::path directory() const;
  std::filesystem::path range_file(std::uint64_t qmin, std::uint64_t qmax) const;
  std::vector<std::filesystem::path> files() const;

  /// All stored records with qmin <= q <= qmax, sorted by q, across every file.
  /// Duplicate q across files must agree.
  std::vector<DenominatorRecord> load(std::uint64_t qmin, std::uint64_t qmax) const;

  struct ScanStats {
    std::uint64_t computed = 0;
    std::uint64_t reused = 0;
  };

  /// Ensures every q in [qmin, qmax] (q >= 2) is stored, enumerating only the
  /// missing ones, and returns the full range. Re-running over a stored
  /// range does no enumeration work.
  std::vector<DenominatorRecord> ensure_range(std::uint64_t qmin, std::uint64_t qmax,
                                              std::optional<Method> method, unsigned threads,
                                              ScanStats* stats = nullptr);

 private:
  std::filesystem::path root_;
  DigitSystem system_;
};

/// Enumerates [qmin, qmax] in memory, in parallel, without touching disk.
std::vector<DenominatorRecord> enumerate_range(std::uint64_t qmin, std::uint64_t qmax,
                                               std::optional<Method> method, unsigned threads,
                                               bool keep_numerators = false);

/// CSV export `q,ell,phi,n_q,mlo`.
void write_records_csv(std::ostream& out, const std::vector<DenominatorRecord>& records);

}  // namespace cantor
