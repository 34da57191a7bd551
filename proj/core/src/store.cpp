#include "cantor/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cantor/error.hpp"
#include "cantor/parallel.hpp"

namespace cantor {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string header_line(const DigitSystem& system) {
  json h;
  h["format"] = "cantor-records";
  h["schema"] = kSchemaVersion;
  h["system"] = system.to_string();
  return h.dump() + "\n";
}

void write_all(int fd, const std::string& data, const fs::path& path) {
  const char* p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    const ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IntegrityError("write to " + path.string() + " failed: " + std::strerror(errno));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

bool same_content(const DenominatorRecord& a, const DenominatorRecord& b) {
  if (a.q != b.q || a.n_q != b.n_q || a.ell != b.ell || a.phi != b.phi || a.mlo != b.mlo) return false;
  if (a.numerators && b.numerators && *a.numerators != *b.numerators) return false;
  return true;
}

void describe_conflict(const DenominatorRecord& a, const DenominatorRecord& b) {
  throw IntegrityError("conflicting records for q = " + std::to_string(a.q) + ": n_q " +
                       std::to_string(a.n_q) + " vs " + std::to_string(b.n_q));
}

}  // namespace

std::string record_to_json_line(const DenominatorRecord& r) {
  json j;
  j["q"] = r.q;
  j["ell"] = r.ell;
  j["phi"] = r.phi;
  j["n_q"] = r.n_q;
  j["mlo"] = r.mlo;
  j["method"] = std::string(to_string(r.method));
  if (r.numerators && r.numerators->size() <= kMaxStoredNumerators) j["numerators"] = *r.numerators;
  return j.dump() + "\n";
}

DenominatorRecord record_from_json_line(const std::string& line) {
  DenominatorRecord r;
  try {
    const json j = json::parse(line);
    r.q = j.at("q").get<std::uint64_t>();
    r.ell = j.at("ell").get<std::uint64_t>();
    r.phi = j.at("phi").get<std::uint64_t>();
    r.n_q = j.at("n_q").get<std::uint64_t>();
    r.mlo = j.at("mlo").get<std::uint64_t>();
    r.method = method_from_string(j.at("method").get<std::string>());
    if (j.contains("numerators")) r.numerators = j["numerators"].get<std::vector<std::uint64_t>>();
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("malformed record line: ") + e.what());
  } catch (const DomainError& e) {
    throw IntegrityError(std::string("malformed record line: ") + e.what());
  }
  validate_record(r);
  return r;
}

RecordFileContents read_record_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IntegrityError("cannot open record file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();

  RecordFileContents out;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos < data.size()) {
    const std::size_t nl = data.find('\n', pos);
    if (nl == std::string::npos) {
      out.torn_tail = true;
      break;
    }
    const std::string line = data.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    if (!have_header) {
      try {
        const json h = json::parse(line);
        if (h.at("format") != "cantor-records") throw IntegrityError("not a record file");
        if (h.at("schema").get<int>() != kSchemaVersion) {
          throw IntegrityError("schema version " + std::to_string(h.at("schema").get<int>()) +
                               " does not match " + std::to_string(kSchemaVersion));
        }
        out.system = DigitSystem::parse(h.at("system").get<std::string>());
      } catch (const json::exception& e) {
        throw IntegrityError(path.string() + ": bad header: " + e.what());
      } catch (const DomainError& e) {
        throw IntegrityError(path.string() + ": bad header: " + e.what());
      }
      have_header = true;
      continue;
    }
    DenominatorRecord r;
    try {
      r = record_from_json_line(line);
    } catch (const IntegrityError& e) {
      throw IntegrityError(path.string() + ": " + e.what());
    }
    if (!out.records.empty() && r.q <= out.records.back().q) {
      throw IntegrityError(path.string() + ": q not strictly increasing at q = " + std::to_string(r.q));
    }
    out.records.push_back(std::move(r));
  }
  if (!have_header && !data.empty() && !out.torn_tail) {
    throw IntegrityError(path.string() + ": missing header");
  }
  return out;
}

RecordWriter::RecordWriter(const fs::path& path, const DigitSystem& system, bool sync)
    : path_(path), sync_(sync) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) throw IntegrityError("cannot open " + path.string() + ": " + std::strerror(errno));
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw IntegrityError(path.string() + " is locked by another writer");
  }
  const auto size = fs::file_size(path);
  if (size == 0) {
    write_all(fd_, header_line(system), path_);
    return;
  }
  RecordFileContents existing = read_record_file(path);
  if (!(existing.system == system)) {
    throw IntegrityError(path.string() + " holds system " + existing.system.to_string() + ", not " +
                         system.to_string());
  }
  if (existing.torn_tail) {
    // Drop the partial last line left by an interrupted append.
    std::ifstream in(path, std::ios::binary);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto keep = data.rfind('\n') + 1;
    if (::ftruncate(fd_, static_cast<off_t>(keep)) != 0) {
      throw IntegrityError("cannot truncate torn tail of " + path.string());
    }
    if (keep == 0) write_all(fd_, header_line(system), path_);
  }
  if (!existing.records.empty()) last_q_ = existing.records.back().q;
}

RecordWriter::~RecordWriter() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

void RecordWriter::append(const DenominatorRecord& record) {
  validate_record(record);
  if (last_q_ && record.q <= *last_q_) {
    throw IntegrityError(path_.string() + ": append of q = " + std::to_string(record.q) +
                         " after q = " + std::to_string(*last_q_));
  }
  write_all(fd_, record_to_json_line(record), path_);
  if (sync_) ::fsync(fd_);
  last_q_ = record.q;
}

void merge_record_files(const fs::path& a, const fs::path& b, const fs::path& out) {
  const RecordFileContents ca = read_record_file(a);
  const RecordFileContents cb = read_record_file(b);
  if (!(ca.system == cb.system)) {
    throw IntegrityError("cannot merge files of different digit systems");
  }
  std::map<std::uint64_t, DenominatorRecord> merged;
  for (const auto* src : {&ca.records, &cb.records}) {
    for (const auto& r : *src) {
      auto [it, inserted] = merged.emplace(r.q, r);
      if (!inserted) {
        if (!same_content(it->second, r)) describe_conflict(it->second, r);
        if (!it->second.numerators && r.numerators) it->second.numerators = r.numerators;
      }
    }
  }
  if (fs::exists(out)) throw DomainError("merge output " + out.string() + " already exists");
  RecordWriter writer(out, ca.system);
  for (const auto& [q, r] : merged) writer.append(r);
}

RecordStore::RecordStore(fs::path root, DigitSystem system)
    : root_(std::move(root)), system_(std::move(system)) {}

fs::path RecordStore::directory() const { return root_ / system_.tag(); }

fs::path RecordStore::range_file(std::uint64_t qmin, std::uint64_t qmax) const {
  return directory() / ("records-" + std::to_string(qmin) + "-" + std::to_string(qmax) + ".jsonl");
}

std::vector<fs::path> RecordStore::files() const {
  std::vector<fs::path> out;
  if (!fs::exists(directory())) return out;
  for (const auto& entry : fs::directory_iterator(directory())) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with("records-") && name.ends_with(".jsonl")) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DenominatorRecord> RecordStore::load(std::uint64_t qmin, std::uint64_t qmax) const {
  std::map<std::uint64_t, DenominatorRecord> merged;
  for (const auto& file : files()) {
    for (auto& r : read_record_file(file).records) {
      if (r.q < qmin || r.q > qmax) continue;
      auto [it, inserted] = merged.emplace(r.q, r);
      if (!inserted && !same_content(it->second, r)) describe_conflict(it->second, r);
    }
  }
  std::vector<DenominatorRecord> out;
  out.reserve(merged.size());
  for (auto& [q, r] : merged) out.push_back(std::move(r));
  return out;
}

std::vector<DenominatorRecord> RecordStore::ensure_range(std::uint64_t qmin, std::uint64_t qmax,
                                                         std::optional<Method> method, unsigned threads,
                                                         ScanStats* stats) {
  if (!system_.is_ternary_cantor()) {
    throw DomainError("range scans are implemented for the ternary Cantor set only");
  }
  qmin = std::max<std::uint64_t>(qmin, 2);
  if (qmax < qmin) return {};
  const std::vector<DenominatorRecord> existing = load(qmin, qmax);
  std::set<std::uint64_t> have;
  for (const auto& r : existing) have.insert(r.q);

  std::vector<std::uint64_t> missing;
  for (std::uint64_t q = qmin; q <= qmax; ++q) {
    if (!have.count(q)) missing.push_back(q);
  }
  if (stats) {
    stats->reused = existing.size();
    stats->computed = missing.size();
  }
  if (missing.empty()) return existing;

  RecordWriter writer(range_file(qmin, qmax), system_);
  const std::size_t chunk = 256 * std::max(1u, threads == 0 ? default_threads() : threads);
  std::vector<DenominatorRecord> fresh;
  fresh.reserve(missing.size());
  for (std::size_t start = 0; start < missing.size(); start += chunk) {
    const std::size_t stop = std::min(missing.size(), start + chunk);
    std::vector<DenominatorRecord> block(stop - start);
    parallel_for(start, stop, threads, [&](std::uint64_t i) {
      DenominatorRecord r = enumerate(missing[i], method);
      if (r.numerators && r.numerators->size() > kMaxStoredNumerators) r.numerators.reset();
      block[i - start] = std::move(r);
    });
    for (auto& r : block) {
      writer.append(r);
      fresh.push_back(std::move(r));
    }
  }
  std::vector<DenominatorRecord> out;
  out.reserve(existing.size() + fresh.size());
  std::merge(existing.begin(), existing.end(), fresh.begin(), fresh.end(), std::back_inserter(out),
             [](const auto& x, const auto& y) { return x.q < y.q; });
  return out;
}

std::vector<DenominatorRecord> enumerate_range(std::uint64_t qmin, std::uint64_t qmax,
                                               std::optional<Method> method, unsigned threads,
                                               bool keep_numerators) {
  qmin = std::max<std::uint64_t>(qmin, 2);
  if (qmax < qmin) return {};
  std::vector<DenominatorRecord> out(qmax - qmin + 1);
  EnumerationOptions opts;
  opts.keep_numerators = keep_numerators;
  parallel_for(qmin, qmax + 1, threads, [&](std::uint64_t q) { out[q - qmin] = enumerate(q, method, opts); });
  return out;
}

void write_records_csv(std::ostream& out, const std::vector<DenominatorRecord>& records) {
  out << "q,ell,phi,n_q,mlo\r\n";
  for (const auto& r : records) {
    out << r.q << ',' << r.ell << ',' << r.phi << ',' << r.n_q << ',' << r.mlo << "\r\n";
  }
}

}  // namespace cantor
