#include "frameforge/document_store.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frameforge/frame_store.hpp"

namespace frameforge {
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kFrameSuffix = ".frame.xml";
constexpr std::string_view kIndexFile = "index.json";

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DiagnosticError(codes::kStorageError, "", "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const fs::path& target, std::string_view bytes) {
  static std::atomic<std::uint64_t> counter{0};
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw DiagnosticError(codes::kStorageError, "", "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw DiagnosticError(codes::kStorageError, "", "cannot replace " + target.string());
  }
}

}  // namespace

RevisionConflict::RevisionConflict(std::string doc_id, std::int64_t current, std::int64_t expected)
    : DiagnosticError(codes::kRevisionConflict, doc_id,
                      "expected revision " + std::to_string(expected) + ", current is " + std::to_string(current)),
      current_(current) {}

bool DocumentStore::valid_doc_id(std::string_view id) {
  if (id.empty() || id.size() > 128 || id.front() == '.') return false;
  for (const char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

DocumentStore::DocumentStore(fs::path data_dir) : dir_(std::move(data_dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    throw DiagnosticError(codes::kStorageError, "", "cannot use data directory " + dir_.string());
  }

  nlohmann::json index = nlohmann::json::object();
  if (fs::exists(dir_ / kIndexFile)) {
    try {
      auto parsed = nlohmann::json::parse(read_file(dir_ / kIndexFile));
      if (parsed.contains("documents") && parsed["documents"].is_object()) index = parsed["documents"];
    } catch (const nlohmann::json::exception&) {
      load_warnings_.push_back(make_warning(codes::kStorageError, "", "index.json unreadable; revisions reset"));
    }
  }

  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_regular_file()) continue;
    const std::string file = entry.path().filename().string();
    if (file.size() <= kFrameSuffix.size() ||
        file.compare(file.size() - kFrameSuffix.size(), kFrameSuffix.size(), kFrameSuffix) != 0) {
      continue;
    }
    const std::string doc_id = file.substr(0, file.size() - kFrameSuffix.size());
    if (!valid_doc_id(doc_id)) continue;
    try {
      auto doc = std::make_shared<StoredDocument>();
      doc->doc_id = doc_id;
      doc->diagram = parse_frame_xml(read_file(entry.path()));
      doc->revision = 1;
      doc->name = doc_id;
      if (index.contains(doc_id)) {
        const auto& meta = index[doc_id];
        if (meta.contains("revision") && meta["revision"].is_number_integer() && meta["revision"].get<std::int64_t>() > 0) {
          doc->revision = meta["revision"].get<std::int64_t>();
        }
        if (meta.contains("name") && meta["name"].is_string()) doc->name = meta["name"].get<std::string>();
      }
      docs_.emplace(doc_id, std::move(doc));
    } catch (const DiagnosticError& e) {
      load_warnings_.push_back(make_warning(e.code(), doc_id, std::string("skipped unreadable document: ") + e.what()));
    }
  }
}

std::mutex& DocumentStore::write_lock(const std::string& doc_id) {
  std::lock_guard guard(locks_mutex_);
  auto& slot = write_locks_[doc_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

DocumentStore::PutResult DocumentStore::put(const std::string& doc_id, FrameDiagram diagram,
                                            std::optional<std::string> name,
                                            std::optional<std::int64_t> expected_revision) {
  if (!valid_doc_id(doc_id)) {
    throw DiagnosticError(codes::kBadDocId, doc_id, "document id must match [A-Za-z0-9_.-]{1,128}");
  }
  // Serializing validates; an invalid diagram never reaches the disk.
  const std::string bytes = serialize_frame_xml(diagram);

  std::lock_guard write_guard(write_lock(doc_id));
  const auto previous = get(doc_id);
  const std::int64_t current = previous ? previous->revision : 0;
  if (expected_revision && *expected_revision != current) {
    throw RevisionConflict(doc_id, current, *expected_revision);
  }

  auto doc = std::make_shared<StoredDocument>();
  doc->doc_id = doc_id;
  doc->revision = current + 1;
  doc->diagram = std::move(diagram);
  doc->name = name ? *name : (previous ? previous->name : doc_id);

  write_atomic(dir_ / (doc_id + std::string(kFrameSuffix)), bytes);
  {
    std::unique_lock lock(docs_mutex_);
    docs_[doc_id] = doc;
  }
  {
    std::lock_guard index_guard(index_mutex_);
    write_index_locked();
  }
  return {std::move(doc), previous == nullptr};
}

void DocumentStore::write_index_locked() {
  nlohmann::ordered_json documents = nlohmann::ordered_json::object();
  {
    std::shared_lock lock(docs_mutex_);
    for (const auto& [id, doc] : docs_) {
      documents[id] = {{"revision", doc->revision}, {"name", doc->name}};
    }
  }
  nlohmann::ordered_json index;
  index["documents"] = std::move(documents);
  write_atomic(dir_ / kIndexFile, index.dump(2) + "\n");
}

std::shared_ptr<const StoredDocument> DocumentStore::get(const std::string& doc_id) const {
  std::shared_lock lock(docs_mutex_);
  const auto it = docs_.find(doc_id);
  return it == docs_.end() ? nullptr : it->second;
}

std::vector<std::shared_ptr<const StoredDocument>> DocumentStore::list() const {
  std::shared_lock lock(docs_mutex_);
  std::vector<std::shared_ptr<const StoredDocument>> out;
  out.reserve(docs_.size());
  for (const auto& [id, doc] : docs_) out.push_back(doc);
  return out;
}

std::size_t DocumentStore::size() const {
  std::shared_lock lock(docs_mutex_);
  return docs_.size();
}

}  // namespace frameforge
