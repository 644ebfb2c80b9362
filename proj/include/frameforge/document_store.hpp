#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "frameforge/diagnostic.hpp"
#include "frameforge/frame_model.hpp"

namespace frameforge {

/// Immutable snapshot of one stored document. Readers hold a shared_ptr and
/// never see a later write.
struct StoredDocument {
  std::string doc_id;
  std::int64_t revision = 0;
  FrameDiagram diagram;
  std::string name;
};

/// Thrown by DocumentStore::put when expected_revision does not match.
class RevisionConflict : public DiagnosticError {
 public:
  RevisionConflict(std::string doc_id, std::int64_t current, std::int64_t expected);
  std::int64_t current_revision() const noexcept { return current_; }

 private:
  std::int64_t current_;
};

/// Document store over a data directory: `<doc_id>.frame.xml` per document
/// plus `index.json` holding revisions and names. Writes are atomic
/// (temp file + rename) and serialized per document.
class DocumentStore {
 public:
  /// Creates the directory if needed and rebuilds the index from disk.
  /// Files without an index entry come back at revision 1; unreadable
  /// files are skipped and reported through load_warnings().
  explicit DocumentStore(std::filesystem::path data_dir);

  struct PutResult {
    std::shared_ptr<const StoredDocument> document;
    bool created = false;
  };

  /// expected_revision 0 means "must not exist yet". `name` keeps the
  /// previous name (or the doc id for a new document) when absent.
  /// Throws DiagnosticError(BAD_DOC_ID / invalid diagram), RevisionConflict,
  /// or DiagnosticError(STORAGE_ERROR) when the disk write fails.
  PutResult put(const std::string& doc_id, FrameDiagram diagram, std::optional<std::string> name = std::nullopt,
                std::optional<std::int64_t> expected_revision = std::nullopt);

  /// nullptr for an unknown id.
  std::shared_ptr<const StoredDocument> get(const std::string& doc_id) const;
  /// Sorted by doc id.
  std::vector<std::shared_ptr<const StoredDocument>> list() const;
  std::size_t size() const;

  const std::filesystem::path& data_dir() const { return dir_; }
  const std::vector<Diagnostic>& load_warnings() const { return load_warnings_; }

  /// Letters, digits, '-', '_' and '.', 1..128 chars, not starting with '.'.
  static bool valid_doc_id(std::string_view id);

 private:
  std::mutex& write_lock(const std::string& doc_id);
  void write_index_locked();

  std::filesystem::path dir_;
  mutable std::shared_mutex docs_mutex_;
  std::map<std::string, std::shared_ptr<const StoredDocument>> docs_;
  std::mutex locks_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> write_locks_;
  std::mutex index_mutex_;
  std::vector<Diagnostic> load_warnings_;
};

}  // namespace frameforge
