#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>

#include "frameforge/document_store.hpp"

namespace frameforge {

struct ServiceConfig {
  std::filesystem::path data_dir = "frameforge-data";
  std::string host = "127.0.0.1";
  int port = 7341;  // 0 binds an ephemeral port
  std::size_t max_body_kb = 1024;
};

/// HTTP/1.1 JSON facade over the document store and the library:
///
///   GET  /api/health
///   GET  /api/documents
///   PUT  /api/documents/{id}            frame XML or JSON body; ?expected_revision=N or If-Match
///   GET  /api/documents/{id}            ?format=xml|json, revision in X-Revision
///   POST /api/documents/{id}/translate
///   POST /api/documents/{id}/render     SVG, auto-laid out
///   POST /api/reverse                   XMI body, or JSON {"xmi", "trace"}
///
/// Error bodies are {"error": code, "diagnostics": [...]}.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the socket and returns the bound port. Throws std::runtime_error
  /// when the address cannot be bound.
  int bind();
  /// Serves until stop(). Binds first when bind() was not called.
  void run();
  void stop();
  /// Blocks until the server accepts connections.
  void wait_until_ready() const;

  DocumentStore& store();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace frameforge
