#include "frameforge/service.hpp"

#include <charconv>

#include <httplib.h>
#include <json.hpp>

#include "frameforge/frame_json.hpp"
#include "frameforge/frame_store.hpp"
#include "frameforge/layout.hpp"
#include "frameforge/translate.hpp"
#include "frameforge/uml_emit.hpp"

namespace frameforge {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kJsonType = "application/json";

void send_json(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", kJsonType);
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::vector<Diagnostic>& diagnostics) {
  ordered_json body;
  body["error"] = std::string(code);
  body["diagnostics"] = diagnostics_to_json(diagnostics);
  send_json(res, status, body);
}

void send_error(httplib::Response& res, int status, const DiagnosticError& e) {
  send_error(res, status, e.code(), e.diagnostics());
}

void send_error(httplib::Response& res, int status, std::string_view code, std::string message) {
  send_error(res, status, code, {make_error(code, "", std::move(message))});
}

std::string status_code_name(int status) {
  switch (status) {
    case 400: return std::string(codes::kBadRequest);
    case 404: return std::string(codes::kNotFound);
    case 413: return std::string(codes::kPayloadTooLarge);
    default: return "HTTP_" + std::to_string(status);
  }
}

std::optional<std::int64_t> parse_revision(std::string text) {
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') text = text.substr(1, text.size() - 2);
  std::int64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size() || v < 0) return std::nullopt;
  return v;
}

bool looks_like_json(const httplib::Request& req) {
  if (req.get_header_value("Content-Type").find("json") != std::string::npos) return true;
  for (const char c : req.body) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
    return c == '[' || c == '{';
  }
  return false;
}

void set_revision_headers(httplib::Response& res, std::int64_t revision) {
  res.set_header("X-Revision", std::to_string(revision));
  res.set_header("ETag", "\"" + std::to_string(revision) + "\"");
}

ordered_json summary(const StoredDocument& doc) {
  return {{"doc_id", doc.doc_id}, {"name", doc.name}, {"revision", doc.revision}, {"elements", doc.diagram.size()}};
}

}  // namespace

struct Service::Impl {
  ServiceConfig config;
  DocumentStore store;
  httplib::Server server;
  int port = -1;

  explicit Impl(ServiceConfig c) : config(std::move(c)), store(config.data_dir) { install_routes(); }

  std::shared_ptr<const StoredDocument> require_document(const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    auto doc = store.get(id);
    if (!doc) send_error(res, 404, codes::kNotFound, "no document '" + id + "'");
    return doc;
  }

  void install_routes() {
    server.set_payload_max_length(config.max_body_kb * 1024);

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
      send_error(res, res.status, status_code_name(res.status), "request rejected");
      return httplib::Server::HandlerResponse::Handled;
    });

    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      std::string what = "internal error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      send_error(res, 500, "INTERNAL", what);
    });

    server.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, {{"status", "ok"}, {"documents", store.size()}});
    });

    server.Get("/api/documents", [this](const httplib::Request&, httplib::Response& res) {
      ordered_json docs = ordered_json::array();
      for (const auto& doc : store.list()) docs.push_back(summary(*doc));
      send_json(res, 200, {{"documents", docs}});
    });

    server.Put(R"(/api/documents/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      put_document(req, res);
    });

    server.Get(R"(/api/documents/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      const auto doc = require_document(req, res);
      if (!doc) return;
      const std::string format = req.has_param("format") ? req.get_param_value("format") : "xml";
      if (format == "xml") {
        res.set_content(serialize_frame_xml(doc->diagram), "application/xml");
      } else if (format == "json") {
        res.set_content(diagram_to_json(doc->diagram).dump() + "\n", kJsonType);
      } else {
        send_error(res, 400, codes::kBadRequest, "format must be xml or json");
        return;
      }
      set_revision_headers(res, doc->revision);
    });

    server.Post(R"(/api/documents/([^/]+)/translate)", [this](const httplib::Request& req, httplib::Response& res) {
      const auto doc = require_document(req, res);
      if (!doc) return;
      TranslateOptions options;
      options.strict = false;
      options.diagram_name = doc->name;
      try {
        const auto result = frame_to_uml(doc->diagram, options);
        ordered_json body;
        body["plantuml"] = to_plantuml(result.model);
        body["xmi"] = to_xmi(result.model);
        body["trace"] = ordered_json::parse(trace_to_json(result.trace));
        body["warnings"] = diagnostics_to_json(result.warnings);
        send_json(res, 200, body);
        set_revision_headers(res, doc->revision);
      } catch (const DiagnosticError& e) {
        send_error(res, 422, e);
      }
    });

    server.Post(R"(/api/documents/([^/]+)/render)", [this](const httplib::Request& req, httplib::Response& res) {
      const auto doc = require_document(req, res);
      if (!doc) return;
      try {
        res.set_content(render_frame_svg(auto_layout(doc->diagram)), "image/svg+xml");
        set_revision_headers(res, doc->revision);
      } catch (const DiagnosticError& e) {
        send_error(res, 422, e);
      }
    });

    server.Post("/api/reverse", [](const httplib::Request& req, httplib::Response& res) { reverse(req, res); });
  }

  void put_document(const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    if (!DocumentStore::valid_doc_id(id)) {
      send_error(res, 400, codes::kBadDocId, "document id must match [A-Za-z0-9_.-]{1,128}");
      return;
    }
    std::optional<std::int64_t> expected;
    std::string raw_expected;
    if (req.has_param("expected_revision")) {
      raw_expected = req.get_param_value("expected_revision");
    } else if (req.has_header("If-Match")) {
      raw_expected = req.get_header_value("If-Match");
    }
    if (!raw_expected.empty()) {
      expected = parse_revision(raw_expected);
      if (!expected) {
        send_error(res, 400, codes::kBadRequest, "expected revision must be a non-negative integer");
        return;
      }
    }
    std::optional<std::string> name;
    if (req.has_param("name")) name = req.get_param_value("name");

    FrameDiagram diagram;
    try {
      diagram = looks_like_json(req) ? diagram_from_json(req.body) : parse_frame_xml(req.body);
    } catch (const DiagnosticError& e) {
      send_error(res, 400, e);
      return;
    }
    try {
      const auto result = store.put(id, std::move(diagram), std::move(name), expected);
      send_json(res, result.created ? 201 : 200, summary(*result.document));
      set_revision_headers(res, result.document->revision);
    } catch (const RevisionConflict& e) {
      send_error(res, 409, e);
      set_revision_headers(res, e.current_revision());
    } catch (const DiagnosticError& e) {
      send_error(res, e.code() == codes::kStorageError ? 500 : 400, e);
    }
  }

  static void reverse(const httplib::Request& req, httplib::Response& res) {
    std::string xmi = req.body;
    std::optional<TraceMap> trace;
    try {
      if (looks_like_json(req)) {
        ordered_json body;
        try {
          body = ordered_json::parse(req.body);
        } catch (const nlohmann::json::exception& e) {
          throw ParseError(codes::kBadJson, "", std::string("malformed request JSON: ") + e.what());
        }
        if (!body.is_object() || !body.contains("xmi") || !body["xmi"].is_string()) {
          throw ParseError(codes::kBadJson, "", "expected {\"xmi\": string, \"trace\": object or null}");
        }
        xmi = body["xmi"].get<std::string>();
        if (body.contains("trace") && !body["trace"].is_null()) {
          trace = trace_from_json(body["trace"].dump());
        }
      }
    } catch (const DiagnosticError& e) {
      send_error(res, 400, e);
      return;
    }

    uml::Model model;
    try {
      model = from_xmi(xmi);
    } catch (const DiagnosticError& e) {
      send_error(res, 400, e);
      return;
    }
    try {
      const auto reversed = uml_to_frame(model, trace);
      res.set_content(serialize_frame_xml(auto_layout(reversed.diagram)), "application/xml");
    } catch (const DiagnosticError& e) {
      const bool stale = has_code(e.diagnostics(), codes::kStaleTrace) || has_code(e.diagnostics(), codes::kBadTrace);
      send_error(res, stale ? 409 : 422, e);
    }
  }
};

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

Service::~Service() { stop(); }

int Service::bind() {
  if (impl_->port >= 0) return impl_->port;
  if (impl_->config.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(impl_->config.host);
  } else if (impl_->server.bind_to_port(impl_->config.host, impl_->config.port)) {
    impl_->port = impl_->config.port;
  }
  if (impl_->port < 0) {
    throw std::runtime_error("cannot bind " + impl_->config.host + ":" + std::to_string(impl_->config.port));
  }
  return impl_->port;
}

void Service::run() {
  bind();
  impl_->server.listen_after_bind();
}

void Service::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

DocumentStore& Service::store() { return impl_->store; }

}  // namespace frameforge
