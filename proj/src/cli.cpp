#include "frameforge/cli.hpp"

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frameforge/frame_json.hpp"
#include "frameforge/frame_store.hpp"
#include "frameforge/layout.hpp"
#include "frameforge/service.hpp"
#include "frameforge/translate.hpp"
#include "frameforge/uml_emit.hpp"

namespace frameforge {
namespace {

namespace fs = std::filesystem;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool json = false;
};

std::string read_input(const std::string& path, Streams& s) {
  std::ostringstream ss;
  if (path == "-") {
    ss << s.in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  ss << f.rdbuf();
  if (f.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_output(const std::string& path, std::string_view bytes, Streams& s) {
  if (path == "-") {
    s.out << bytes;
    s.out.flush();
    return;
  }
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f) throw IoError("cannot write " + path);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot write " + path);
  }
}

/// "dir/x.frame.xml" -> "dir/x"; otherwise the last extension is dropped.
std::string stem_of(const std::string& path) {
  for (const std::string_view suffix : {".frame.xml", ".uml.xmi"}) {
    if (path.size() > suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return path.substr(0, path.size() - suffix.size());
    }
  }
  const fs::path p(path);
  return (p.parent_path() / p.stem()).string();
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, std::ostream& os, bool json) {
  if (json) {
    nlohmann::ordered_json body;
    body["diagnostics"] = diagnostics_to_json(diagnostics);
    os << body.dump() << "\n";
    return;
  }
  for (const auto& d : diagnostics) {
    os << d.code << '\t' << d.element << '\t' << d.message << '\n';
  }
}

int cmd_validate(const std::string& file, Streams& s) {
  const std::string bytes = read_input(file, s);
  auto diagnostics = validate_against_schema(bytes);
  if (!has_errors(diagnostics)) {
    try {
      parse_frame_document(bytes);
    } catch (const ParseError& e) {
      for (const auto& d : e.diagnostics()) {
        if (d.severity == Severity::error) diagnostics.push_back(d);
      }
    }
  }
  if (!diagnostics.empty() || s.json) print_diagnostics(diagnostics, s.out, s.json);
  return has_errors(diagnostics) ? kExitDiagnostics : kExitOk;
}

int cmd_fmt(const std::string& file, bool check, Streams& s) {
  const std::string bytes = read_input(file, s);
  const std::string canonical = serialize_frame_xml(parse_frame_xml(bytes));
  if (check) {
    if (bytes == canonical) return kExitOk;
    std::size_t line = 1;
    for (std::size_t i = 0; i < bytes.size() && i < canonical.size() && bytes[i] == canonical[i]; ++i) {
      if (bytes[i] == '\n') ++line;
    }
    const Diagnostic diff{"DIFF", file, "not canonical; first difference at line " + std::to_string(line),
                          Severity::error};
    print_diagnostics({diff}, s.out, s.json);
    return kExitDiagnostics;
  }
  if (file == "-" || bytes != canonical) write_output(file, canonical, s);
  return kExitOk;
}

struct TranslateArgs {
  std::string file;
  std::string plantuml;
  std::string xmi;
  std::string trace;
  std::string name;
  bool strict = false;
};

int cmd_translate(const TranslateArgs& a, Streams& s) {
  std::string plantuml_path = a.plantuml, xmi_path = a.xmi, trace_path = a.trace;
  if (plantuml_path.empty() && xmi_path.empty() && trace_path.empty()) {
    if (a.file == "-") {
      s.err << "translate: reading stdin needs an explicit --out-plantuml, --out-xmi or --out-trace\n";
      return kExitUsage;
    }
    const std::string stem = stem_of(a.file);
    plantuml_path = stem + ".puml";
    xmi_path = stem + ".uml.xmi";
    trace_path = stem + ".trace.json";
  }
  const std::string bytes = read_input(a.file, s);
  TranslateOptions options;
  options.strict = a.strict;
  options.diagram_name = !a.name.empty() ? a.name : a.file == "-" ? "frame" : fs::path(stem_of(a.file)).filename().string();
  const auto result = frame_to_uml(parse_frame_xml(bytes), options);
  if (!plantuml_path.empty()) write_output(plantuml_path, to_plantuml(result.model), s);
  if (!xmi_path.empty()) write_output(xmi_path, to_xmi(result.model), s);
  if (!trace_path.empty()) write_output(trace_path, trace_to_json(result.trace), s);
  if (!result.warnings.empty()) print_diagnostics(result.warnings, s.err, s.json);
  return kExitOk;
}

int cmd_reverse(const std::string& file, const std::string& trace_path, const std::string& out_path, Streams& s) {
  if (file == "-" && trace_path == "-") {
    s.err << "reverse: the XMI and the trace cannot both come from stdin\n";
    return kExitUsage;
  }
  const std::string xmi = read_input(file, s);
  std::optional<TraceMap> trace;
  if (!trace_path.empty()) trace = trace_from_json(read_input(trace_path, s));
  const auto imported = read_xmi(xmi);
  const auto reversed = uml_to_frame(imported.model, trace);
  write_output(out_path, serialize_frame_xml(auto_layout(reversed.diagram)), s);
  auto warnings = imported.warnings;
  warnings.insert(warnings.end(), reversed.warnings.begin(), reversed.warnings.end());
  if (!warnings.empty()) print_diagnostics(warnings, s.err, s.json);
  return kExitOk;
}

int cmd_render(const std::string& file, std::string out_path, Streams& s) {
  if (out_path.empty()) {
    if (file == "-") {
      s.err << "render: reading stdin needs an explicit --out\n";
      return kExitUsage;
    }
    out_path = stem_of(file) + ".svg";
  }
  const auto diagram = parse_frame_xml(read_input(file, s));
  write_output(out_path, render_frame_svg(auto_layout(diagram)), s);
  return kExitOk;
}

int cmd_roundtrip(const std::string& file, Streams& s) {
  const auto diagnostics = check_round_trip(parse_frame_xml(read_input(file, s)));
  if (!diagnostics.empty() || s.json) print_diagnostics(diagnostics, s.out, s.json);
  return diagnostics.empty() ? kExitOk : kExitDiagnostics;
}

int cmd_serve(ServiceConfig config, Streams& s) {
  // A client hanging up mid-response must not take the server down.
  std::signal(SIGPIPE, SIG_IGN);
  const std::string host = config.host;
  Service service(std::move(config));
  for (const auto& w : service.store().load_warnings()) {
    s.err << w.code << '\t' << w.element << '\t' << w.message << '\n';
  }
  const int port = service.bind();
  s.out << "listening on http://" << host << ":" << port << "\n";
  s.out.flush();
  service.run();
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Streams s{in, out, err};

  CLI::App app{"frameforge: frame diagrams, UML translation and rendering", "frameforge"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", s.json, "print diagnostics as JSON");

  std::string file;
  auto* validate = app.add_subcommand("validate", "schema and semantic checks of a frame document");
  validate->add_option("file", file, "frame document, - for stdin")->required();

  bool check = false;
  auto* fmt = app.add_subcommand("fmt", "rewrite a frame document in canonical form");
  fmt->add_option("file", file, "frame document, - for stdin/stdout")->required();
  fmt->add_flag("--check", check, "only report whether the file is canonical");

  TranslateArgs targs;
  auto* translate = app.add_subcommand("translate", "frame document to PlantUML, XMI and a trace");
  translate->add_option("file", targs.file, "frame document, - for stdin")->required();
  translate->add_option("--out-plantuml", targs.plantuml, "PlantUML output path");
  translate->add_option("--out-xmi", targs.xmi, "XMI output path");
  translate->add_option("--out-trace", targs.trace, "trace JSON output path");
  translate->add_option("--name", targs.name, "diagram name recorded in the trace");
  translate->add_flag("--strict", targs.strict, "fail on unknown element kinds");

  std::string trace_path, out_path = "-";
  auto* reverse = app.add_subcommand("reverse", "XMI (plus optional trace) back to a frame document");
  reverse->add_option("xmi", file, "XMI document, - for stdin")->required();
  reverse->add_option("--trace", trace_path, "trace JSON written by translate");
  reverse->add_option("--out", out_path, "frame output path (default stdout)");

  std::string svg_path;
  auto* render = app.add_subcommand("render", "frame document to SVG, laying out missing geometry");
  render->add_option("file", file, "frame document, - for stdin")->required();
  render->add_option("--out", svg_path, "SVG output path");

  auto* roundtrip = app.add_subcommand("roundtrip", "frame -> UML -> frame and report differences");
  roundtrip->add_option("file", file, "frame document, - for stdin")->required();

  ServiceConfig config;
  if (const char* env = std::getenv("FRAMEFORGE_DATA_DIR"); env != nullptr && *env != '\0') config.data_dir = env;
  std::string data_dir = config.data_dir.string();
  auto* serve = app.add_subcommand("serve", "run the local HTTP service");
  serve->add_option("--port", config.port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--data-dir", data_dir, "document directory (env FRAMEFORGE_DATA_DIR)");
  serve->add_option("--max-body-kb", config.max_body_kb, "request body limit in KiB")->check(CLI::PositiveNumber);
  serve->add_option("--host", config.host, "bind address");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(file, s);
    if (*fmt) return cmd_fmt(file, check, s);
    if (*translate) return cmd_translate(targs, s);
    if (*reverse) return cmd_reverse(file, trace_path, out_path, s);
    if (*render) return cmd_render(file, svg_path, s);
    if (*roundtrip) return cmd_roundtrip(file, s);
    if (*serve) {
      config.data_dir = data_dir;
      return cmd_serve(std::move(config), s);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DiagnosticError& e) {
    print_diagnostics(e.diagnostics(), s.json ? out : err, s.json);
    return e.code() == codes::kStorageError ? kExitIo : kExitDiagnostics;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace frameforge
