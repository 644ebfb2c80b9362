#pragma once

#include <cstddef>
#include <filesystem>
#include <random>
#include <string>

#include "frameforge/frame_model.hpp"
#include "frameforge/uml_model.hpp"

// Fixtures and seeded generators shared by the unit and acceptance tests.
namespace frameforge::testing {

std::string data_path(const std::string& name);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

/// Elements 1, 2 and 4 of the reference frame, arc 4 completed as 2 -> 1.
FrameDiagram fig1();

struct DiagramShape {
  std::size_t min_elements = 0;
  std::size_t max_elements = 200;
  bool unknown_kinds = false;   // mix in unknown nodes and arcs
  double geometry_rate = 0.8;   // share of elements that get a bbox
  double description_rate = 0.3;
};

/// Random valid diagram. Without unknown kinds it is also translatable:
/// every Concept has exactly one i-arc to a Var, g-arcs are acyclic and
/// g/a arcs join Vars. Ids are sparse and document order is shuffled.
FrameDiagram random_diagram(std::mt19937& rng, const DiagramShape& shape = {});

/// Random model that passes validate_model.
uml::Model random_model(std::mt19937& rng, std::size_t max_elements = 60);

/// Random non-empty name; `line_breaks` allows \n, \r and \t.
std::string random_text(std::mt19937& rng, bool line_breaks = false);

FrameDiagram strip_geometry(const FrameDiagram& d);

/// Canonical form up to id renumbering and geometry, for isomorphism checks.
std::string shape_signature(const FrameDiagram& d);

}  // namespace frameforge::testing
