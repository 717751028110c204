#pragma once

#include <iosfwd>
#include <string>

#include "osveta/mesh.hpp"

namespace osveta {

enum class MeshFormat { OBJ, OFF };

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Parses OBJ (`v x y z`, `f i j k ...`, 1-based, `/` sub-indices ignored) or
// OFF. Polygons with more than 3 sides are fan-triangulated from the first
// vertex. Throws ParseError / MeshError.
Mesh parse_mesh(const std::string& text, MeshFormat format);

// Picks the format from the extension (.off -> OFF, everything else OBJ).
Mesh load_mesh(const std::string& path);
MeshFormat format_from_path(const std::string& path);

std::string serialize_mesh(const Mesh& mesh, MeshFormat format);
void save_mesh(const Mesh& mesh, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace osveta
