#include "osveta/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace osveta {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0';
}

bool parse_int(const std::string& s, long& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtol(begin, &end, 10);
  return end != begin && *end == '\0';
}

// `f` entries may carry `i/t/n` sub-indices; only the vertex index matters.
bool parse_obj_face_index(const std::string& tok, long& out) {
  std::string head = tok.substr(0, tok.find('/'));
  return parse_int(head, out);
}

void append_fan(std::vector<std::array<int, 3>>& faces,
                const std::vector<int>& poly, int line_no) {
  if (poly.size() < 3) throw ParseError(line_no, "face with fewer than 3 vertices");
  for (size_t k = 1; k + 1 < poly.size(); ++k)
    faces.push_back({poly[0], poly[static_cast<int>(k)], poly[k + 1]});
}

Mesh parse_obj(const std::string& text) {
  Mesh mesh;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    const std::string& kw = toks[0];
    if (kw == "v") {
      if (toks.size() < 4) throw ParseError(line_no, "vertex needs 3 coordinates");
      Vec3 p;
      for (int k = 0; k < 3; ++k)
        if (!parse_double(toks[k + 1], p[k]))
          throw ParseError(line_no, "bad coordinate '" + toks[k + 1] + "'");
      mesh.vertices.push_back(p);
    } else if (kw == "f") {
      std::vector<int> poly;
      for (size_t k = 1; k < toks.size(); ++k) {
        long idx = 0;
        if (!parse_obj_face_index(toks[k], idx))
          throw ParseError(line_no, "bad face index '" + toks[k] + "'");
        if (idx < 1 || idx > static_cast<long>(mesh.vertices.size()))
          throw ParseError(line_no, "face index " + std::to_string(idx) +
                                        " out of range (vertex count " +
                                        std::to_string(mesh.vertices.size()) + ")");
        poly.push_back(static_cast<int>(idx - 1));
      }
      append_fan(mesh.faces, poly, line_no);
    }
    // vn/vt/o/g/s/usemtl/mtllib and anything else: ignored.
  }
  return mesh;
}

Mesh parse_off(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  auto next_content_line = [&](const char* expect) -> std::vector<std::string> {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto toks = split_ws(line);
      if (toks.empty() || toks[0][0] == '#') continue;
      return toks;
    }
    throw ParseError(line_no, std::string("unexpected end of file, expected ") + expect);
  };

  auto header = next_content_line("OFF header");
  if (header[0] != "OFF")
    throw ParseError(line_no, "expected OFF header, got '" + header[0] + "'");

  std::vector<std::string> counts;
  if (header.size() > 1) {
    counts.assign(header.begin() + 1, header.end());  // counts on header line
  } else {
    counts = next_content_line("counts line");
  }
  long nv = 0, nf = 0;
  if (counts.size() < 2 || !parse_int(counts[0], nv) || !parse_int(counts[1], nf))
    throw ParseError(line_no, "bad counts line");
  if (nv < 0 || nf < 0) throw ParseError(line_no, "negative counts");

  Mesh mesh;
  mesh.vertices.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    auto toks = next_content_line("vertex line");
    if (toks.size() < 3) throw ParseError(line_no, "vertex needs 3 coordinates");
    Vec3 p;
    for (int k = 0; k < 3; ++k)
      if (!parse_double(toks[k], p[k]))
        throw ParseError(line_no, "bad coordinate '" + toks[k] + "'");
    mesh.vertices.push_back(p);
  }
  for (long i = 0; i < nf; ++i) {
    auto toks = next_content_line("face line");
    long arity = 0;
    if (!parse_int(toks[0], arity) || arity < 3)
      throw ParseError(line_no, "bad face arity");
    if (static_cast<long>(toks.size()) < arity + 1)
      throw ParseError(line_no, "face line shorter than its arity");
    std::vector<int> poly;
    for (long k = 0; k < arity; ++k) {
      long idx = 0;
      if (!parse_int(toks[k + 1], idx))
        throw ParseError(line_no, "bad face index '" + toks[k + 1] + "'");
      if (idx < 0 || idx >= nv)
        throw ParseError(line_no, "face index " + std::to_string(idx) +
                                      " out of range (vertex count " +
                                      std::to_string(nv) + ")");
      poly.push_back(static_cast<int>(idx));
    }
    append_fan(mesh.faces, poly, line_no);
  }
  return mesh;
}

}  // namespace

Mesh parse_mesh(const std::string& text, MeshFormat format) {
  Mesh mesh = format == MeshFormat::OBJ ? parse_obj(text) : parse_off(text);
  if (mesh.vertices.empty()) throw MeshError("mesh has no vertices");
  if (mesh.faces.empty()) throw MeshError("mesh has no faces");
  mesh.validate();
  return mesh;
}

MeshFormat format_from_path(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == "off") return MeshFormat::OFF;
  }
  return MeshFormat::OBJ;
}

Mesh load_mesh(const std::string& path) {
  return parse_mesh(read_file(path), format_from_path(path));
}

std::string serialize_mesh(const Mesh& mesh, MeshFormat format) {
  std::string out;
  out.reserve(mesh.vertices.size() * 48 + mesh.faces.size() * 24);
  char buf[160];
  if (format == MeshFormat::OBJ) {
    for (const auto& v : mesh.vertices) {
      std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
      out += buf;
    }
    for (const auto& f : mesh.faces) {
      std::snprintf(buf, sizeof(buf), "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
      out += buf;
    }
  } else {
    out += "OFF\n";
    std::snprintf(buf, sizeof(buf), "%zu %zu 0\n", mesh.vertices.size(),
                  mesh.faces.size());
    out += buf;
    for (const auto& v : mesh.vertices) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
      out += buf;
    }
    for (const auto& f : mesh.faces) {
      std::snprintf(buf, sizeof(buf), "3 %d %d %d\n", f[0], f[1], f[2]);
      out += buf;
    }
  }
  return out;
}

void save_mesh(const Mesh& mesh, const std::string& path) {
  write_file(path, serialize_mesh(mesh, format_from_path(path)));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MeshError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MeshError("cannot write file: " + path);
  out << contents;
}

}  // namespace osveta
