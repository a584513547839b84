#include "symdet/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "symdet/error.hpp"

namespace symdet {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line_no, line);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

bool is_data_line(std::string_view line) {
  line = trim(line);
  return !line.empty() && line.front() != '#';
}

template <class Fn>
auto with_context(const std::string& source, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const GeometryError& e) {
    throw GeometryError(source + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view format_name(ShapeFormat format) {
  switch (format) {
    case ShapeFormat::CsvPoints2d: return "csv-points2d";
    case ShapeFormat::CsvPoints3d: return "csv-points3d";
    case ShapeFormat::JsonShape: return "json-shape";
    case ShapeFormat::ObjMesh: return "obj-mesh";
    case ShapeFormat::PgmRaster: return "pgm-raster";
  }
  return "?";
}

ShapeFormat parse_format(std::string_view name) {
  for (auto f : {ShapeFormat::CsvPoints2d, ShapeFormat::CsvPoints3d, ShapeFormat::JsonShape, ShapeFormat::ObjMesh,
                 ShapeFormat::PgmRaster})
    if (format_name(f) == name) return f;
  throw InputError("unknown format '" + std::string(name) + "'");
}

ShapeFormat infer_format(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".json") return ShapeFormat::JsonShape;
  if (ext == ".obj") return ShapeFormat::ObjMesh;
  if (ext == ".pgm") return ShapeFormat::PgmRaster;
  if (ext == ".csv" || ext == ".txt") {
    const std::string text = read_file(path);
    std::optional<std::size_t> columns;
    for_each_line(text, [&](std::size_t, std::string_view line) {
      if (columns || !is_data_line(line)) return;
      const auto fields = split_fields(line);
      if (to_double(fields.front())) columns = fields.size();
    });
    if (!columns) throw InputError("'" + path.string() + "': no numeric records to infer a format from");
    if (*columns == 2) return ShapeFormat::CsvPoints2d;
    if (*columns == 3 || *columns == 4) return ShapeFormat::CsvPoints3d;
    throw InputError("'" + path.string() + "': cannot infer a format from " + std::to_string(*columns) + " columns");
  }
  throw InputError("'" + path.string() + "': cannot infer a format from extension '" + ext + "'");
}

Shape parse_csv_points(std::string_view text, int dim, const std::string& source) {
  std::vector<double> coords, weights;
  bool header_allowed = true;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (!is_data_line(line)) return;
    const auto fields = split_fields(line);
    const bool numeric = std::all_of(fields.begin(), fields.end(), [](auto f) { return to_double(f).has_value(); });
    if (!numeric && header_allowed) {
      header_allowed = false;
      return;
    }
    header_allowed = false;
    if (fields.size() != static_cast<std::size_t>(dim) && fields.size() != static_cast<std::size_t>(dim + 1))
      throw ParseError(source, line_no,
                       "expected " + std::to_string(dim) + " or " + std::to_string(dim + 1) + " fields, got " +
                           std::to_string(fields.size()));
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto v = to_double(fields[i]);
      if (!v) throw ParseError(source, line_no, "not a finite number: '" + std::string(fields[i]) + "'");
      if (static_cast<int>(i) < dim) coords.push_back(*v);
    }
    const double w = fields.size() == static_cast<std::size_t>(dim + 1) ? *to_double(fields.back()) : 1.0;
    if (w < 0) throw ParseError(source, line_no, "negative weight");
    weights.push_back(w);
  });
  const Eigen::Index n = static_cast<Eigen::Index>(weights.size());
  const Eigen::VectorXd w = Eigen::Map<Eigen::VectorXd>(weights.data(), n);
  return with_context(source, [&]() -> Shape {
    if (dim == 2) return make_points2(Eigen::Map<Eigen::Matrix2Xd>(coords.data(), 2, n), w);
    return make_points3(Eigen::Map<Eigen::Matrix3Xd>(coords.data(), 3, n), w);
  });
}

Shape parse_json_shape(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  auto fail = [&](const std::string& what) -> ParseError { return ParseError(source, 1, what); };
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) throw fail("expected an object with a string 'kind'");
  const std::string kind = doc["kind"];
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) throw fail("missing 'vertices' array");
  const int dim = kind == "points3d" || kind == "mesh3d" ? 3 : 2;
  if (kind != "polygon2d" && kind != "points2d" && kind != "points3d" && kind != "mesh3d")
    throw fail("unknown kind '" + kind + "'");
  const json& vs = doc["vertices"];
  Eigen::MatrixXd v(dim, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!vs[i].is_array() || vs[i].size() != static_cast<std::size_t>(dim))
      throw fail("vertex " + std::to_string(i) + " must have " + std::to_string(dim) + " coordinates");
    for (int d = 0; d < dim; ++d) {
      if (!vs[i][static_cast<std::size_t>(d)].is_number()) throw fail("vertex " + std::to_string(i) + " is not numeric");
      v(d, static_cast<Eigen::Index>(i)) = vs[i][static_cast<std::size_t>(d)].get<double>();
    }
  }
  if (!v.allFinite()) throw fail("non-finite vertex coordinate");
  Eigen::VectorXd w;
  if (doc.contains("weights")) {
    const json& ws = doc["weights"];
    if (!ws.is_array() || ws.size() != vs.size()) throw fail("'weights' must match 'vertices' in length");
    w.resize(static_cast<Eigen::Index>(ws.size()));
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (!ws[i].is_number()) throw fail("weight " + std::to_string(i) + " is not numeric");
      w(static_cast<Eigen::Index>(i)) = ws[i].get<double>();
    }
  }
  return with_context(source, [&]() -> Shape {
    if (kind == "polygon2d") return make_polygon(v);
    if (kind == "points2d") return make_points2(v, w);
    if (kind == "points3d") return make_points3(v, w);
    if (!doc.contains("faces") || !doc["faces"].is_array()) throw fail("mesh3d needs a 'faces' array");
    const json& fs = doc["faces"];
    Eigen::Matrix3Xi f(3, static_cast<Eigen::Index>(fs.size()));
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (!fs[i].is_array() || fs[i].size() != 3) throw fail("face " + std::to_string(i) + " must have 3 indices");
      for (int d = 0; d < 3; ++d) {
        if (!fs[i][static_cast<std::size_t>(d)].is_number_integer()) throw fail("face index is not an integer");
        f(d, static_cast<Eigen::Index>(i)) = fs[i][static_cast<std::size_t>(d)].get<int>();
      }
    }
    return make_mesh(v, f);
  });
}

TriMesh parse_obj(std::string_view text, const std::string& source) {
  std::vector<double> verts;
  std::vector<int> faces;
  std::vector<int> face_lines;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    std::istringstream in{std::string(trim(line))};
    std::string tag;
    if (!(in >> tag)) return;
    if (tag == "v") {
      std::string tok;
      for (int i = 0; i < 3; ++i) {
        if (!(in >> tok)) throw ParseError(source, line_no, "vertex needs 3 coordinates");
        const auto x = to_double(tok);
        if (!x) throw ParseError(source, line_no, "not a finite number: '" + tok + "'");
        verts.push_back(*x);
      }
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (in >> tok) {
        const std::string head = tok.substr(0, tok.find('/'));
        int k = 0;
        const auto [end, ec] = std::from_chars(head.data(), head.data() + head.size(), k);
        if (ec != std::errc() || end != head.data() + head.size() || k == 0)
          throw ParseError(source, line_no, "bad face index '" + tok + "'");
        const int count = static_cast<int>(verts.size() / 3);
        idx.push_back(k > 0 ? k - 1 : count + k);
      }
      if (idx.size() != 3) throw ParseError(source, line_no, "only triangular faces are supported");
      faces.insert(faces.end(), idx.begin(), idx.end());
      face_lines.push_back(line_no);
    }
  });
  const int count = static_cast<int>(verts.size() / 3);
  for (std::size_t f = 0; f < face_lines.size(); ++f)
    for (std::size_t d = 0; d < 3; ++d)
      if (faces[3 * f + d] < 0 || faces[3 * f + d] >= count)
        throw ParseError(source, face_lines[f], "face index out of range");
  const Eigen::Index nv = static_cast<Eigen::Index>(verts.size() / 3), nf = static_cast<Eigen::Index>(faces.size() / 3);
  return with_context(source, [&] {
    return make_mesh(Eigen::Map<Eigen::Matrix3Xd>(verts.data(), 3, nv), Eigen::Map<Eigen::Matrix3Xi>(faces.data(), 3, nf));
  });
}

Raster parse_pgm(std::string_view text, const std::string& source) {
  std::vector<std::pair<std::string, std::size_t>> tokens;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    line = line.substr(0, std::min(line.find('#'), line.size()));
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) tokens.emplace_back(tok, line_no);
  });
  if (tokens.empty() || tokens[0].first != "P2") throw ParseError(source, 1, "expected ASCII PGM magic 'P2'");
  std::size_t next = 1;
  auto integer = [&](const char* what) {
    if (next >= tokens.size())
      throw ParseError(source, tokens.back().second, std::string("unexpected end of file reading ") + what);
    const auto& [tok, line_no] = tokens[next++];
    long v = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size() || v < 0)
      throw ParseError(source, line_no, std::string("bad ") + what + " '" + tok + "'");
    return v;
  };
  const long width = integer("width"), height = integer("height"), maxval = integer("maxval");
  if (width <= 0 || height <= 0 || maxval <= 0) throw ParseError(source, tokens[0].second, "empty image or zero maxval");
  Eigen::MatrixXd mass(height, width);
  for (long r = 0; r < height; ++r)
    for (long c = 0; c < width; ++c) {
      const long v = integer("pixel");
      if (v > maxval) throw ParseError(source, tokens[next - 1].second, "pixel exceeds maxval");
      mass(height - 1 - r, c) = static_cast<double>(v);
    }
  if (next != tokens.size()) throw ParseError(source, tokens[next].second, "trailing data after pixels");
  return with_context(source, [&] { return make_raster(mass); });
}

Shape load_shape(const std::filesystem::path& path, std::optional<ShapeFormat> format) {
  const ShapeFormat f = format ? *format : infer_format(path);
  const std::string text = read_file(path);
  const std::string source = path.string();
  switch (f) {
    case ShapeFormat::CsvPoints2d: return parse_csv_points(text, 2, source);
    case ShapeFormat::CsvPoints3d: return parse_csv_points(text, 3, source);
    case ShapeFormat::JsonShape: return parse_json_shape(text, source);
    case ShapeFormat::ObjMesh: return parse_obj(text, source);
    case ShapeFormat::PgmRaster: return parse_pgm(text, source);
  }
  throw InputError("unsupported format");
}

nlohmann::json shape_to_json(const Shape& shape) {
  json out;
  out["kind"] = std::string(kind_name(shape));
  auto columns = [](const Eigen::MatrixXd& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
      json col = json::array();
      for (Eigen::Index d = 0; d < m.rows(); ++d) col.push_back(m(d, i));
      a.push_back(col);
    }
    return a;
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          out["vertices"] = columns(s.vertices);
        } else if constexpr (std::is_same_v<T, TriMesh>) {
          out["vertices"] = columns(s.vertices);
          json faces = json::array();
          for (Eigen::Index f = 0; f < s.faces.cols(); ++f) faces.push_back({s.faces(0, f), s.faces(1, f), s.faces(2, f)});
          out["faces"] = faces;
        } else if constexpr (std::is_same_v<T, Raster>) {
          const PointSet2 p = to_points(s);
          out["kind"] = "points2d";
          out["vertices"] = columns(p.points);
          out["weights"] = std::vector<double>(p.weights.data(), p.weights.data() + p.weights.size());
        } else {
          out["vertices"] = columns(s.points);
          out["weights"] = std::vector<double>(s.weights.data(), s.weights.data() + s.weights.size());
        }
      },
      shape);
  return out;
}

std::string mesh_to_obj(const TriMesh& mesh) {
  std::string out;
  for (Eigen::Index i = 0; i < mesh.vertices.cols(); ++i)
    out += "v " + fmt17(mesh.vertices(0, i)) + ' ' + fmt17(mesh.vertices(1, i)) + ' ' + fmt17(mesh.vertices(2, i)) + '\n';
  for (Eigen::Index f = 0; f < mesh.faces.cols(); ++f)
    out += "f " + std::to_string(mesh.faces(0, f) + 1) + ' ' + std::to_string(mesh.faces(1, f) + 1) + ' ' +
           std::to_string(mesh.faces(2, f) + 1) + '\n';
  return out;
}

void save_shape(const Shape& shape, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  const auto* mesh = std::get_if<TriMesh>(&shape);
  if (mesh && lower(path.extension().string()) == ".obj")
    out << mesh_to_obj(*mesh);
  else
    out << shape_to_json(shape).dump(2) << '\n';
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

nlohmann::json moments_to_json(const MomentTensor& mu) {
  json out;
  out["dimension"] = mu.dimension();
  out["order"] = mu.max_order();
  out["about"] = mu.about() == MomentFrame::Centroid ? "centroid" : "origin";
  json values = json::object();
  for (const auto& e : mu.exponents()) {
    std::string key;
    for (int d = 0; d < mu.dimension(); ++d) key += (d ? "," : "") + std::to_string(e[static_cast<std::size_t>(d)]);
    values[key] = mu[e];
  }
  out["values"] = values;
  return out;
}

}  // namespace symdet
