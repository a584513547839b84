#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "symdet/moments.hpp"
#include "symdet/shapes.hpp"

namespace symdet {

enum class ShapeFormat { CsvPoints2d, CsvPoints3d, JsonShape, ObjMesh, PgmRaster };

std::string_view format_name(ShapeFormat format);
/// Accepts the names printed by format_name; throws InputError otherwise.
ShapeFormat parse_format(std::string_view name);

/// From the extension; .csv/.txt look at the column count of the first record
/// (2 -> points2d, 3 or 4 -> points3d).
ShapeFormat infer_format(const std::filesystem::path& path);

/// Reads and validates a shape. Parse errors carry file:line; geometry errors the file name.
Shape load_shape(const std::filesystem::path& path, std::optional<ShapeFormat> format = std::nullopt);

Shape parse_csv_points(std::string_view text, int dim, const std::string& source = "<string>");
Shape parse_json_shape(std::string_view text, const std::string& source = "<string>");
TriMesh parse_obj(std::string_view text, const std::string& source = "<string>");
Raster parse_pgm(std::string_view text, const std::string& source = "<string>");

nlohmann::json shape_to_json(const Shape& shape);
std::string mesh_to_obj(const TriMesh& mesh);
/// Meshes to .obj when the extension says so, everything else as json-shape.
void save_shape(const Shape& shape, const std::filesystem::path& path);

nlohmann::json moments_to_json(const MomentTensor& mu);

}  // namespace symdet
