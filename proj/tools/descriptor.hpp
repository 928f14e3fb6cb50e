#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "lightlike/families.hpp"
#include "lightlike/surface.hpp"

namespace lightlike::cli {

/// A family as named on the command line.
using FamilyDescriptor = std::variant<GraphSolitonFamily, ParabolicProfile>;

/// {"kind": type_i|type_ii|type_iii|type_iv|parabolic_1|parabolic_2, "params": {...}}.
/// Omitted parameters take lambda=1, z0=0, a0=0, a1=1, b0=0, b1=1, k=0, half/branch="plus".
/// INVALID_DESCRIPTOR on malformed input, INVALID_PARAM on inadmissible values.
FamilyDescriptor parse_family(const nlohmann::json& descriptor);

/// Inline JSON, or "@path" to read it from a file.
FamilyDescriptor parse_family_arg(std::string_view arg);

nlohmann::json to_json(const FamilyDescriptor& family);
std::string family_name(const FamilyDescriptor& family);

SurfacePatch family_patch(const FamilyDescriptor& family);
bool is_graph(const FamilyDescriptor& family);

} // namespace lightlike::cli
