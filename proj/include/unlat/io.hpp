#pragma once

// JSON forms of tags and element literals, plus a deterministic JSON writer
// (insertion-ordered keys, doubles printed with 17 significant digits).

#include <string>
#include <string_view>

#include <json.hpp>

#include "unlat/lattice.hpp"

namespace unlat {

using Json = nlohmann::ordered_json;

/// Parses "c0", "linf", "l<p>", "L<p>" (Lebesgue step space) or "l1+linf".
/// Throws ValidationError.
SpaceTag parse_tag(std::string_view name);

/// {"tag": "l2", "coords": {"3": 0.25}}
/// {"tag": "L1", "level": 2, "values": [...], "weights": [...]}   (weights optional)
/// {"tag": "l1+linf", "left": {...}, "right": {...}}
Json element_to_json(const Element& x);
/// Throws ValidationError on malformed literals or unknown fields.
Element element_from_json(const Json& j);

/// Serialises with %.17g doubles; indent < 0 gives a single line.
std::string dump_json(const Json& j, int indent = 2);

/// %.17g
std::string format_double(double v);

}  // namespace unlat
