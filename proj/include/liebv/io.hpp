#pragma once

#include <string>

#include "liebv/glie.hpp"
#include "liebv/report.hpp"

namespace liebv {

// AlgebraFile JSON: 1-based indices, rationals as "p/q" strings.
// Throws ParseError on malformed input.
Bialgebra parse_algebra(const std::string& text);
Bialgebra load_algebra(const std::string& path);
// Canonical form: sorted entries, two-space indent, trailing newline.
std::string emit_algebra(const Bialgebra& b);
// SHA-256 of the canonical compact serialization.
std::string fingerprint(const Bialgebra& b);

std::string version_string();
std::string report_json(const Report& r, const std::string& fingerprint);
std::string report_text(const Report& r, const std::string& fingerprint);

}  // namespace liebv
