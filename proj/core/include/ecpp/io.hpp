#pragma once

#include <string>

namespace ecpp {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

/// Locale-independent strict parse; throws on trailing garbage.
double parse_double(const std::string& s);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ecpp
