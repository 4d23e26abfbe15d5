#pragma once

#include <string>

#include "reflab/errors.hpp"

namespace reflab {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trippable decimal form of a double (17 significant digits).
std::string fmt_g17(double x);

/// Whole file as a string; throws BadInput when unreadable.
std::string read_file(const std::string& path);

/// Write (truncate) a file; throws BadInput on failure.
void write_file(const std::string& path, const std::string& text);

} // namespace reflab
