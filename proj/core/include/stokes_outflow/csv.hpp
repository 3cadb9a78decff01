#pragma once

#include <string>

namespace stokes_outflow {

/// Shortest round-trip decimal representation of x.
std::string fmt_double(double x);

/// Writes text to path, creating parent directories. Throws on I/O failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace stokes_outflow
