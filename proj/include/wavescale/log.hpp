#pragma once

#include <string_view>

namespace wavescale {

// Warnings go to stderr unless silenced (tests and Monte-Carlo loops).
void log_warning(std::string_view message);
void set_warnings_enabled(bool enabled);
bool warnings_enabled();

}  // namespace wavescale
