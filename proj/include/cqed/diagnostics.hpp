#pragma once

#include <functional>
#include <string_view>

namespace cqed {

using WarningHandler = std::function<void(std::string_view)>;

// Warnings are routed through one process-wide handler (stderr by default).
// Installing a handler returns the previous one so tests can restore it.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

} // namespace cqed
