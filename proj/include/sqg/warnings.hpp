//==============================================================================
// warnings.hpp : advisory channel
//
// Non-fatal diagnostics (spectral tail mass, reality-flag violations, smallness
// gates, ...) are routed through a process-wide handler instead of being thrown.
// The default handler prints to stderr; tests install a collector.
//==============================================================================
#pragma once

#include <functional>
#include <string>

namespace sqg {

using WarningHandler = std::function<void(const std::string&)>;

// Replaces the process-wide handler; returns the previous one.
WarningHandler set_warning_handler(WarningHandler handler);

// Emits one advisory message through the current handler.
void warn(const std::string& message);

} // namespace sqg
