//==============================================================================
// warnings.cpp : advisory channel
//==============================================================================
#include "sqg/warnings.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace sqg {
namespace {

std::mutex g_mutex;
WarningHandler g_handler; // empty -> default stderr sink

} // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard<std::mutex> lock(g_mutex);
    std::swap(g_handler, handler);
    return handler;
}

void warn(const std::string& message) {
    WarningHandler h;
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        h = g_handler;
    }
    if (h)
        h(message);
    else
        std::cerr << "advisory: " << message << "\n";
}

} // namespace sqg
