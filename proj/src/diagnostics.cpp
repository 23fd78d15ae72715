#include "cqed/diagnostics.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace cqed {
namespace {

std::mutex& handler_mutex()
{
    static std::mutex m;
    return m;
}

WarningHandler& handler_slot()
{
    static WarningHandler h = [](std::string_view msg) {
        std::cerr << "warning: " << msg << '\n';
    };
    return h;
}

} // namespace

WarningHandler set_warning_handler(WarningHandler handler)
{
    std::lock_guard lock(handler_mutex());
    return std::exchange(handler_slot(), std::move(handler));
}

void warn(std::string_view message)
{
    std::lock_guard lock(handler_mutex());
    if (handler_slot()) handler_slot()(message);
}

} // namespace cqed
