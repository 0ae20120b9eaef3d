#pragma once

#include <functional>
#include <string>

namespace landis {

/// Non-fatal diagnostics (tail/grid mismatch, r0 rule violated, ...).
/// Default sink writes to stderr; tests install their own.
using WarningSink = std::function<void(const std::string&)>;

void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace landis
