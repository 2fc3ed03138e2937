#pragma once

namespace thoma {
inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "thoma-report/1";
}  // namespace thoma
