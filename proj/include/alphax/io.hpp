#pragma once

#include <string>
#include <utility>
#include <vector>

#include "alphax/real.hpp"

namespace alphax {

inline constexpr const char* kVersion = "0.1.0";

// Decimal rendering used for all emitted values; sig <= 0 picks the full
// width the precision supports.
std::string format_real(const Real& v, int sig);

// key,value table (with header row).
std::string csv_kv(const std::vector<std::pair<std::string, std::string>>& rows);

// General columnar table (header + rows), one line per row.
std::string csv_columns(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows);

// Write to the given path, or to stdout when the path is empty.
void write_output(const std::string& text, const std::string& path);

} // namespace alphax
