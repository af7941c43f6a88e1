// Minimal RFC-4180 style CSV reading/writing for the portal list and data tables.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace odaudit::csv {

// Parses quoted and unquoted fields; tolerates CRLF and a missing final newline.
std::vector<std::vector<std::string>> parse(std::string_view content);

std::string escape(std::string_view field);
std::string join_row(const std::vector<std::string> &fields);

} // namespace odaudit::csv
