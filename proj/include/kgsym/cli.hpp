#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "kgsym/report.hpp"

namespace kgsym {

enum class ReportFormat { Table, Records };

// Aligned human table, or one JSON object per line.
void write_report(std::ostream& out, const Report& r, ReportFormat fmt);

// Splits a comma-separated list at top level, ignoring commas inside
// parentheses or brackets.
std::vector<std::string> split_top_level(std::string_view s);

// Runs one command line. Exit status: 0 when no check fails, 1 when some
// check fails, 2 on usage, parse or data errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kgsym
