#pragma once

#include <string>
#include <vector>

#include "tcmap/invariants.hpp"
#include "tcmap/io.hpp"

namespace tcmap::report {

using invariants::BoundReport;
using io::json;

inline constexpr const char* tool_name = "tcmap";
inline constexpr const char* tool_version = "0.1.0";

struct ReportDocument {
    std::string command;
    std::string subject = "TC(f)";  // invariant the human chain is about
    std::vector<io::Source> inputs;
    std::vector<BoundReport> entries;
    json sections = json::object();  // command-specific data
    std::vector<std::string> lines;  // extra human-readable lines
};

json entry_json(const BoundReport& r);
json to_json(const ReportDocument& doc);

/* Pretty-printed JSON followed by a newline; key order is fixed. */
std::string render_json(const ReportDocument& doc);
std::string render_human(const ReportDocument& doc);

/* "2 = nil ker ∪|Im(f×f)* ≤ TC(f) ≤ 2 (TC(X)) [...]", from the entries about `subject`. */
std::string inequality_chain(const std::vector<BoundReport>& entries, const std::string& subject = "TC(f)");

}  // namespace tcmap::report
