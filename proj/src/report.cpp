#include "tcmap/report.hpp"

#include <optional>
#include <sstream>

namespace tcmap::report {

namespace {

std::string value_text(const std::optional<int>& v) { return v ? std::to_string(*v) : "unknown"; }

const char* relation(invariants::BoundKind k)
{
    switch (k) {
    case invariants::BoundKind::Lower: return ">=";
    case invariants::BoundKind::Upper: return "<=";
    case invariants::BoundKind::Exact: return "=";
    case invariants::BoundKind::Certificate: return ":";
    }
    return "?";
}

void render_section(std::ostringstream& os, const json& j, const std::string& indent)
{
    for (const auto& [key, val] : j.items()) {
        if (val.is_object()) {
            os << indent << key << ":\n";
            render_section(os, val, indent + "  ");
        } else if (val.is_array() && !val.empty() && val.front().is_object()) {
            os << indent << key << ":\n";
            for (const auto& item : val) {
                os << indent << "  -\n";
                render_section(os, item, indent + "    ");
            }
        } else {
            os << indent << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
        }
    }
}

}  // namespace

json entry_json(const BoundReport& r)
{
    json e = json::object();
    e["invariant"] = r.invariant;
    e["kind"] = invariants::to_string(r.kind);
    e["value"] = r.value ? json(*r.value) : json(nullptr);
    e["citation"] = r.citation;
    e["inputs"] = r.inputs;
    if (!r.note.empty())
        e["note"] = r.note;
    return e;
}

json to_json(const ReportDocument& doc)
{
    json out = json::object();
    out["tool"] = tool_name;
    out["version"] = tool_version;
    out["command"] = doc.command;
    json inputs = json::array();
    for (const auto& s : doc.inputs)
        inputs.push_back({{"uri", s.uri}, {"sha256", s.digest}});
    out["inputs"] = std::move(inputs);
    json entries = json::array();
    for (const auto& r : doc.entries)
        entries.push_back(entry_json(r));
    out["entries"] = std::move(entries);
    for (const auto& [key, val] : doc.sections.items())
        out[key] = val;
    return out;
}

std::string render_json(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

std::string render_human(const ReportDocument& doc)
{
    std::ostringstream os;
    os << tool_name << " " << tool_version << " " << doc.command << "\n";
    for (const auto& s : doc.inputs)
        os << "input " << s.uri << " sha256:" << s.digest.substr(0, 16) << "\n";
    for (const auto& r : doc.entries) {
        os << "  [" << invariants::to_string(r.kind) << "] " << r.invariant;
        if (r.kind != invariants::BoundKind::Certificate || r.value)
            os << " " << relation(r.kind) << " " << value_text(r.value);
        os << "   (" << r.citation << ")";
        if (!r.note.empty())
            os << "\n      " << r.note;
        os << "\n";
    }
    if (!doc.entries.empty()) {
        const std::string chain = inequality_chain(doc.entries, doc.subject);
        if (!chain.empty())
            os << chain << "\n";
    }
    render_section(os, doc.sections, "");
    for (const auto& l : doc.lines)
        os << l << "\n";
    return os.str();
}

std::string inequality_chain(const std::vector<BoundReport>& entries, const std::string& subject)
{
    using invariants::BoundKind;
    std::optional<int> zd, lower, upper, exact;
    std::string upper_cite, exact_cite, zd_label;
    for (const auto& r : entries) {
        if (!r.value)
            continue;
        if (r.invariant == "nil ker(cup)|Im(f×f)*" || r.invariant == "nil ker(cup)") {
            zd = r.value;
            zd_label = r.invariant == "nil ker(cup)" ? "nil ker ∪" : "nil ker ∪|Im(f×f)*";
        }
        if (r.invariant != subject)
            continue;
        if (r.kind == BoundKind::Lower && (!lower || *r.value > *lower))
            lower = r.value;
        if (r.kind == BoundKind::Upper && (!upper || *r.value < *upper)) {
            upper = r.value;
            upper_cite = r.citation;
        }
        if (r.kind == BoundKind::Exact) {
            exact = r.value;
            exact_cite = r.citation;
        }
    }
    std::string s;
    if (zd)
        s = std::to_string(*zd) + " = " + zd_label + " ≤ ";
    if (lower && (!zd || *lower > *zd))
        s += std::to_string(*lower) + " ≤ ";
    if (s.empty() && exact)
        return subject + " = " + std::to_string(*exact) + " [" + exact_cite + "]";
    if (s.empty() && !upper)
        return "";
    s += subject;
    if (upper)
        s += " ≤ " + std::to_string(*upper);
    if (exact)
        s += ", hence " + subject + " = " + std::to_string(*exact) + " [" + exact_cite + "]";
    else if (upper)
        s += " [" + upper_cite + "]";
    return s;
}

}  // namespace tcmap::report
