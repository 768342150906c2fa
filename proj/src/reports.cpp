#include "ballbody/reports.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ballbody {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

bool all_pass(const std::vector<QuantityCheck>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

// JSON numbers have no inf/nan, so non-finite values are serialized as strings.
std::string json_number(double v) {
    if (std::isfinite(v)) return fmt_double(v);
    return "\"" + fmt_double(v) + "\"";
}

std::string quantities_json(const std::vector<QuantityCheck>& checks) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        if (i) os << ',';
        os << "{\"name\":\"" << json_escape(c.name) << "\",\"computed\":" << json_number(c.computed)
           << ",\"reference\":";
        if (c.reference)
            os << json_number(*c.reference);
        else
            os << "null";
        os << ",\"tolerance\":" << json_number(c.tolerance)
           << ",\"pass\":" << (c.pass ? "true" : "false") << '}';
    }
    os << ']';
    return os.str();
}

std::string quantity_report_json(const std::string& title,
                                 const std::vector<QuantityCheck>& checks,
                                 bool overall_pass) {
    std::ostringstream os;
    os << "{\"schema\":\"ballbody/1\",\"report\":\"" << json_escape(title)
       << "\",\"pass\":" << (overall_pass ? "true" : "false")
       << ",\"quantities\":" << quantities_json(checks) << "}\n";
    return os.str();
}

std::string quantity_report_csv(const std::vector<QuantityCheck>& checks) {
    CsvTable t;
    t.header = {"name", "computed", "reference", "tolerance", "pass"};
    for (const auto& c : checks) {
        t.rows.push_back({c.name, fmt_double(c.computed),
                          c.reference ? fmt_double(*c.reference) : "",
                          fmt_double(c.tolerance), c.pass ? "1" : "0"});
    }
    return csv_to_string(t);
}

std::string csv_to_string(const CsvTable& table) {
    std::ostringstream os;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) os << ',';
        os << table.header[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace ballbody
