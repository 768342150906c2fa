#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ballbody {

// Round-trippable decimal form of a double ("%.17g", with inf/nan spelled out).
std::string fmt_double(double v);

// One verified quantity in a structured report. `reference` is the externally
// known value when there is one; `computed` is what this build produced.
struct QuantityCheck {
    std::string name;
    double computed = 0.0;
    std::optional<double> reference;
    double tolerance = 0.0;
    bool pass = false;
};

// {"schema":"ballbody/1","report":<title>,"pass":...,"quantities":[...]}
std::string quantity_report_json(const std::string& title,
                                 const std::vector<QuantityCheck>& checks,
                                 bool overall_pass);

// just the [...] quantities array, for reports with extra top-level fields
std::string quantities_json(const std::vector<QuantityCheck>& checks);

// a JSON number, or a quoted string for non-finite values
std::string json_number(double v);

// Flat CSV with header name,computed,reference,tolerance,pass.
std::string quantity_report_csv(const std::vector<QuantityCheck>& checks);

bool all_pass(const std::vector<QuantityCheck>& checks);

// Minimal CSV table writer; fields are emitted verbatim, so callers must not
// put commas or newlines inside them.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_to_string(const CsvTable& table);

std::string json_escape(const std::string& s);

}  // namespace ballbody
