#include "qhkit/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qhkit/errors.hpp"

namespace qhkit {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_cell(const nlohmann::json& v) {
    if (v.is_null()) return "";
    if (v.is_number_float()) return fmt(v.get<double>());
    if (v.is_number()) return v.dump();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

bool all_true(const std::map<std::string, bool>& m) {
    for (const auto& [k, v] : m)
        if (!v) return false;
    return true;
}

}  // namespace

bool CheckReport::passed() const { return all_true(verdicts); }
bool ExperimentResult::passed() const { return all_true(verdicts); }

nlohmann::json witness_to_json(const Witness& w) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : w.points) {
        nlohmann::json c = nlohmann::json::array();
        for (int i = 0; i < p.dim(); ++i) c.push_back(p[i]);
        pts.push_back(c);
    }
    return {{"label", w.label}, {"points", pts}, {"value", w.value}};
}

nlohmann::json report_to_json(const CheckReport& r) {
    nlohmann::json j;
    j["check"] = r.check;
    j["constants"] = r.constants;
    j["verdicts"] = r.verdicts;
    j["passed"] = r.passed();
    j["gauges"] = nlohmann::json::object();
    for (const auto& [k, g] : r.gauges) j["gauges"][k] = gauge_to_json(g);
    j["witnesses"] = nlohmann::json::array();
    for (const auto& w : r.witnesses) j["witnesses"].push_back(witness_to_json(w));
    j["manifest"] = r.manifest;
    return j;
}

nlohmann::json result_to_json(const ExperimentResult& r) {
    nlohmann::json j;
    j["experiment"] = r.name;
    j["columns"] = r.columns;
    j["rows"] = r.rows;
    j["verdicts"] = r.verdicts;
    j["summary"] = r.summary;
    j["passed"] = r.passed();
    j["manifest"] = r.manifest;
    return j;
}

std::string rows_to_csv(const std::vector<std::string>& columns, const std::vector<nlohmann::json>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) os << ',';
            if (row.contains(columns[i])) os << csv_cell(row[columns[i]]);
        }
        os << '\n';
    }
    return os.str();
}

std::string witnesses_to_csv(const std::vector<Witness>& witnesses) {
    std::ostringstream os;
    os << "label,value,points\n";
    for (const auto& w : witnesses) {
        std::string pts;
        for (const auto& p : w.points) pts += (pts.empty() ? "" : " ") + p.str();
        os << csv_cell(w.label) << ',' << fmt(w.value) << ',' << csv_cell(pts) << '\n';
    }
    return os.str();
}

void write_text(const std::string& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error("cannot open " + file + " for writing");
    out << text;
    if (!out) throw Error("failed writing " + file);
}

}  // namespace qhkit
