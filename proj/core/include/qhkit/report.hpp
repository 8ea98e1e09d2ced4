#pragma once
/**
 * @file report.hpp
 * @brief Result records of checkers and experiments, and their JSON/CSV form.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhkit/gauge.hpp"
#include "qhkit/point.hpp"

namespace qhkit {

struct Witness {
    std::string label;
    std::vector<Point> points;
    double value = 0.0;  ///< the quantity that made this sample the worst one
};

struct CheckReport {
    std::string check;
    std::map<std::string, double> constants;
    std::map<std::string, EmpiricalGauge> gauges;
    std::map<std::string, bool> verdicts;
    std::vector<Witness> witnesses;
    nlohmann::json manifest = nlohmann::json::object();  ///< seeds, levels, sample sizes

    bool passed() const;
};

struct ExperimentResult {
    std::string name;
    std::vector<std::string> columns;
    std::vector<nlohmann::json> rows;  ///< objects keyed by column name
    std::map<std::string, bool> verdicts;
    std::map<std::string, double> summary;
    nlohmann::json manifest = nlohmann::json::object();

    bool passed() const;
};

nlohmann::json witness_to_json(const Witness& w);
nlohmann::json report_to_json(const CheckReport& r);
nlohmann::json result_to_json(const ExperimentResult& r);

/// Rows as CSV with a header; doubles are written with 17 significant digits.
std::string rows_to_csv(const std::vector<std::string>& columns, const std::vector<nlohmann::json>& rows);
std::string witnesses_to_csv(const std::vector<Witness>& witnesses);

void write_text(const std::string& file, const std::string& text);

}  // namespace qhkit
