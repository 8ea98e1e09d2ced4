#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qhkit {

inline constexpr std::size_t kGaugeBins = 32;

/// Binned supremum of a response against an argument t, with its non-decreasing
/// upper envelope. Bins are logarithmic over the observed range of t > 0.
struct EmpiricalGauge {
    std::vector<double> bins;                      ///< breakpoints, size = bin count + 1
    std::vector<std::optional<double>> sup_values;  ///< empty when no sample fell in the bin
    std::vector<double> monotone_envelope;
    std::vector<std::size_t> counts;

    std::size_t size() const { return sup_values.size(); }
    /// Envelope value of the bin containing t (clamped to the observed range).
    double envelope_at(double t) const;
    /// Index of the first populated bin, if any.
    std::optional<std::size_t> first_populated() const;
};

EmpiricalGauge build_gauge(const std::vector<std::pair<double, double>>& samples, std::size_t nbins = kGaugeBins);

nlohmann::json gauge_to_json(const EmpiricalGauge& g);

}  // namespace qhkit
