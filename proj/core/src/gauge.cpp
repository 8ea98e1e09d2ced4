#include "qhkit/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhkit/errors.hpp"

namespace qhkit {

double EmpiricalGauge::envelope_at(double t) const {
    if (monotone_envelope.empty()) return std::numeric_limits<double>::quiet_NaN();
    const auto it = std::upper_bound(bins.begin() + 1, bins.end() - 1, t);
    return monotone_envelope[static_cast<std::size_t>(it - (bins.begin() + 1))];
}

std::optional<std::size_t> EmpiricalGauge::first_populated() const {
    for (std::size_t i = 0; i < sup_values.size(); ++i)
        if (sup_values[i]) return i;
    return std::nullopt;
}

EmpiricalGauge build_gauge(const std::vector<std::pair<double, double>>& samples, std::size_t nbins) {
    if (nbins < 1) throw ValidationError("/bins", "must be at least 1");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& [t, v] : samples) {
        if (!(t > 0.0) || !std::isfinite(t) || !std::isfinite(v)) continue;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    EmpiricalGauge g;
    if (!(hi > 0.0)) return g;
    if (lo == hi) {
        lo *= 0.999;
        hi *= 1.001;
    }
    const double span = std::log(hi / lo);
    g.bins.resize(nbins + 1);
    for (std::size_t i = 0; i <= nbins; ++i) g.bins[i] = lo * std::exp(span * static_cast<double>(i) / static_cast<double>(nbins));
    g.bins.front() = lo;
    g.bins.back() = hi;
    g.sup_values.assign(nbins, std::nullopt);
    g.counts.assign(nbins, 0);
    for (const auto& [t, v] : samples) {
        if (!(t > 0.0) || !std::isfinite(t) || !std::isfinite(v)) continue;
        auto k = static_cast<std::size_t>(std::floor(std::log(t / lo) / span * static_cast<double>(nbins)));
        k = std::min(k, nbins - 1);
        g.sup_values[k] = g.sup_values[k] ? std::max(*g.sup_values[k], v) : v;
        ++g.counts[k];
    }
    g.monotone_envelope.resize(nbins);
    double run = 0.0;
    for (std::size_t i = 0; i < nbins; ++i) {
        if (g.sup_values[i]) run = std::max(run, *g.sup_values[i]);
        g.monotone_envelope[i] = run;
    }
    return g;
}

nlohmann::json gauge_to_json(const EmpiricalGauge& g) {
    nlohmann::json sup = nlohmann::json::array();
    for (const auto& v : g.sup_values) sup.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
    return {{"bins", g.bins}, {"sup_values", sup}, {"monotone_envelope", g.monotone_envelope}, {"counts", g.counts}};
}

}  // namespace qhkit
