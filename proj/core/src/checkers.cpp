#include "qhkit/checkers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "qhkit/errors.hpp"
#include "qhkit/frame.hpp"
#include "qhkit/image_set.hpp"
#include "qhkit/parallel.hpp"

namespace qhkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-9;

struct PairValues {
    bool skip = true;
    Point fx, fy;
    MetricEstimate k, kp;
    double j = 0.0, jp = 0.0;
};

/// k_upper on both sides of f, plus j on both sides.
std::vector<PairValues> evaluate_pairs(const MapUnderTest& f, const std::vector<PointPair>& pairs, int level) {
    std::vector<PairValues> out(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        const auto& [x, y] = pairs[i];
        if (x == y) return;
        PairValues& v = out[i];
        v.fx = f.forward(x);
        v.fy = f.forward(y);
        if (!f.target.contains(v.fx) || !f.target.contains(v.fy))
            throw MapConsistencyError("image of pair " + std::to_string(i) + " is not in " + f.target.name());
        v.k = k_upper(f.source, x, y, level);
        v.kp = k_upper(f.target, v.fx, v.fy, level);
        v.j = j_metric(f.source, x, y);
        v.jp = j_metric(f.target, v.fx, v.fy);
        v.skip = false;
    });
    return out;
}

nlohmann::json base_manifest(const std::vector<PointPair>& pairs, int level) {
    return {{"pairs", pairs.size()}, {"level", level}, {"edge_tol", kDefaultEdgeTol}};
}

void note_map(CheckReport& r, const MapUnderTest& f) {
    r.manifest["map"] = f.name;
    r.manifest["map_params"] = f.params;
}

}  // namespace

double triple_ratio(const Triple& t) {
    if (t.x == t.a || t.x == t.b || t.a == t.b) throw ValidationError("/triple", "points must be pairwise distinct");
    return distance(t.a, t.x) / distance(t.b, t.x);
}

QhEstimate estimate_qh_constant(const MapUnderTest& f, const std::vector<PointPair>& pairs, int level) {
    const auto vals = evaluate_pairs(f, pairs, level);
    QhEstimate e;
    e.report.check = "qh_constant";
    std::optional<std::size_t> worst;
    std::size_t used = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const auto& v = vals[i];
        if (v.skip) continue;
        ++used;
        const double ratio = std::max(v.kp.value / v.k.value, v.k.value / v.kp.value);
        const double cert = std::max(v.kp.value / v.j, v.k.value / v.jp);
        e.M_certified = std::max(e.M_certified, cert);
        if (ratio > e.M_hat || !worst) {
            e.M_hat = std::max(e.M_hat, ratio);
            worst = i;
        }
    }
    e.report.constants["M_qh"] = e.M_hat;
    e.report.constants["M_qh_certified"] = e.M_certified;
    e.report.manifest = base_manifest(pairs, level);
    e.report.manifest["pairs_used"] = used;
    note_map(e.report, f);
    if (worst) e.report.witnesses.push_back({"M_qh", {pairs[*worst].x, pairs[*worst].y}, e.M_hat});
    return e;
}

CheckReport check_cqh(const MapUnderTest& f, const std::vector<PointPair>& pairs, double M, double C, int level) {
    if (!(M >= 1.0)) throw ValidationError("/M", "must be at least 1");
    if (!(C >= 0.0)) throw ValidationError("/C", "must be non-negative");
    const auto vals = evaluate_pairs(f, pairs, level);
    CheckReport r;
    r.check = "cqh";
    double worst_excess = -kInf;
    std::optional<std::size_t> worst;
    bool certified_violation = false;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const auto& v = vals[i];
        if (v.skip) continue;
        const double tol = v.k.abs_tol + v.kp.abs_tol + kSlack;
        const double excess = std::max(v.kp.value - (M * v.k.value + C), (v.k.value - C) / M - v.kp.value) - tol;
        if (excess > worst_excess) {
            worst_excess = excess;
            worst = i;
        }
        if (v.jp > M * v.k.value + C + tol || (v.j - C) / M > v.kp.value + tol) certified_violation = true;
    }
    r.constants["M"] = M;
    r.constants["C"] = C;
    r.constants["max_excess"] = worst ? worst_excess : 0.0;
    r.verdicts["cqh"] = !worst || worst_excess <= 0.0;
    r.verdicts["no_certified_violation"] = !certified_violation;
    r.manifest = base_manifest(pairs, level);
    note_map(r, f);
    if (worst) r.witnesses.push_back({"cqh_excess", {pairs[*worst].x, pairs[*worst].y}, worst_excess});
    return r;
}

EmpiricalGauge estimate_relative_theta(const MapUnderTest& f, const std::vector<PointPair>& pairs, double t0) {
    if (!(t0 > 0.0)) throw ValidationError("/t0", "must be positive");
    std::vector<std::pair<double, double>> samples;
    samples.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [x, y] = pairs[i];
        const double dx = f.source.dist_to_boundary(x);
        const double t = distance(x, y) / dx;
        if (!(t < t0))
            throw ValidationError("/pairs/" + std::to_string(i), "|x - y| must be below t0 d(x)");
        const Point fx = f.forward(x);
        samples.emplace_back(t, distance(fx, f.forward(y)) / f.target.dist_to_boundary(fx));
    }
    return build_gauge(samples);
}

EmpiricalGauge estimate_qs_eta(const MapUnderTest& f, const Point& center, double q, const std::vector<Triple>& triples) {
    if (!(q > 0.0 && q < 1.0)) throw ValidationError("/q", "must lie in (0, 1)");
    const double radius = q * f.source.dist_to_boundary(center);
    std::vector<std::pair<double, double>> samples;
    samples.reserve(triples.size());
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const Triple& t = triples[i];
        const std::string where = "/triples/" + std::to_string(i);
        for (const Point* p : {&t.x, &t.a, &t.b})
            if (!(distance(*p, center) < radius)) throw ValidationError(where, "point outside B(center, q d(center))");
        const double rho = triple_ratio(t);
        const Triple ft{f.forward(t.x), f.forward(t.a), f.forward(t.b)};
        if (ft.x == ft.a || ft.x == ft.b || ft.a == ft.b)
            throw MapConsistencyError("map collapses triple " + std::to_string(i));
        samples.emplace_back(rho, triple_ratio(ft));
    }
    return build_gauge(samples);
}

CheckReport check_semisolid(const MapUnderTest& f, const std::vector<PointPair>& pairs, const GrowthFunction& phi,
                            int level) {
    const auto vals = evaluate_pairs(f, pairs, level);
    CheckReport r;
    r.check = "semisolid";
    double worst_excess = -kInf;
    std::optional<std::size_t> worst;
    bool certified_violation = false;
    std::vector<std::pair<double, double>> growth;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const auto& v = vals[i];
        if (v.skip) continue;
        const double tol = v.k.abs_tol + v.kp.abs_tol + kSlack;
        const double excess = v.kp.value - phi(v.k.value) - tol;
        growth.emplace_back(v.k.value, v.kp.value);
        if (excess > worst_excess) {
            worst_excess = excess;
            worst = i;
        }
        if (v.jp > phi(v.k.value) + tol) certified_violation = true;
    }
    r.constants["max_excess"] = worst ? worst_excess : 0.0;
    r.gauges["growth"] = build_gauge(growth);
    r.verdicts["semisolid"] = !worst || worst_excess <= 0.0;
    r.verdicts["no_certified_violation"] = !certified_violation;
    r.manifest = base_manifest(pairs, level);
    note_map(r, f);
    if (worst) r.witnesses.push_back({"semisolid_excess", {pairs[*worst].x, pairs[*worst].y}, worst_excess});
    return r;
}

CheckReport check_solid(const MapUnderTest& f, const std::vector<PointPair>& pairs, const GrowthFunction& phi,
                        int level) {
    CheckReport fwd = check_semisolid(f, pairs, phi, level);
    std::vector<PointPair> image;
    image.reserve(pairs.size());
    for (const auto& [x, y] : pairs) image.push_back({f.forward(x), f.forward(y)});
    const CheckReport back = check_semisolid(f.inverted(), image, phi, level);

    CheckReport r;
    r.check = "solid";
    r.constants["max_excess_forward"] = fwd.constants["max_excess"];
    r.constants["max_excess_inverse"] = back.constants.at("max_excess");
    r.gauges["growth_forward"] = fwd.gauges["growth"];
    r.gauges["growth_inverse"] = back.gauges.at("growth");
    r.verdicts["semisolid_forward"] = fwd.verdicts["semisolid"];
    r.verdicts["semisolid_inverse"] = back.verdicts.at("semisolid");
    r.verdicts["no_certified_violation"] =
        fwd.verdicts["no_certified_violation"] && back.verdicts.at("no_certified_violation");
    r.witnesses = fwd.witnesses;
    for (auto w : back.witnesses) {
        w.label += "_inverse";
        r.witnesses.push_back(std::move(w));
    }
    r.manifest = fwd.manifest;
    return r;
}

UniformityResult uniformity_check(const Domain& domain, const std::vector<PointPair>& pairs, int level) {
    struct Row {
        bool skip = true;
        double cigar = 0.0, qc = 0.0;
    };
    std::vector<Row> rows(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        const auto& [x, y] = pairs[i];
        if (x == y) return;
        const Path p = extract_neargeodesic(domain, x, y, level);
        std::vector<double> cum(p.size(), 0.0);
        for (std::size_t k = 1; k < p.size(); ++k) cum[k] = cum[k - 1] + distance(p.points[k - 1], p.points[k]);
        const double total = cum.back();
        double cigar = 0.0;
        for (std::size_t k = 1; k + 1 < p.size(); ++k)
            cigar = std::max(cigar, std::min(cum[k], total - cum[k]) / domain.dist_to_boundary(p.points[k]));
        rows[i] = {false, cigar, total / distance(x, y)};
    });
    UniformityResult u;
    u.report.check = "uniformity";
    double cigar = 0.0, qc = 1.0;
    std::optional<std::size_t> worst;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].skip) continue;
        const double c = std::max(rows[i].cigar, rows[i].qc);
        cigar = std::max(cigar, rows[i].cigar);
        qc = std::max(qc, rows[i].qc);
        if (!worst || c > u.c_hat) worst = i;
        u.c_hat = std::max(u.c_hat, c);
    }
    u.report.constants["c_uniform"] = u.c_hat;
    u.report.constants["c_cigar"] = cigar;
    u.report.constants["c_quasiconvex"] = qc;
    u.report.manifest = base_manifest(pairs, level);
    u.report.manifest["domain"] = domain.name();
    if (worst) u.report.witnesses.push_back({"c_uniform", {pairs[*worst].x, pairs[*worst].y}, u.c_hat});
    return u;
}

TheoremDFit theoremD_fit(const Domain& domain, const std::vector<PointPair>& pairs, int level) {
    struct Row {
        bool skip = true;
        double j = 0.0, k = 0.0;
    };
    std::vector<Row> rows(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        const auto& [x, y] = pairs[i];
        if (x == y) return;
        const double j = j_metric(domain, x, y);
        if (!(j > 0.0)) return;
        rows[i] = {false, j, k_upper(domain, x, y, level).value};
    });
    TheoremDFit fit;
    fit.report.check = "theoremD_fit";
    std::optional<std::size_t> worst;
    double sj = 0, sk = 0, sjj = 0, sjk = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].skip) continue;
        const double ratio = rows[i].k / rows[i].j;
        if (!worst || ratio > fit.c_prime) worst = i;
        fit.c_prime = std::max(fit.c_prime, ratio);
        ++fit.used;
        sj += rows[i].j;
        sk += rows[i].k;
        sjj += rows[i].j * rows[i].j;
        sjk += rows[i].j * rows[i].k;
    }
    const double n = static_cast<double>(fit.used);
    const double det = n * sjj - sj * sj;
    if (fit.used >= 2 && det > 1e-12 * n * sjj) {
        fit.c1 = (n * sjk - sj * sk) / det;
        fit.d = -kInf;
        for (const auto& r : rows)
            if (!r.skip) fit.d = std::max(fit.d, r.k - fit.c1 * r.j);
    } else {
        fit.c1 = fit.c_prime;
        fit.d = 0.0;
    }
    fit.report.constants["c_prime_thmD"] = fit.c_prime;
    fit.report.constants["c1_thmD"] = fit.c1;
    fit.report.constants["d_thmD"] = fit.d;
    fit.report.manifest = base_manifest(pairs, level);
    fit.report.manifest["domain"] = domain.name();
    fit.report.manifest["pairs_used"] = fit.used;
    if (worst) fit.report.witnesses.push_back({"c_prime_thmD", {pairs[*worst].x, pairs[*worst].y}, fit.c_prime});
    return fit;
}

LocalGlobalReport local_to_global_qh(const MapUnderTest& f, const std::vector<Point>& centers,
                                     const std::vector<PointPair>& pairs, int level, std::size_t pairs_per_center,
                                     std::uint64_t seed) {
    if (f.source.dim() != 2) throw ValidationError("/map", "local-to-global check is planar only");
    LocalGlobalReport out;
    out.report.check = "local_to_global_qh";
    const Domain unit(Ball{Point(0.0, 0.0), 1.0}, "unit disk");

    std::optional<std::size_t> worst_center;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const Point& x0 = centers[c];
        const double d0 = f.source.dist_to_boundary(x0);
        // Maximal ball as a placed unit disk so every center reuses one graph.
        const Domain ball = unit.transformed(Frame::planar(d0, 0.0, x0), "maximal ball");
        const Domain image = image_of_ball(f, x0, d0);
        MapUnderTest local = f;
        local.source = ball;
        local.target = image;
        const auto local_pairs = sample_pairs(ball, pairs_per_center, 0.05 * d0, seed + c);
        const QhEstimate e = estimate_qh_constant(local, local_pairs, level);
        if (!worst_center || e.M_hat > out.M_local) worst_center = c;
        out.M_local = std::max(out.M_local, e.M_hat);
    }

    const QhEstimate global = estimate_qh_constant(f, pairs, level);
    out.M_global = global.M_hat;

    const auto vals = evaluate_pairs(f, pairs, level);
    out.min_slack = kInf;
    std::optional<std::size_t> worst_pair;
    bool case1 = true;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const auto& v = vals[i];
        if (v.skip) continue;
        if (distance(pairs[i].x, pairs[i].y) > 0.5 * f.source.dist_to_boundary(pairs[i].x)) continue;
        ++out.close_pairs;
        const double tol = v.k.abs_tol + v.kp.abs_tol + kSlack;
        const double slack = 2.0 * out.M_local * v.k.value - v.kp.value;
        if (slack < out.min_slack) {
            out.min_slack = slack;
            worst_pair = i;
        }
        if (slack < -tol) case1 = false;
    }

    auto& r = out.report;
    r.constants["M_local"] = out.M_local;
    r.constants["M_global"] = out.M_global;
    r.constants["case1_min_slack"] = out.min_slack;
    r.verdicts["case1_inequality"] = case1;
    r.manifest = base_manifest(pairs, level);
    r.manifest["centers"] = centers.size();
    r.manifest["pairs_per_center"] = pairs_per_center;
    r.manifest["seed"] = seed;
    r.manifest["close_pairs"] = out.close_pairs;
    note_map(r, f);
    if (worst_center) r.witnesses.push_back({"M_local_center", {centers[*worst_center]}, out.M_local});
    if (worst_pair)
        r.witnesses.push_back({"case1_min_slack", {pairs[*worst_pair].x, pairs[*worst_pair].y}, out.min_slack});
    return out;
}

}  // namespace qhkit
