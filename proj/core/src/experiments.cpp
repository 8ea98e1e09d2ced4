#include "qhkit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qhkit/checkers.hpp"
#include "qhkit/errors.hpp"
#include "qhkit/parallel.hpp"
#include "qhkit/sampling.hpp"

namespace qhkit {

namespace {

bool within_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

}  // namespace

ExperimentResult run_example1(const std::vector<double>& t_values, int level) {
    const Domain slit(SlitDisk{}, "slit_disk");
    for (std::size_t i = 0; i < t_values.size(); ++i) {
        const double t = t_values[i];
        if (!(t > 0.0 && t <= 0.3)) throw ValidationError("/t_values/" + std::to_string(i), "must lie in (0, 0.3]");
        // Nearest boundary must be the slit, not the circle.
        if (!(t < 1.0 - std::hypot(0.5, t)))
            throw ValidationError("/t_values/" + std::to_string(i), "point is closer to the circle than to the slit");
    }
    struct Row {
        double j, ku, tol, bound;
    };
    std::vector<Row> rows(t_values.size());
    parallel_for(t_values.size(), [&](std::size_t i) {
        const double t = t_values[i];
        const Point x(0.5, t), y(0.5, -t);
        const MetricEstimate k = k_upper(slit, x, y, level);
        rows[i] = {j_metric(slit, x, y), k.value, k.abs_tol, std::log1p(1.0 / t)};
    });

    ExperimentResult res;
    res.name = "example1";
    res.columns = {"t", "j", "k_upper", "k_tol", "bound", "ratio"};
    bool j_exact = true, k_bound = true, sound = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        res.rows.push_back({{"t", t_values[i]},
                            {"j", r.j},
                            {"k_upper", r.ku},
                            {"k_tol", r.tol},
                            {"bound", r.bound},
                            {"ratio", r.ku / r.j}});
        j_exact = j_exact && std::abs(r.j - std::log(3.0)) <= 1e-12;
        k_bound = k_bound && r.ku >= r.bound;
        sound = sound && r.j <= r.ku + r.tol;
    }
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return t_values[a] > t_values[b]; });
    bool increasing = true;
    for (std::size_t i = 1; i < order.size(); ++i) {
        const double prev = rows[order[i - 1]].ku / rows[order[i - 1]].j;
        const double cur = rows[order[i]].ku / rows[order[i]].j;
        if (t_values[order[i]] < t_values[order[i - 1]] && !(cur > prev)) increasing = false;
    }
    res.verdicts = {{"j_equals_log3", j_exact},
                    {"k_upper_above_bound", k_bound},
                    {"ratio_increasing", increasing},
                    {"estimator_sound", sound}};
    res.manifest = {{"level", level}, {"edge_tol", kDefaultEdgeTol}, {"t_values", t_values}};
    return res;
}

ExperimentResult run_example2(const std::vector<int>& m_values, double r, double bend, std::uint64_t seed,
                              const ZigzagLayout& layout) {
    if (m_values.empty()) throw ValidationError("/m_values", "must not be empty");
    for (std::size_t i = 0; i < m_values.size(); ++i)
        if (m_values[i] < 2) throw ValidationError("/m_values/" + std::to_string(i), "must be at least 2");
    const double ell = layout.segment_length;
    const int m_max = *std::max_element(m_values.begin(), m_values.end());

    // Every zigzag is a prefix of the largest one, so its box and local
    // bilipschitz constant serve all m.
    const MapUnderTest big = zigzag_straightener(m_max, r, bend, layout);
    const auto local = sample_local_pairs(big.source, 2000, 0.1 * r, 0.5, seed);
    double M_hat = 1.0;
    for (const auto& [x, y] : local) {
        const double q = distance(big.forward(x), big.forward(y)) / distance(x, y);
        M_hat = std::max({M_hat, q, 1.0 / q});
    }
    const Box box = big.target.shape_box();
    const double diam = distance(box.lo, box.hi);
    const double K = 2.0 * M_hat * diam;
    const double bound = std::log1p(K / r);

    ExperimentResult res;
    res.name = "example2";
    res.columns = {"m", "j_D", "j_D_closed_form", "abs_diff", "j_Dprime", "bound"};
    bool closed = true, bounded = true;
    std::vector<std::pair<int, double>> growth;
    for (int m : m_values) {
        const MapUnderTest f = zigzag_straightener(m, r, bend, layout);
        const Point x(0.5 * ell, 0.0), y((m - 0.5) * ell, 0.0);
        const double jD = j_metric(f.source, x, y);
        const double closed_form = std::log1p(ell * (m - 1) / r);
        const double jDp = j_metric(f.target, f.forward(x), f.forward(y));
        res.rows.push_back({{"m", m},
                            {"j_D", jD},
                            {"j_D_closed_form", closed_form},
                            {"abs_diff", std::abs(jD - closed_form)},
                            {"j_Dprime", jDp},
                            {"bound", bound}});
        closed = closed && std::abs(jD - closed_form) <= 1e-9;
        bounded = bounded && jDp <= bound;
        growth.emplace_back(m, jD);
    }
    std::sort(growth.begin(), growth.end());
    bool unbounded = true;
    for (std::size_t i = 1; i < growth.size(); ++i)
        if (growth[i].first > growth[i - 1].first && !(growth[i].second > growth[i - 1].second)) unbounded = false;
    res.verdicts = {{"j_D_closed_form", closed}, {"j_Dprime_bounded", bounded}, {"j_D_increasing", unbounded}};
    res.summary = {{"M_hat", M_hat}, {"box_diameter", diam}, {"K", K}, {"bound", bound}};
    res.manifest = {{"m_values", m_values},
                    {"r", r},
                    {"bend", bend},
                    {"seed", seed},
                    {"segment_length", ell},
                    {"row_pieces", layout.row_pieces},
                    {"calibration_pairs", local.size()}};
    return res;
}

ExperimentResult run_lemma1(std::size_t trials, const std::vector<double>& s_values, std::uint64_t seed, double tol) {
    if (trials < 1) throw ValidationError("/trials", "must be at least 1");
    for (std::size_t i = 0; i < s_values.size(); ++i)
        if (!(s_values[i] > 0.0 && s_values[i] < 1.0))
            throw ValidationError("/s_values/" + std::to_string(i), "must lie in (0, 1)");
    const Domain unit(Ball{Point(0.0, 0.0), 1.0}, "unit_disk");
    ExperimentResult res;
    res.name = "lemma1";
    res.columns = {"s", "trial", "rel_dist", "k_segment", "bound", "excess"};
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t si = 0; si < s_values.size(); ++si) {
        const double s = s_values[si];
        const auto xs = unit.sample_interior(trials, 1e-3, seed + si);
        std::mt19937_64 rng(seed * 1000003ULL + si);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (std::size_t t = 0; t < trials; ++t) {
            const Point& x = xs[t];
            const double d = unit.dist_to_boundary(x);
            const double ang = 2.0 * std::acos(-1.0) * uni(rng);
            const Point y = x + Point(std::cos(ang), std::sin(ang)) * (s * d * uni(rng));
            const Domain bx(Ball{x, d}, "B_x");
            double len = 0.0, bound = 0.0;
            if (!(x == y)) {
                len = qh_length(Path{{x, y}}, bx, tol).value;
                bound = lemma1_bound(unit, x, y, s);
            }
            const double excess = len - bound;
            worst = std::max(worst, excess);
            res.rows.push_back({{"s", s},
                                {"trial", t},
                                {"rel_dist", distance(x, y) / d},
                                {"k_segment", len},
                                {"bound", bound},
                                {"excess", excess}});
        }
    }
    res.verdicts = {{"no_violation", worst <= tol}};
    res.summary = {{"max_excess", worst}};
    res.manifest = {{"trials", trials}, {"s_values", s_values}, {"seed", seed}, {"tol", tol}};
    return res;
}

ExperimentResult run_uniformity(int level, std::uint64_t seed, std::size_t pairs) {
    if (level < 2) throw ValidationError("/level", "must be at least 2");
    const std::vector<Domain> domains = {
        Domain(Ball{Point(0.0, 0.0), 1.0}, "ball"),
        Domain(PuncturedBall{Point(0.0, 0.0), 1.0, Point(0.4, 0.1)}, "punctured_ball"),
        Domain(SlitDisk{}, "slit_disk"),
    };
    ExperimentResult res;
    res.name = "uniformity";
    res.columns = {"domain", "level", "c_uniform", "c_prime", "c1", "d"};
    std::map<std::string, std::map<int, std::pair<double, double>>> table;
    for (std::size_t di = 0; di < domains.size(); ++di) {
        const Domain& dom = domains[di];
        auto ps = sample_pairs(dom, pairs, 0.05, seed + di);
        if (dom.kind() == "slit_disk")
            for (double t : {0.1, 0.05, 0.02}) ps.push_back({Point(0.5, t), Point(0.5, -t)});
        for (int lv : {level - 1, level}) {
            const UniformityResult u = uniformity_check(dom, ps, lv);
            const TheoremDFit fit = theoremD_fit(dom, ps, lv);
            table[dom.name()][lv] = {u.c_hat, fit.c_prime};
            res.rows.push_back({{"domain", dom.name()},
                                {"level", lv},
                                {"c_uniform", u.c_hat},
                                {"c_prime", fit.c_prime},
                                {"c1", fit.c1},
                                {"d", fit.d}});
        }
    }
    auto stable = [&](const std::string& name, bool prime) {
        const auto& a = table[name][level - 1];
        const auto& b = table[name][level];
        return prime ? within_rel(a.second, b.second, 0.10) : within_rel(a.first, b.first, 0.10);
    };
    const double ball_cp = table["ball"][level].second;
    const double slit_cp = table["slit_disk"][level].second;
    res.verdicts = {{"ball_c_prime_stable", stable("ball", true)},
                    {"punctured_c_prime_stable", stable("punctured_ball", true)},
                    {"ball_c_stable", stable("ball", false)},
                    {"punctured_c_finite", std::isfinite(table["punctured_ball"][level].first)},
                    {"slit_contrast", slit_cp >= 2.0 * ball_cp}};
    res.summary = {{"ball_c_prime", ball_cp}, {"slit_c_prime", slit_cp}, {"contrast", slit_cp / ball_cp}};
    res.manifest = {{"level", level}, {"seed", seed}, {"pairs", pairs}, {"margin", 0.05}};
    return res;
}

}  // namespace qhkit
