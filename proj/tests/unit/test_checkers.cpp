#include <doctest.h>

#include <algorithm>
#include <random>

#include "qhkit/checkers.hpp"
#include "qhkit/errors.hpp"

using namespace qhkit;

namespace {

const Domain& unit_disk() {
    static const Domain d(Ball{Point(0, 0), 1.0}, "unit_disk");
    return d;
}

}  // namespace

TEST_SUITE("checkers") {
    TEST_CASE("triple ratio") {
        CHECK(triple_ratio({Point(0, 0), Point(1, 0), Point(0, 1)}) == 1.0);
        CHECK(triple_ratio({Point(0, 0), Point(2, 0), Point(1, 0)}) == 2.0);
        for (const auto& t : sample_triples(Point(0, 0), 1.0, 100, 4))
            CHECK(triple_ratio(t) * triple_ratio({t.x, t.b, t.a}) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK_THROWS_AS(triple_ratio({Point(0, 0), Point(0, 0), Point(1, 0)}), ValidationError);
    }

    TEST_CASE("QH constant of identity and similarity is one") {
        const auto pairs = sample_pairs(unit_disk(), 60, 0.02, 8);
        CHECK(estimate_qh_constant(identity_map(unit_disk()), pairs, 3).M_hat == doctest::Approx(1.0).epsilon(1e-12));
        const MapUnderTest s = similarity(3.0, M_PI / 2, Point(0.5, 0.5), unit_disk());
        const QhEstimate e = estimate_qh_constant(s, pairs, 3);
        CHECK(std::abs(e.M_hat - 1.0) <= 1e-6);
        CHECK(e.M_certified >= e.M_hat);
        CHECK(e.report.witnesses.size() == 1);
        // x = y pairs are skipped
        CHECK(estimate_qh_constant(s, {{Point(0.1, 0), Point(0.1, 0)}}, 3).M_hat == 1.0);
    }

    TEST_CASE("QH estimate is symmetric under inversion") {
        const MapUnderTest f = radial_stretch(2.0, unit_disk());
        const auto pairs = sample_pairs(unit_disk(), 40, 0.05, 3);
        std::vector<PointPair> image;
        for (const auto& [x, y] : pairs) image.push_back({f.forward(x), f.forward(y)});
        const double a = estimate_qh_constant(f, pairs, 3).M_hat;
        const double b = estimate_qh_constant(f.inverted(), image, 3).M_hat;
        CHECK(a >= 1.0);
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }

    TEST_CASE("radial stretch is not QH near its fixed point") {
        // k(x, 0) ~ |x| while k'(f x, 0) ~ |x|^2, so the ratio grows like 1/|x|.
        const MapUnderTest f = radial_stretch(2.0, unit_disk());
        const double far = estimate_qh_constant(f, {{Point(0.2, 0), Point(0.0, 0.01)}}, 4).M_hat;
        const double near = estimate_qh_constant(f, {{Point(0.02, 0), Point(0.0, 0.001)}}, 4).M_hat;
        CHECK(near > 5.0 * far);
    }

    TEST_CASE("radial stretch constant is stable away from the origin") {
        const MapUnderTest f = radial_stretch(2.0, unit_disk());
        auto annulus_pairs = [&](std::size_t n, std::uint64_t seed) {
            std::vector<PointPair> out;
            for (const auto& p : sample_pairs(unit_disk(), 4 * n, 0.05, seed))
                if (p.x.norm() >= 0.3 && p.y.norm() >= 0.3 && out.size() < n) out.push_back(p);
            return out;
        };
        const double a = estimate_qh_constant(f, annulus_pairs(100, 1), 3).M_hat;
        const double b = estimate_qh_constant(f, annulus_pairs(200, 1), 3).M_hat;
        CHECK(std::isfinite(a));
        CHECK(std::abs(a - b) <= 0.10 * b);
    }

    TEST_CASE("coarse QH check") {
        const auto pairs = sample_pairs(unit_disk(), 40, 0.02, 5);
        const MapUnderTest id = identity_map(unit_disk());
        CHECK(check_cqh(id, pairs, 1.0, 0.0, 3).passed());
        const MapUnderTest f = radial_stretch(2.0, unit_disk());
        const double M = estimate_qh_constant(f, pairs, 3).M_hat;
        CHECK(check_cqh(f, pairs, M, 0.0, 3).verdicts.at("cqh"));
        // monotone in C and M
        const double M0 = 1.0 + 0.25 * (M - 1.0);
        bool prev = false;
        for (double C : {0.0, 0.1, 0.5, 1.0, 5.0}) {
            const bool now = check_cqh(f, pairs, M0, C, 3).verdicts.at("cqh");
            CHECK((!prev || now));
            prev = now;
        }
        prev = false;
        for (double MM : {1.0, 1.5, 2.0, 4.0, 8.0}) {
            const bool now = check_cqh(f, pairs, MM, 0.1, 3).verdicts.at("cqh");
            CHECK((!prev || now));
            prev = now;
        }
        CHECK_THROWS_AS(check_cqh(f, pairs, 0.5, 0.0, 3), ValidationError);
        CHECK_THROWS_AS(check_cqh(f, pairs, 1.0, -1.0, 3), ValidationError);
    }

    TEST_CASE("straightener is coarsely QH with the squared constant") {
        const MapUnderTest z = zigzag_straightener(4, 0.05, M_PI / 2);
        const auto pairs = sample_pairs(z.source, 30, 0.005, 2);
        double M_hat = 1.0;
        for (const auto& [x, y] : sample_local_pairs(z.source, 2000, 0.0, 0.5, 4)) {
            const double q = distance(z.forward(x), z.forward(y)) / distance(x, y);
            M_hat = std::max({M_hat, q, 1.0 / q});
        }
        const CheckReport r = check_cqh(z, pairs, M_hat * M_hat + 0.1, 1.0, 2);
        CHECK(r.passed());
    }

    TEST_CASE("relative gauge of identity and similarity") {
        const auto pairs = sample_local_pairs(unit_disk(), 500, 0.02, 0.45, 10);
        const EmpiricalGauge g = estimate_relative_theta(identity_map(unit_disk()), pairs, 0.5);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!g.sup_values[i]) continue;
            const double t = g.bins[i + 1];
            CHECK(*g.sup_values[i] <= t / (1.0 - t) + 1e-12);
            CHECK(*g.sup_values[i] <= t + 1e-12);  // here d' = d exactly
        }
        const EmpiricalGauge s =
            estimate_relative_theta(similarity(3.0, 0.4, Point(2, 1), unit_disk()), pairs, 0.5);
        REQUIRE(s.size() == g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(s.bins[i] == g.bins[i]);
            if (g.sup_values[i]) CHECK(std::abs(*s.sup_values[i] - *g.sup_values[i]) <= 1e-9);
        }
        // the smallest populated bin is near zero: continuity at 0
        CHECK(*g.sup_values[*g.first_populated()] < 0.05);
        CHECK_THROWS_AS(estimate_relative_theta(identity_map(unit_disk()), pairs, 0.1), ValidationError);
    }

    TEST_CASE("QS gauges") {
        const Point c(0.1, 0.0);
        const double rad = 0.5 * unit_disk().dist_to_boundary(c);
        const auto triples = sample_triples(c, rad * 0.999, 2000, 12);
        const EmpiricalGauge id = estimate_qs_eta(identity_map(unit_disk()), c, 0.5, triples);
        const EmpiricalGauge sim = estimate_qs_eta(similarity(2.0, 1.0, Point(0, 0), unit_disk()), c, 0.5, triples);
        for (std::size_t i = 0; i < id.size(); ++i) {
            if (!id.sup_values[i]) continue;
            CHECK(*id.sup_values[i] <= id.bins[i + 1] + 1e-12);
            CHECK(*id.sup_values[i] >= id.bins[i] - 1e-12);
            CHECK(*sim.sup_values[i] == doctest::Approx(*id.sup_values[i]).epsilon(1e-10));
        }
        const MapUnderTest f = radial_stretch(2.0, unit_disk());
        auto eta1 = [&](std::uint64_t seed) {
            const EmpiricalGauge g = estimate_qs_eta(f, c, 0.5, sample_triples(c, rad * 0.999, 4000, seed));
            return g.envelope_at(1.0);
        };
        const double e1 = eta1(1), e2 = eta1(2);
        CHECK(e1 >= 1.0);
        CHECK(std::abs(e1 - e2) <= 0.10 * e1);
        CHECK_THROWS_AS(estimate_qs_eta(f, c, 1.5, triples), ValidationError);
        CHECK_THROWS_AS(estimate_qs_eta(f, c, 0.1, triples), ValidationError);
    }

    TEST_CASE("semisolid") {
        const auto pairs = sample_pairs(unit_disk(), 30, 0.02, 7);
        CHECK(check_semisolid(identity_map(unit_disk()), pairs, [](double t) { return t; }, 3).passed());
        const MapUnderTest f = radial_stretch(2.0, unit_disk());
        const double M = estimate_qh_constant(f, pairs, 3).M_hat;
        CHECK(check_semisolid(f, pairs, [M](double t) { return M * t; }, 3).passed());
        CHECK(check_solid(f, pairs, [M](double t) { return M * t; }, 3).passed());
    }

    TEST_CASE("straightener against small growth functions") {
        const ZigzagLayout layout;
        const MapUnderTest z = zigzag_straightener(4, 0.05, M_PI / 2, layout);
        const double bend = layout.row_pieces * layout.segment_length;
        const std::vector<PointPair> pairs = {{Point(bend - 0.06, 0.03), Point(bend + 0.06, 0.03)},
                                              {Point(bend - 0.06, -0.03), Point(bend + 0.06, -0.03)},
                                              {Point(bend - 0.3, 0.0), Point(bend + 0.3, 0.01)}};
        // the map is locally bilipschitz with constant below 4, so k' >= k / 4 cannot fail
        const CheckReport r = check_semisolid(z, pairs, [](double t) { return 0.25 * t; }, 3);
        CHECK_FALSE(r.verdicts.at("semisolid"));
        CHECK_FALSE(r.verdicts.at("no_certified_violation"));
        REQUIRE(r.witnesses.size() == 1);
        CHECK(r.witnesses[0].value > 0.0);
        const auto& w = r.witnesses[0].points;
        CHECK(std::any_of(pairs.begin(), pairs.end(), [&](const PointPair& p) { return p.x == w[0] && p.y == w[1]; }));
        // with phi = identity nothing is certified to fail
        CHECK(check_semisolid(z, pairs, [](double t) { return t; }, 3).verdicts.at("no_certified_violation"));
    }

    TEST_CASE("uniformity and affine bound") {
        const auto pairs = sample_pairs(unit_disk(), 20, 0.05, 13);
        const UniformityResult u = uniformity_check(unit_disk(), pairs, 3);
        CHECK(u.c_hat >= 1.0);
        CHECK(std::isfinite(u.c_hat));
        const TheoremDFit fit = theoremD_fit(unit_disk(), pairs, 3);
        CHECK(fit.c_prime >= 1.0);
        CHECK(fit.used == 20);
        for (const auto& [x, y] : pairs)
            CHECK(k_upper(unit_disk(), x, y, 3).value <= fit.c1 * j_metric(unit_disk(), x, y) + fit.d + 1e-12);
        // nearby pairs: k/j -> 1
        const TheoremDFit close = theoremD_fit(unit_disk(), {{Point(0.1, 0.1), Point(0.1001, 0.1)}}, 4);
        CHECK(close.c_prime == doctest::Approx(1.0).epsilon(1e-3));
    }

    TEST_CASE("slit straddling pairs break uniformity") {
        const Domain slit(SlitDisk{});
        std::vector<double> c;
        for (double t : {0.1, 0.05, 0.02}) c.push_back(uniformity_check(slit, {{Point(0.5, t), Point(0.5, -t)}}, 3).c_hat);
        CHECK(c[1] > c[0]);
        CHECK(c[2] > c[1]);
        const TheoremDFit fit = theoremD_fit(slit, {{Point(0.5, 0.02), Point(0.5, -0.02)}}, 4);
        CHECK(fit.c_prime >= std::log(51.0) / std::log(3.0));
    }

    TEST_CASE("local-to-global on identity and similarity") {
        const std::vector<Point> centers = {Point(0.1, 0.2), Point(-0.4, 0.3)};
        const auto pairs = sample_local_pairs(unit_disk(), 20, 0.05, 0.5, 3);
        const LocalGlobalReport id = local_to_global_qh(identity_map(unit_disk()), centers, pairs, 2, 8, 1);
        // the two graphs discretize different sets, so only approximately one
        CHECK(id.M_local == doctest::Approx(1.0).epsilon(0.03));
        CHECK(id.M_global == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(id.report.verdicts.at("case1_inequality"));
        const MapUnderTest s = similarity(2.0, 0.3, Point(1, 1), unit_disk());
        const LocalGlobalReport sr = local_to_global_qh(s, centers, pairs, 2, 8, 1);
        CHECK(sr.M_global == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(sr.report.verdicts.at("case1_inequality"));
        REQUIRE(sr.close_pairs > 0);
        CHECK(sr.min_slack >= 0.0);
    }
}
