#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qhkit/domain.hpp"
#include "qhkit/errors.hpp"

using namespace qhkit;

namespace {

struct Case {
    Domain domain;
    std::vector<Point> boundary;  // dense boundary samples
    double spacing;               // max gap between samples
};

std::vector<Case> cases() {
    std::vector<Case> out;
    const int n = 4000;
    out.push_back({Domain(Ball{Point(0.5, -1.0), 2.0}, "ball"), oracle::circle(Point(0.5, -1.0), 2.0, n),
                   2.0 * M_PI * 2.0 / n});
    {
        auto b = oracle::circle(Point(0, 0), 1.0, n);
        b.push_back(Point(0.3, 0.2));
        out.push_back({Domain(PuncturedBall{Point(0, 0), 1.0, Point(0.3, 0.2)}, "punctured"), b, 2.0 * M_PI / n});
    }
    {
        auto b = oracle::circle(Point(0, 0), 1.0, n);
        auto s = oracle::segment(Point(0, 0), Point(1, 0), n);
        b.insert(b.end(), s.begin(), s.end());
        out.push_back({Domain(SlitDisk{}, "slit"), b, 2.0 * M_PI / n});
    }
    {
        std::vector<Point> b;
        for (int i = 0; i <= n; ++i) b.push_back(Point(-10.0 + 20.0 * i / n, 0.0));
        out.push_back({Domain(HalfPlane{2}, "half_plane"), b, 20.0 / n});
    }
    {
        // straight tube: two long sides and two end caps
        const double L = 3.0, r = 0.2;
        auto b = oracle::segment(Point(0, r), Point(L, r), n);
        auto c = oracle::segment(Point(0, -r), Point(L, -r), n);
        b.insert(b.end(), c.begin(), c.end());
        for (int i = 0; i <= n / 4; ++i) {
            const double t = M_PI / 2 + M_PI * i / (n / 4);
            b.push_back(Point(r * std::cos(t), r * std::sin(t)));
            b.push_back(Point(L - r * std::cos(t), r * std::sin(t)));
        }
        out.push_back({Domain(StraightTube{L, r, 2}, "tube"), b, std::max(L / n, M_PI * r / (n / 4))});
    }
    return out;
}

}  // namespace

TEST_SUITE("domain") {
    TEST_CASE("boundary distance matches brute-force boundary sampling") {
        std::mt19937_64 rng(11);
        for (auto& c : cases()) {
            CAPTURE(c.domain.name());
            const auto pts = c.domain.sample_interior(300, 1e-3, 17);
            for (const Point& p : pts) {
                const double brute = oracle::nearest(p, c.boundary);
                // Sampled boundary overestimates the distance by at most half a gap.
                CHECK(c.domain.dist_to_boundary(p) <= brute + 1e-12);
                CHECK(c.domain.dist_to_boundary(p) >= brute - c.spacing);
            }
        }
    }

    TEST_CASE("closed forms") {
        const Domain ball(Ball{Point(0, 0), 1.0});
        CHECK(ball.dist_to_boundary(Point(0.25, 0)) == doctest::Approx(0.75));
        const Domain slit(SlitDisk{});
        CHECK(slit.dist_to_boundary(Point(0.5, 0.1)) == doctest::Approx(0.1));
        CHECK(slit.dist_to_boundary(Point(-0.5, 0.0)) == doctest::Approx(0.5));
        CHECK_FALSE(slit.contains(Point(0.5, 0.0)));
        CHECK_FALSE(slit.contains(Point(0.0, 0.0)));
        const Domain h3(HalfPlane{3});
        CHECK(h3.dist_to_boundary(Point(4, -2, 0.7)) == doctest::Approx(0.7));
        const Domain pb(PuncturedBall{Point(0, 0), 1.0, Point(0.5, 0)});
        CHECK_FALSE(pb.contains(Point(0.5, 0)));
        CHECK(pb.dist_to_boundary(Point(0.6, 0)) == doctest::Approx(0.1));
        const Domain z(ZigzagTube{{Point(0, 0), Point(1, 0), Point(1, 1)}, 0.05});
        CHECK(z.dist_to_boundary(Point(0.5, 0.01)) == doctest::Approx(0.04));
        CHECK(z.contains(Point(1.0, 0.5)));
        CHECK_FALSE(z.contains(Point(0.5, 0.5)));
    }

    TEST_CASE("membership errors name the point") {
        const Domain ball(Ball{Point(0, 0), 1.0});
        try {
            (void)ball.dist_to_boundary(Point(2.0, 0.0));
            FAIL("expected a membership error");
        } catch (const DomainMembershipError& e) {
            CHECK(std::string(e.what()).find("2") != std::string::npos);
        }
    }

    TEST_CASE("validation") {
        CHECK_THROWS_AS(Domain(Ball{Point(0, 0), -1.0}), ValidationError);
        CHECK_THROWS_AS(Domain(Ball{Point(0, 0), 0.0}), ValidationError);
        CHECK_THROWS_AS(Domain(PuncturedBall{Point(0, 0), 1.0, Point(1.0, 0)}), ValidationError);
        CHECK_THROWS_AS(Domain(ZigzagTube{{Point(0, 0), Point(1, 0)}, 0.2}), ValidationError);
        CHECK_THROWS_AS(Domain(ZigzagTube{{Point(0, 0), Point(0, 0), Point(1, 0)}, 0.01}), ValidationError);
        CHECK_THROWS_AS(Domain(HalfPlane{4}), ValidationError);
    }

    TEST_CASE("distance is 1-Lipschitz and vanishes off the domain") {
        std::mt19937_64 rng(3);
        for (auto& c : cases()) {
            CAPTURE(c.domain.name());
            const auto pts = c.domain.sample_interior(200, 0.0, 23);
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                const double dd = std::abs(c.domain.dist_to_boundary(pts[i]) - c.domain.dist_to_boundary(pts[i + 1]));
                CHECK(dd <= distance(pts[i], pts[i + 1]) + 1e-12);
            }
        }
    }

    TEST_CASE("segment certification is conservative") {
        const Domain slit(SlitDisk{});
        CHECK(slit.segment_inside(Point(-0.5, 0.1), Point(-0.5, -0.1)));
        CHECK_FALSE(slit.segment_inside(Point(0.5, 0.1), Point(0.5, -0.1)));
        CHECK_FALSE(slit.segment_inside(Point(0.5, 0.1), Point(1.5, 0.1)));
        // property: certified segments have every sampled point interior
        std::mt19937_64 rng(9);
        const auto pts = slit.sample_interior(400, 1e-4, 31);
        int certified = 0;
        for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
            if (!slit.segment_inside(pts[i], pts[i + 1])) continue;
            ++certified;
            for (int k = 0; k <= 200; ++k) CHECK(slit.contains(lerp(pts[i], pts[i + 1], k / 200.0)));
        }
        CHECK(certified > 20);
    }

    TEST_CASE("frames scale distances and share shape keys") {
        const Domain unit(Ball{Point(0, 0), 1.0}, "unit");
        const Domain placed = unit.transformed(Frame::planar(3.0, 0.7, Point(2.0, 5.0)), "placed");
        CHECK(placed.shape_key() == unit.shape_key());
        const Point p(0.3, -0.4);
        const Point w = placed.frame().apply(p);
        CHECK(placed.dist_to_boundary(w) == doctest::Approx(3.0 * unit.dist_to_boundary(p)).epsilon(1e-13));
        CHECK(placed.contains(w));
    }

    TEST_CASE("sampling is deterministic and respects the margin") {
        const Domain slit(SlitDisk{});
        const auto a = slit.sample_interior(100, 0.05, 42);
        const auto b = slit.sample_interior(100, 0.05, 42);
        REQUIRE(a.size() == 100);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i] == b[i]);
            CHECK(slit.dist_to_boundary(a[i]) >= 0.05);
        }
        CHECK_THROWS_AS(slit.sample_interior(5, 0.9, 1), SamplingError);
    }
}
