#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qhkit/errors.hpp"
#include "qhkit/path.hpp"

using namespace qhkit;

TEST_SUITE("path") {
    TEST_CASE("radial segment in the unit disk") {
        const Domain ball(Ball{Point(0, 0), 1.0});
        for (double t : {0.1, 0.5, 0.9, 0.99}) {
            const MetricEstimate m = qh_length(Path{{Point(0, 0), Point(t, 0)}}, ball, 1e-10);
            CHECK(m.value == doctest::Approx(-std::log1p(-t)).epsilon(1e-9));
            CHECK(m.kind == EstimateKind::exact);
        }
    }

    TEST_CASE("vertical segment in the half-plane") {
        const Domain h(HalfPlane{2});
        const MetricEstimate m = qh_length(Path{{Point(0.3, 0.01), Point(0.3, 2.0)}}, h, 1e-10);
        CHECK(m.value == doctest::Approx(std::log(200.0)).epsilon(1e-9));
    }

    TEST_CASE("quadrature lies in the Lipschitz enclosure") {
        const std::vector<Domain> doms = {Domain(SlitDisk{}, "slit"), Domain(Ball{Point(0, 0), 1.0}, "ball"),
                                          Domain(StraightTube{3.0, 0.2, 2}, "tube"),
                                          Domain(PuncturedBall{Point(0, 0), 1.0, Point(0.1, 0.1)}, "punctured")};
        for (const Domain& d : doms) {
            CAPTURE(d.name());
            const auto pts = d.sample_interior(60, 0.02, 8);
            int tested = 0;
            for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
                if (!d.segment_inside(pts[i], pts[i + 1])) continue;
                const double v = qh_length(Path{{pts[i], pts[i + 1]}}, d, 1e-9).value;
                const auto [lo, hi] = oracle::lipschitz_enclosure(d, pts[i], pts[i + 1], 20000);
                CHECK(v >= lo - 1e-9);
                CHECK(v <= hi + 1e-9);
                ++tested;
            }
            CHECK(tested > 3);
        }
    }

    TEST_CASE("length is additive over subpaths") {
        const Domain slit(SlitDisk{});
        const Path p{{Point(0.5, 0.2), Point(-0.1, 0.3), Point(-0.3, -0.2), Point(0.4, -0.1)}};
        const double whole = qh_length(p, slit, 1e-10).value;
        const double parts = qh_length(p.subpath(0, 1), slit, 1e-10).value + qh_length(p.subpath(1, 3), slit, 1e-10).value;
        CHECK(whole == doctest::Approx(parts).epsilon(1e-9));
        CHECK(p.euclidean_length() > 0.0);
    }

    TEST_CASE("similar placements give the same length") {
        const Domain unit(SlitDisk{});
        const Frame f = Frame::planar(4.0, 1.1, Point(-2.0, 3.0));
        const Domain placed = unit.transformed(f);
        const Path p{{Point(0.5, 0.2), Point(-0.1, 0.3)}};
        const Path q{{f.apply(p.points[0]), f.apply(p.points[1])}};
        CHECK(qh_length(q, placed).value == doctest::Approx(qh_length(p, unit).value).epsilon(1e-12));
    }

    TEST_CASE("invalid paths") {
        const Domain slit(SlitDisk{});
        CHECK_THROWS_AS(qh_length(Path{{Point(0.5, 0.1), Point(0.5, -0.1)}}, slit), PathError);
        CHECK_THROWS_AS(qh_length(Path{{Point(0.5, 0.1)}}, slit), PathError);
        CHECK_THROWS_AS(qh_length(Path{{Point(0.5, 0.1), Point(0.5, 0.1)}}, slit), PathError);
        CHECK_THROWS_AS(qh_length(Path{{Point(-0.5, 0.1), Point(-0.4, 0.1)}}, slit, -1.0), ValidationError);
    }
}
