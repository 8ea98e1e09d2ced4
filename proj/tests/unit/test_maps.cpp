#include <doctest.h>

#include <random>

#include "qhkit/errors.hpp"
#include "qhkit/maps.hpp"
#include "qhkit/sampling.hpp"

using namespace qhkit;

namespace {

const double kBend = M_PI / 2;

}  // namespace

TEST_SUITE("maps") {
    TEST_CASE("identity and similarity") {
        const Domain ball(Ball{Point(0, 0), 1.0}, "ball");
        const MapUnderTest id = identity_map(ball);
        CHECK(id.forward(Point(0.3, 0.2)) == Point(0.3, 0.2));
        const MapUnderTest s = similarity(3.0, M_PI / 2, Point(1.0, 2.0), ball);
        for (const Point& p : ball.sample_interior(50, 0.0, 1)) {
            const Point w = s.forward(p);
            CHECK(distance(s.inverse(w), p) < 1e-12);
            CHECK(s.target.contains(w));
            CHECK(s.target.dist_to_boundary(w) == doctest::Approx(3.0 * ball.dist_to_boundary(p)).epsilon(1e-12));
        }
        CHECK(s.advertised.qh.value() == 1.0);
        const MapUnderTest inv = s.inverted();
        CHECK(distance(inv.forward(s.forward(Point(0.1, 0.1))), Point(0.1, 0.1)) < 1e-12);
        CHECK(inv.source.shape_key() == s.target.shape_key());
    }

    TEST_CASE("radial stretch") {
        const Domain ball(Ball{Point(1, 1), 2.0}, "ball");
        const MapUnderTest f = radial_stretch(2.0, ball);
        CHECK(distance(f.forward(Point(2, 1)), Point(1.5, 1)) < 1e-14);  // 1 + 1 * (1/2)
        for (const Point& p : ball.sample_interior(200, 0.0, 3)) {
            CHECK(distance(f.inverse(f.forward(p)), p) < 1e-12);
            CHECK(ball.contains(f.forward(p)));
        }
        // radii are mapped monotonically and the boundary circle is fixed
        CHECK(distance(f.forward(Point(1 + 2.0 * (1 - 1e-15), 1)), Point(3, 1)) < 1e-12);
        CHECK_THROWS_AS(radial_stretch(-1.0, ball), ValidationError);
        CHECK_THROWS_AS(radial_stretch(2.0, Domain(SlitDisk{})), ValidationError);
    }

    TEST_CASE("straightener is a homeomorphism onto the zigzag") {
        for (int m : {2, 4, 7}) {
            const MapUnderTest z = zigzag_straightener(m, 0.05, kBend);
            CAPTURE(m);
            for (const Point& p : z.source.sample_interior(2000, 0.0, static_cast<std::uint64_t>(m))) {
                const Point w = z.forward(p);
                REQUIRE(z.target.contains(w));
                CHECK(distance(z.inverse(w), p) < 1e-9);
            }
            for (const Point& w : z.target.sample_interior(2000, 0.0, 100 + static_cast<std::uint64_t>(m))) {
                const Point p = z.inverse(w);
                REQUIRE(z.source.contains(p));
                CHECK(distance(z.forward(p), w) < 1e-9);
            }
        }
    }

    TEST_CASE("straightener preserves arclength along the axis") {
        ZigzagLayout layout;
        layout.row_pieces = 1;  // every piece ends at a bend
        const MapUnderTest z = zigzag_straightener(6, 0.05, kBend, layout);
        const auto& verts = std::get<ZigzagTube>(z.target.shape()).vertices;
        REQUIRE(verts.size() == 7);
        for (std::size_t k = 0; k < verts.size(); ++k)
            CHECK(distance(z.forward(Point(layout.segment_length * k, 0.0)), verts[k]) < 1e-12);
        // mid-segment axis points go to segment midpoints
        CHECK(distance(z.forward(Point(2.5 * layout.segment_length, 0)), lerp(verts[2], verts[3], 0.5)) < 1e-12);
        // boundary distance is preserved away from the bends
        const Point p(2.5 * layout.segment_length, 0.03);
        CHECK(z.target.dist_to_boundary(z.forward(p)) == doctest::Approx(z.source.dist_to_boundary(p)).epsilon(1e-12));
    }

    TEST_CASE("straightener locally bilipschitz") {
        const MapUnderTest z = zigzag_straightener(5, 0.05, kBend);
        double worst = 1.0;
        for (const auto& [x, y] : sample_local_pairs(z.source, 3000, 0.0, 0.5, 9)) {
            const double q = distance(z.forward(x), z.forward(y)) / distance(x, y);
            worst = std::max({worst, q, 1.0 / q});
        }
        CHECK(worst < 10.0);
    }

    TEST_CASE("straightener validation") {
        CHECK_THROWS_AS(zigzag_straightener(0, 0.05, kBend), ValidationError);
        CHECK_THROWS_AS(zigzag_straightener(3, 0.5, kBend), ValidationError);
        CHECK_THROWS_AS(zigzag_straightener(3, 0.05, 0.0), ValidationError);
    }

    TEST_CASE("pushed paths are certified in the target") {
        const MapUnderTest z = zigzag_straightener(4, 0.05, kBend);
        const Path src{{Point(0.1, 0.0), Point(5.4, 0.02)}};
        const Path img = push_path(z, src, 1e-3);
        CHECK(img.size() > 2);
        CHECK_NOTHROW(validate_path(z.target, img));
        CHECK(distance(img.front(), z.forward(src.front())) < 1e-12);
        CHECK(distance(img.back(), z.forward(src.back())) < 1e-12);
    }
}
