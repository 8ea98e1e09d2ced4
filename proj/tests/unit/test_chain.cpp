#include <doctest.h>

#include "qhkit/chain.hpp"
#include "qhkit/errors.hpp"
#include "qhkit/metrics.hpp"
#include "qhkit/sampling.hpp"

using namespace qhkit;

TEST_SUITE("chain") {
    TEST_CASE("radial path follows the halving recursion") {
        const Domain ball(Ball{Point(0, 0), 1.0});
        const auto chain = chain_decompose(ball, Path{{Point(0, 0), Point(0.9, 0)}}, 0.5);
        // x_{k+1} = x_k + (1 - x_k)/2 until the rest of the path fits in the ball
        std::vector<double> expect;
        for (double x = 0.0; x <= 0.9; x += 0.5 * (1.0 - x)) {
            expect.push_back(x);
            if (0.9 - x <= 0.5 * (1.0 - x)) break;
        }
        REQUIRE(chain.size() == expect.size());
        for (std::size_t i = 0; i < chain.size(); ++i) {
            CHECK(chain[i].point[0] == doctest::Approx(expect[i]).epsilon(1e-14));
            CHECK(chain[i].point[1] == 0.0);
        }
    }

    TEST_CASE("chain points sit on the path at the prescribed spacing") {
        const std::vector<Domain> doms = {Domain(Ball{Point(0, 0), 1.0}, "ball"), Domain(SlitDisk{}, "slit")};
        for (const Domain& d : doms) {
            for (const auto& [x, y] : sample_pairs(d, 8, 0.01, 77)) {
                const Path p = extract_neargeodesic(d, x, y, 3);
                for (double lambda : {0.25, 0.5}) {
                    const auto chain = chain_decompose(d, p, lambda);
                    REQUIRE(!chain.empty());
                    CHECK(chain.front().point == x);
                    for (std::size_t i = 0; i < chain.size(); ++i) {
                        const auto& c = chain[i];
                        CHECK(distance_to_segment(c.point, p.points[c.segment], p.points[c.segment + 1]) <= 1e-12);
                        if (i + 1 < chain.size()) {
                            const double step = distance(c.point, chain[i + 1].point);
                            CHECK(std::abs(step - lambda * d.dist_to_boundary(c.point)) <= 1e-10);
                            const bool ahead = chain[i + 1].segment > c.segment ||
                                               (chain[i + 1].segment == c.segment && chain[i + 1].t > c.t);
                            CHECK(ahead);
                        }
                    }
                    // the remainder of the path lies in the last ball
                    const auto& last = chain.back();
                    const double r = lambda * d.dist_to_boundary(last.point);
                    for (std::size_t k = last.segment + 1; k < p.size(); ++k)
                        CHECK(distance(p.points[k], last.point) <= r * (1.0 + 1e-12));
                }
            }
        }
    }

    TEST_CASE("step fraction is validated") {
        const Domain ball(Ball{Point(0, 0), 1.0});
        const Path p{{Point(0, 0), Point(0.5, 0)}};
        CHECK_THROWS_AS(chain_decompose(ball, p, 0.0), ValidationError);
        CHECK_THROWS_AS(chain_decompose(ball, p, 1.0), ValidationError);
    }
}
