#include <cmath>
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"
#include "tcmap/arm_planner.hpp"
#include "tcmap/error.hpp"

using namespace tcmap;
using namespace tcmap::arm;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("angles normalize into (-pi, pi]", "[arm-planner]")
{
    CHECK(normalize_angle(pi) == Approx(pi));
    CHECK(normalize_angle(-pi) == Approx(pi));
    CHECK(normalize_angle(3 * pi / 2) == Approx(-pi / 2));
    CHECK(circular_distance(0.1, 2 * pi - 0.1) == Approx(0.2));
    CHECK(circular_distance(0.0, pi) == Approx(pi));
}

TEST_CASE("arm lengths are checked", "[arm-planner]")
{
    CHECK_NOTHROW(check_arm(Arm{2.0, 1.0}));
    CHECK_THROWS_AS(check_arm(Arm{1.0, 1.0}), Error);
    CHECK_THROWS_AS(check_arm(Arm{1.0, 2.0}), Error);
    CHECK_THROWS_AS(check_arm(Arm{1.0, 0.0}), Error);
}

TEST_CASE("the section is a right inverse of the angle map", "[arm-planner]")
{
    Arm arm{2.0, 1.0};
    for (double x = -3.0; x <= 3.0; x += 0.25)
        CHECK(circular_distance(angle_map(arm, section(x)), x) < 1e-12);
    Point p = end_effector(arm, ArmConfig{0.0, pi});
    CHECK(p.x == Approx(1.0));
    CHECK(std::abs(p.y) < 1e-12);
}

TEST_CASE("every pair of angles lies in some region", "[arm-planner]")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-pi, pi);
    for (int i = 0; i < 2000; ++i)
        CHECK_FALSE(classify_angles(u(rng), u(rng)).empty());
    auto antipodal = classify_angles(0.0, pi);
    for (Region r : antipodal)
        CHECK(r != Region::U1);
    auto same = classify_angles(0.3, 0.3);
    CHECK(std::find(same.begin(), same.end(), Region::U1) != same.end());
}

TEST_CASE("planned paths join the endpoints", "[arm-planner]")
{
    Arm arm{2.0, 1.0};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-pi, pi);
    for (int i = 0; i < 500; ++i) {
        ArmConfig c1{u(rng), u(rng)}, c2{u(rng), u(rng)};
        auto regions = classify_region(arm, c1, c2);
        REQUIRE_FALSE(regions.empty());
        PlannerPath path = plan(arm, c1, c2, regions.front(), 32);
        REQUIRE(path.samples.size() == 32);
        // the work-map planner joins f(c1) to f(c2)
        CHECK(circular_distance(angle_map(arm, path.samples.front()), angle_map(arm, c1)) < 1e-9);
        CHECK(circular_distance(angle_map(arm, path.samples.back()), angle_map(arm, c2)) < 1e-9);

        PlannerPath naive = plan_naive_identity(c1, c2, 16);
        CHECK(circular_distance(naive.samples.front().phi, c1.phi) < 1e-9);
        CHECK(circular_distance(naive.samples.back().theta, c2.theta) < 1e-9);
    }
}

TEST_CASE("verification uses two regions for the work map", "[arm-planner]")
{
    VerifyOptions opts;
    opts.samples = 5000;
    opts.steps = 32;
    PlannerStats s = verify_planner(opts);
    CHECK(s.samples == 5000);
    CHECK(s.regions_used() == 2);
    CHECK(s.uncovered == 0);
    CHECK(s.annulus_violations == 0);
    CHECK(s.max_endpoint_error < 1e-9);
    CHECK(s.max_continuity_gap < pi / 8);

    opts.naive_identity = true;
    PlannerStats n = verify_planner(opts);
    CHECK(n.regions_used() > 2);
    CHECK(n.uncovered == 0);

    VerifyOptions again;
    again.samples = 5000;
    again.steps = 32;
    PlannerStats t = verify_planner(again);
    CHECK(t.region_hits == s.region_hits);
    CHECK(t.max_endpoint_error == s.max_endpoint_error);
}
