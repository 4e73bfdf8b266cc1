#include "tcmap/arm_planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "tcmap/error.hpp"

namespace tcmap::arm {

namespace {

constexpr double pi = std::numbers::pi;

bool contains(const std::vector<Region>& rs, Region r) { return std::find(rs.begin(), rs.end(), r) != rs.end(); }

/* Signed sweep from a to b for the given circle section. */
double sweep(double a, double b, bool shorter)
{
    if (shorter)
        return normalize_angle(b - a);
    double s = std::fmod(b - a, 2 * pi);
    if (s < 0)
        s += 2 * pi;
    return s;
}

double path_distance(const PlannerPath& p, const PlannerPath& q)
{
    double m = 0.0;
    for (std::size_t i = 0; i < p.samples.size(); ++i) {
        m = std::max(m, circular_distance(p.samples[i].theta, q.samples[i].theta));
        m = std::max(m, circular_distance(p.samples[i].phi, q.samples[i].phi));
    }
    return m;
}

double max_gap(const PlannerPath& p)
{
    double g = 0.0;
    for (std::size_t i = 1; i < p.samples.size(); ++i) {
        g = std::max(g, circular_distance(p.samples[i - 1].theta, p.samples[i].theta));
        g = std::max(g, circular_distance(p.samples[i - 1].phi, p.samples[i].phi));
    }
    return g;
}

/* 1 = shorter arc, 2 = counterclockwise arc, 0 = neither. */
int circle_choice(double a, double b, double delta)
{
    const double d = circular_distance(a, b);
    const bool first = d < pi - delta;
    const bool second = d > delta;
    if (first && (d <= pi / 2 || !second))
        return 1;
    if (second)
        return 2;
    return 0;
}

}  // namespace

void check_arm(const Arm& arm)
{
    if (!(arm.l2 > 0.0) || !(arm.l1 > arm.l2) || !std::isfinite(arm.l1))
        throw Error(ErrorCode::InvalidParameter, "arm lengths must satisfy l1 > l2 > 0");
}

double normalize_angle(double a)
{
    double r = std::remainder(a, 2 * pi);
    if (r <= -pi)
        r += 2 * pi;
    return r;
}

double circular_distance(double a, double b) { return std::abs(normalize_angle(a - b)); }

Point end_effector(const Arm& arm, const ArmConfig& c)
{
    return {arm.l1 * std::cos(c.theta) + arm.l2 * std::cos(c.theta + c.phi),
            arm.l1 * std::sin(c.theta) + arm.l2 * std::sin(c.theta + c.phi)};
}

double angle_map(const Arm& arm, const ArmConfig& c)
{
    if (c.phi == 0.0)
        return normalize_angle(c.theta);
    Point p = end_effector(arm, c);
    return std::atan2(p.y, p.x);
}

ArmConfig section(double x) { return {normalize_angle(x), 0.0}; }

const char* to_string(Region r)
{
    switch (r) {
    case Region::U1: return "U1";
    case Region::U2: return "U2";
    case Region::W11: return "W11";
    case Region::W12: return "W12";
    case Region::W21: return "W21";
    case Region::W22: return "W22";
    }
    return "?";
}

std::vector<Region> classify_angles(double a, double b, double delta)
{
    std::vector<Region> out;
    if (circular_distance(a, b + pi) > delta)
        out.push_back(Region::U1);
    if (circular_distance(a, b) > delta)
        out.push_back(Region::U2);
    return out;
}

std::vector<Region> classify_region(const Arm& arm, const ArmConfig& c1, const ArmConfig& c2, double delta)
{
    return classify_angles(angle_map(arm, c1), angle_map(arm, c2), delta);
}

PlannerPath plan(const Arm& arm, const ArmConfig& c1, const ArmConfig& c2, Region region, int steps, double delta)
{
    if (steps < 2)
        throw Error(ErrorCode::InvalidParameter, "a path needs at least 2 steps");
    if (!contains(classify_region(arm, c1, c2, delta), region))
        throw Error(ErrorCode::RegionMismatch,
                    std::string("configuration pair does not lie in region ") + to_string(region));
    const double a = angle_map(arm, c1);
    const double b = angle_map(arm, c2);
    const double s = sweep(a, b, region == Region::U1);
    PlannerPath p;
    p.region = region;
    p.samples.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double t = i == steps - 1 ? 1.0 : double(i) / (steps - 1);
        p.samples.push_back(section(a + t * s));
    }
    return p;
}

PlannerPath plan_naive_identity(const ArmConfig& c1, const ArmConfig& c2, int steps, double delta)
{
    if (steps < 2)
        throw Error(ErrorCode::InvalidParameter, "a path needs at least 2 steps");
    int i = circle_choice(c1.theta, c2.theta, delta);
    int j = circle_choice(c1.phi, c2.phi, delta);
    // both conditions fail only for delta >= pi/2
    if (i == 0 || j == 0)
        throw Error(ErrorCode::InvalidParameter, "margin too large for the circle planner");
    static constexpr Region table[2][2] = {{Region::W11, Region::W12}, {Region::W21, Region::W22}};
    const double st = sweep(c1.theta, c2.theta, i == 1);
    const double sp = sweep(c1.phi, c2.phi, j == 1);
    PlannerPath p;
    p.region = table[i - 1][j - 1];
    p.samples.reserve(steps);
    for (int k = 0; k < steps; ++k) {
        if (k == 0) {
            p.samples.push_back(c1);
        } else if (k == steps - 1) {
            p.samples.push_back(c2);
        } else {
            const double t = double(k) / (steps - 1);
            p.samples.push_back({normalize_angle(c1.theta + t * st), normalize_angle(c1.phi + t * sp)});
        }
    }
    return p;
}

PlannerStats verify_planner(const VerifyOptions& o)
{
    check_arm(o.arm);
    if (o.samples < 1)
        throw Error(ErrorCode::InvalidParameter, "verification needs at least one sample");
    if (o.steps < 2)
        throw Error(ErrorCode::InvalidParameter, "a path needs at least 2 steps");
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double eps = 1e-4;
    const double rmin = o.arm.l1 - o.arm.l2;
    const double rmax = o.arm.l1 + o.arm.l2;

    PlannerStats st;
    st.samples = o.samples;
    for (std::uint64_t n = 0; n < o.samples; ++n) {
        ArmConfig c1{normalize_angle(angle(rng)), normalize_angle(angle(rng))};
        ArmConfig c2{normalize_angle(angle(rng)), normalize_angle(angle(rng))};
        ArmConfig c3{normalize_angle(c2.theta + eps * unit(rng)), normalize_angle(c2.phi + eps * unit(rng))};

        for (const auto& c : {c1, c2}) {
            const Point p = end_effector(o.arm, c);
            const double r = std::hypot(p.x, p.y);
            if (r < rmin - 1e-12 || r > rmax + 1e-12)
                ++st.annulus_violations;
        }

        PlannerPath path, nearby;
        double err = 0.0;
        bool compare = false;
        if (o.naive_identity) {
            path = plan_naive_identity(c1, c2, o.steps, o.delta);
            ++st.region_members[to_string(path.region)];
            err = std::max({circular_distance(path.samples.front().theta, c1.theta),
                            circular_distance(path.samples.front().phi, c1.phi),
                            circular_distance(path.samples.back().theta, c2.theta),
                            circular_distance(path.samples.back().phi, c2.phi)});
            nearby = plan_naive_identity(c1, c3, o.steps, o.delta);
            const double m = 10 * eps;
            compare = nearby.region == path.region && circular_distance(c1.theta, c2.theta) > m &&
                      circular_distance(c1.theta, c2.theta) < pi - m && circular_distance(c1.phi, c2.phi) > m &&
                      circular_distance(c1.phi, c2.phi) < pi - m;
        } else {
            const double a = angle_map(o.arm, c1);
            const double b = angle_map(o.arm, c2);
            const auto regions = classify_angles(a, b, o.delta);
            if (regions.empty()) {
                ++st.uncovered;
                continue;
            }
            for (Region r : regions)
                ++st.region_members[to_string(r)];
            Region r = regions.front();
            if (regions.size() == 2 && circular_distance(a, b) > pi / 2)
                r = Region::U2;
            path = plan(o.arm, c1, c2, r, o.steps, o.delta);
            err = std::max(circular_distance(angle_map(o.arm, path.samples.front()), a),
                           circular_distance(angle_map(o.arm, path.samples.back()), b));
            const double m = 10 * eps * (o.arm.l1 + o.arm.l2) / (o.arm.l1 - o.arm.l2);
            const double boundary = r == Region::U1 ? circular_distance(a, b + pi) : circular_distance(a, b);
            if (boundary > m) {
                nearby = plan(o.arm, c1, c3, r, o.steps, o.delta);
                compare = true;
            }
        }
        ++st.region_hits[to_string(path.region)];
        st.max_endpoint_error = std::max(st.max_endpoint_error, err);
        st.max_continuity_gap = std::max(st.max_continuity_gap, max_gap(path));
        if (compare) {
            const double input = std::max(circular_distance(c2.theta, c3.theta), circular_distance(c2.phi, c3.phi));
            if (input > 0)
                st.max_lipschitz_ratio = std::max(st.max_lipschitz_ratio, path_distance(path, nearby) / input);
        }
    }
    return st;
}

}  // namespace tcmap::arm
