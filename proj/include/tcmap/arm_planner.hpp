#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tcmap::arm {

struct Arm {
    double l1 = 2.0;
    double l2 = 1.0;
};

/* Throws InvalidParameter unless l1 > l2 > 0. */
void check_arm(const Arm& arm);

struct ArmConfig {
    double theta = 0.0;  // base joint
    double phi = 0.0;    // elbow joint
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/* Representative in (-pi, pi]. */
double normalize_angle(double a);
/* Distance on the circle, in [0, pi]. */
double circular_distance(double a, double b);

Point end_effector(const Arm& arm, const ArmConfig& c);
/* Polar angle of the end effector: the realized work map T^2 -> S^1. */
double angle_map(const Arm& arm, const ArmConfig& c);
/* Section s(x) = (x, 0) of the angle map. */
ArmConfig section(double x);

enum class Region { U1, U2, W11, W12, W21, W22 };
const char* to_string(Region r);

inline constexpr double default_margin = 1e-6;

/* Regions of the work-map planner containing the pair of images (a, b). */
std::vector<Region> classify_angles(double a, double b, double delta = default_margin);
std::vector<Region> classify_region(const Arm& arm, const ArmConfig& c1, const ArmConfig& c2,
                                    double delta = default_margin);

struct PlannerPath {
    std::vector<ArmConfig> samples;  // uniform grid on [0, 1]
    Region region = Region::U1;
};

PlannerPath plan(const Arm& arm, const ArmConfig& c1, const ArmConfig& c2, Region region, int steps,
                 double delta = default_margin);

/* Component-wise circle planner on T^2 = S^1 x S^1. */
PlannerPath plan_naive_identity(const ArmConfig& c1, const ArmConfig& c2, int steps, double delta = default_margin);

struct VerifyOptions {
    Arm arm;
    std::uint64_t seed = 7;
    std::uint64_t samples = 100000;
    int steps = 64;
    bool naive_identity = false;
    double delta = default_margin;
};

struct PlannerStats {
    std::uint64_t samples = 0;
    std::map<std::string, std::uint64_t> region_hits;     // region used for planning
    std::map<std::string, std::uint64_t> region_members;  // pairs lying in each region
    double max_endpoint_error = 0.0;
    double max_continuity_gap = 0.0;
    std::uint64_t uncovered = 0;
    std::uint64_t annulus_violations = 0;
    double max_lipschitz_ratio = 0.0;  // sup path distance / input perturbation
    std::size_t regions_used() const { return region_hits.size(); }
};

PlannerStats verify_planner(const VerifyOptions& opts);

}  // namespace tcmap::arm
