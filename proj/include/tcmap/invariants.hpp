#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcmap/graded_algebra.hpp"

namespace tcmap::invariants {

using algebra::AlgebraMorphism;
using algebra::GradedAlgebra;
using algebra::WorkMap;
using linalg::GradedSubspace;

enum class BoundKind { Lower, Upper, Exact, Certificate };

const char* to_string(BoundKind kind);

struct BoundReport {
    std::string invariant;     // "TC(f)", "TC(f_Q)", "cat(f)", ...
    std::optional<int> value;  // nullopt prints as "unknown"
    BoundKind kind = BoundKind::Lower;
    std::string citation;
    std::vector<std::string> inputs;
    std::string note;
};

/* Largest n with S^n != 0 inside B; 0 for S = 0. */
int nil_index(const GradedSubspace& S, const GradedAlgebra& B);

/* Homogeneous kernel of a degree-preserving linear map out of `domain`. */
GradedSubspace graded_kernel(const linalg::LinearMap& map, std::shared_ptr<const linalg::GradedBasis> domain);

/* Im(f*⊗f*) ∩ ker μ in positive degrees, inside `square` = H*(X)⊗H*(X). */
GradedSubspace restricted_zero_divisors(const WorkMap& f, const GradedAlgebra& square);
GradedSubspace restricted_zero_divisors(const WorkMap& f);

int tc_lower_bound(const WorkMap& f);

/* f_star: H*(X) -> H*(B), p_star: H*(B) -> H*(E); nil of Im f̃_star ∩ ker p_star. */
int secat_lower_bound(const AlgebraMorphism& p_star, const AlgebraMorphism& f_star);

int cat_image_cuplength(const WorkMap& f);

/* Exact TC(f_Q) for formal simply connected maps. With `override_hypotheses`
 * a failing hypothesis downgrades the entry to a lower bound. */
BoundReport formal_tc(const WorkMap& f, bool override_hypotheses = false);

std::vector<BoundReport> bounds_report(const WorkMap& f);

/* WorkMap id: X -> X, used for TC(X). */
WorkMap identity_work_map(algebra::AlgebraPtr x, bool formal, std::optional<int> known_tc = std::nullopt);

namespace citation {
inline constexpr const char* zero_divisor = "nil ker(cup)|Im(f×f)* <= TC(f) (restricted zero-divisor cup-length)";
inline constexpr const char* secat = "nil ker p*|Im f* <= secat_f(p)";
inline constexpr const char* sandwich = "cat(f) <= TC(f) <= min{TC(X), cat(f×f)}";
inline constexpr const char* image_cuplength = "nil Im f̃* <= cat(f) (cup-length of the image, auxiliary)";
inline constexpr const char* trivial = "TC(f) = 0 iff f is null-homotopic";
inline constexpr const char* coh = "co-H target: TC(f) <= cat(f×f) <= 2 cat(Y) = 2";
inline constexpr const char* formal = "formal maps: TC(f_Q) = nil ker(cup)|Im(f×f)*";
inline constexpr const char* rational = "TC(f_Q) <= TC(f)";
inline constexpr const char* identity = "TC(X) = TC(id_X)";
inline constexpr const char* strict_factorization = "mu(psi⊗psi) vanishes on K^{n+1}: strict factorization, TC(f_Q) <= n";
inline constexpr const char* homotopy_factorization =
    "mu(psi⊗psi) factors up to homotopy through a model of ΛV⊗ΛV/K^{n+1}: TC(f_Q) <= n";
inline constexpr const char* planner = "an explicit motion planner with k regions: TC(f) <= k-1";
}  // namespace citation

}  // namespace tcmap::invariants
