#include <random>

#include "catch_amalgamated.hpp"
#include "support.hpp"
#include "tcmap/catalog.hpp"
#include "tcmap/error.hpp"
#include "tcmap/invariants.hpp"

using namespace tcmap;
using namespace tcmap::invariants;
using algebra::Element;

namespace {

const BoundReport* find(const std::vector<BoundReport>& rs, const std::string& inv, BoundKind kind)
{
    for (const auto& r : rs)
        if (r.invariant == inv && r.kind == kind)
            return &r;
    return nullptr;
}

}  // namespace

TEST_CASE("nil index on known algebras", "[invariants]")
{
    auto CP = catalog::complex_projective(4);
    CHECK(nil_index(algebra::reduced_subspace(*CP), *CP) == 4);
    auto T = catalog::torus(3);
    CHECK(nil_index(algebra::reduced_subspace(*T), *T) == 3);
    auto S = catalog::sphere(5);
    CHECK(nil_index(algebra::reduced_subspace(*S), *S) == 1);
    CHECK(nil_index(linalg::GradedSubspace(CP->basis_ptr()), *CP) == 0);
    auto whole = linalg::GradedSubspace::span(CP->basis_ptr(), std::vector<Element>{CP->unit_element()});
    CHECK_THROWS_AS(nil_index(whole, *CP), Error);
}

TEST_CASE("nil index agrees with brute-force enumeration", "[invariants]")
{
    auto r = testing::nil_oracle(3, 20);
    INFO(r.first_failure);
    CHECK(r.failures == 0);
    CHECK(r.checks > 1000);
}

TEST_CASE("zero-divisor cup-length of catalog maps", "[invariants]")
{
    for (int n = 1; n <= 7; ++n)
        CHECK(tc_lower_bound(catalog::map("degree_self_sphere(" + std::to_string(n) + ",2)")) == (n % 2 ? 1 : 2));
    for (int n = 1; n <= 5; ++n)
        for (int m = n; m <= 5; ++m)
            CHECK(tc_lower_bound(catalog::map("cp_map(" + std::to_string(n) + "," + std::to_string(m) + ",3)")) ==
                  2 * n);
    CHECK(tc_lower_bound(catalog::map("torus_projection()")) == 1);
    CHECK(tc_lower_bound(catalog::map("torus_identity()")) == 2);
    CHECK(tc_lower_bound(catalog::map("cp_map(2,4,0)")) == 0);
    CHECK(cat_image_cuplength(catalog::map("cp_map(3,4,1)")) == 3);
}

TEST_CASE("tc_lower_bound is invariant under change of basis", "[invariants]")
{
    auto r = testing::basis_change(17, 60);
    INFO(r.first_failure);
    CHECK(r.failures == 0);
}

TEST_CASE("formal_tc enforces its hypotheses", "[invariants]")
{
    auto f = catalog::map("cp_map(2,2,1)");
    auto r = formal_tc(f);
    CHECK(r.kind == BoundKind::Exact);
    CHECK(r.value == 4);
    CHECK(r.invariant == "TC(f_Q)");

    auto g = catalog::map("torus_projection()");
    CHECK_THROWS_AS(formal_tc(g), Error);
    try {
        formal_tc(g);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSimplyConnected);
    }
    auto downgraded = formal_tc(g, true);
    CHECK(downgraded.kind == BoundKind::Lower);
    CHECK(downgraded.note.find("warning") != std::string::npos);

    f.flags.formal = false;
    try {
        formal_tc(f);
        FAIL("expected NotFormal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotFormal);
    }
}

TEST_CASE("bounds report sandwiches TC(f)", "[invariants]")
{
    auto rs = bounds_report(catalog::map("cp_map(3,5,1)"));
    REQUIRE(find(rs, "TC(f)", BoundKind::Exact));
    CHECK(find(rs, "TC(f)", BoundKind::Exact)->value == 6);
    CHECK(find(rs, "TC(f_Q)", BoundKind::Exact)->value == 6);
    for (const auto& r : rs)
        CHECK_FALSE(r.citation.empty());

    auto proj = bounds_report(catalog::map("torus_projection()"));
    CHECK_FALSE(find(proj, "TC(f)", BoundKind::Exact));
    CHECK(find(proj, "TC(f)", BoundKind::Lower)->value == 1);

    auto constant = bounds_report(catalog::map("constant(complex_projective(2),sphere(3))"));
    CHECK(find(constant, "TC(f)", BoundKind::Exact)->value == 0);
    CHECK(find(constant, "TC(f)", BoundKind::Upper)->value == 2);

    auto ess = find(rs, "TC(f) = 0", BoundKind::Certificate);
    REQUIRE(ess);
    CHECK(ess->note.find("inconsistent") == 0);
}

TEST_CASE("sectional category bound", "[invariants]")
{
    // p = id on CP^2, f = id: nil of ker(id) is 0
    auto CP = catalog::complex_projective(2);
    auto id = algebra::identity_morphism(CP);
    CHECK(secat_lower_bound(id, id) == 0);
    // p: point -> CP^2 kills everything, so the bound is the cup-length 2
    auto pt = catalog::point();
    algebra::AlgebraMorphism to_point(CP, pt, {pt->unit_element(), Element(), Element()});
    CHECK(secat_lower_bound(to_point, id) == 2);
    auto S = catalog::sphere(2);
    CHECK_THROWS_AS(secat_lower_bound(to_point, algebra::identity_morphism(S)), Error);
}

TEST_CASE("identity work maps give TC(X)", "[invariants]")
{
    auto id = identity_work_map(catalog::complex_projective(3), true, 6);
    auto rs = bounds_report(id);
    CHECK(find(rs, "TC(f)", BoundKind::Exact)->value == 6);
    auto circle = identity_work_map(catalog::sphere(1), true, 1);
    CHECK_FALSE(circle.flags.simply_connected);
    CHECK_FALSE(find(bounds_report(circle), "TC(f)", BoundKind::Exact));
}
