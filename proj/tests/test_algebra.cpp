#include "catch_amalgamated.hpp"
#include "support.hpp"
#include "tcmap/catalog.hpp"
#include "tcmap/error.hpp"
#include "tcmap/graded_algebra.hpp"

using namespace tcmap;
using namespace tcmap::algebra;
using linalg::BasisElement;
using linalg::GradedBasis;

namespace {

bool has_kind(const std::vector<Violation>& vs, const std::string& kind)
{
    for (const auto& v : vs)
        if (v.kind == kind)
            return true;
    return false;
}

/* Λ(a) with |a| odd plus a degree-2 class b: dimension 4. */
GradedAlgebra exterior_times_polynomial()
{
    GradedBasis b({{"1", 0}, {"a", 3}, {"b", 2}, {"ab", 5}});
    return GradedAlgebra("E", std::move(b), 0,
                         {{1, 2, Element::unit(3)}});
}

}  // namespace

TEST_CASE("catalog algebras are valid", "[graded-algebra]")
{
    for (const auto& spec : catalog::standard_spaces())
        CHECK(validate_algebra(*catalog::space(spec)).empty());
    for (const auto& A : testing::small_algebras())
        CHECK(validate_algebra(*A).empty());
}

TEST_CASE("products derive missing pairs by the Koszul sign", "[graded-algebra]")
{
    GradedAlgebra E = exterior_times_polynomial();
    CHECK(E.product(1, 2) == Element::unit(3));
    CHECK(E.product(2, 1) == Element::unit(3));
    CHECK(E.product(0, 3) == Element::unit(3));
    CHECK(E.product(1, 1).is_zero());
    CHECK(validate_algebra(E).empty());

    GradedAlgebra T = *catalog::torus(2);
    const auto a1 = *T.basis().find("a1"), a2 = *T.basis().find("a2");
    CHECK(T.product(a2, a1) == Rational(-1) * T.product(a1, a2));
    CHECK(T.power(T.basis_element(a1), 2).is_zero());
}

TEST_CASE("validation names the broken associativity triple", "[graded-algebra]")
{
    GradedBasis b({{"1", 0}, {"a", 2}, {"b", 2}, {"c", 4}, {"e", 6}});
    GradedAlgebra A("bad", std::move(b), 0, {{1, 1, Element::unit(3)}, {3, 2, Element::unit(4)}});
    auto vs = validate_algebra(A);
    REQUIRE(has_kind(vs, "associativity"));
    bool named = false;
    for (const auto& v : vs)
        if (v.kind == "associativity" && v.detail.find('a') != std::string::npos &&
            v.detail.find('b') != std::string::npos)
            named = true;
    CHECK(named);
}

TEST_CASE("validation catches other structural faults", "[graded-algebra]")
{
    SECTION("odd square")
    {
        GradedBasis b({{"1", 0}, {"a", 1}, {"c", 2}});
        GradedAlgebra A("odd", std::move(b), 0, {{1, 1, Element::unit(2)}});
        CHECK(has_kind(validate_algebra(A), "odd-square"));
    }
    SECTION("degree additivity")
    {
        GradedBasis b({{"1", 0}, {"a", 2}, {"c", 3}});
        GradedAlgebra A("deg", std::move(b), 0, {{1, 1, Element::unit(2)}});
        CHECK(has_kind(validate_algebra(A), "degree-additivity"));
    }
    SECTION("connectedness")
    {
        GradedBasis b({{"1", 0}, {"z", 0}});
        GradedAlgebra A("disc", std::move(b), 0, {});
        CHECK(has_kind(validate_algebra(A), "connectedness"));
    }
    SECTION("graded commutativity")
    {
        GradedBasis b({{"1", 0}, {"a", 2}, {"b", 2}, {"c", 4}});
        GradedAlgebra A("noncomm", std::move(b), 0,
                        {{1, 2, Element::unit(3)}, {2, 1, Element::unit(3, Rational(-1))}});
        CHECK(has_kind(validate_algebra(A), "graded-commutativity"));
    }
    SECTION("limits")
    {
        AlgebraLimits tight;
        tight.max_dimension = 3;
        CHECK(has_kind(validate_algebra(*catalog::complex_projective(3), tight), "limits"));
    }
}

TEST_CASE("tensor products use index i*dim(B)+j and the Koszul sign", "[graded-algebra]")
{
    GradedAlgebra S3 = *catalog::sphere(3);
    GradedAlgebra sq = tensor_square(S3);
    REQUIRE(sq.dim() == 4);
    CHECK(sq.basis().name(pair_index(2, 1, 0)) == "x⊗1");
    // (x⊗1)(1⊗x) = x⊗x, (1⊗x)(x⊗1) = -x⊗x
    CHECK(sq.product(pair_index(2, 1, 0), pair_index(2, 0, 1)) == Element::unit(pair_index(2, 1, 1)));
    CHECK(sq.product(pair_index(2, 0, 1), pair_index(2, 1, 0)) ==
          Element::unit(pair_index(2, 1, 1), Rational(-1)));
    CHECK(validate_algebra(sq).empty());

    auto r = testing::commutativity_associativity(1, 200);
    CHECK(r.failures == 0);
}

TEST_CASE("cup morphism multiplies", "[graded-algebra]")
{
    GradedAlgebra T = *catalog::torus(2);
    LinearMap mu = cup_morphism(T);
    const std::size_t n = T.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            CHECK(mu.apply(Element::unit(pair_index(n, i, j))) == T.product(i, j));
    CHECK(reduced_subspace(T).dim() == n - 1);
}

TEST_CASE("morphisms validate, compose and square", "[graded-algebra]")
{
    auto f = catalog::map("cp_map(2,3,2)");
    CHECK(validate_morphism(f.induced).empty());
    CHECK(validate_work_map(f).empty());

    auto X = catalog::complex_projective(2);
    auto id = identity_morphism(X);
    auto c = compose(id, f.induced);
    CHECK(c.images() == f.induced.images());
    CHECK_THROWS_AS(compose(f.induced, f.induced), Error);

    auto sq = tensor_square_morphism(f.induced);
    CHECK(validate_morphism(sq).empty());

    // x -> x on CP^1 -> CP^1 with a bad degree
    auto P = catalog::complex_projective(1);
    AlgebraMorphism bad(P, P, {Element::unit(0), Element::unit(0)});
    CHECK_FALSE(validate_morphism(bad).empty());
    // not multiplicative: x -> x on CP^2 but x^2 -> 0
    AlgebraMorphism nm(X, X, {Element::unit(0), Element::unit(1), Element()});
    CHECK_FALSE(validate_morphism(nm).empty());
}

TEST_CASE("work map flags are checked against degree-one classes", "[graded-algebra]")
{
    auto f = catalog::map("torus_projection()");
    CHECK(validate_work_map(f).empty());
    f.flags.simply_connected = true;
    CHECK(has_kind(validate_work_map(f), "simply-connected"));
    CHECK(has_degree_one(*catalog::torus(2)));
    CHECK_FALSE(has_degree_one(*catalog::sphere(2)));
}
