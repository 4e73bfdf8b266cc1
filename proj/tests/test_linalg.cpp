#include <random>

#include "catch_amalgamated.hpp"
#include "support.hpp"
#include "tcmap/error.hpp"
#include "tcmap/linalg.hpp"

using namespace tcmap;
using namespace tcmap::linalg;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int zero_bias)
{
    std::uniform_int_distribution<int> v(-3, 3);
    std::uniform_int_distribution<int> z(0, 9);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = z(rng) < zero_bias ? 0 : v(rng);
    return m;
}

testing::DenseMatrix dense(const Matrix& m)
{
    testing::DenseMatrix out(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i][j] = m(i, j);
    return out;
}

}  // namespace

TEST_CASE("rational literals", "[linalg]")
{
    CHECK(parse_rational("1/3") == Rational(1, 3));
    CHECK(parse_rational("-4/6") == Rational(-2, 3));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_string(Rational(-6, 4)) == "-3/2");
    CHECK(to_string(Rational(0)) == "0");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("1.5"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
    CHECK(koszul_sign(1, 3) == -1);
    CHECK(koszul_sign(2, 3) == 1);
}

TEST_CASE("sparse vectors stay canonical", "[linalg]")
{
    SparseVector v;
    v.add(3, Rational(2));
    v.add(1, Rational(1));
    v.add(3, Rational(-2));
    REQUIRE(v.size() == 1);
    CHECK(v.leading() == 1);
    SparseVector w = SparseVector::unit(1);
    CHECK(v == w);
    CHECK((v - w).is_zero());
}

TEST_CASE("rref of a known matrix", "[linalg]")
{
    Matrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    Echelon e = rref(m);
    REQUIRE(e.pivots == std::vector<std::size_t>{0, 1});
    CHECK(e.matrix(0, 2) == 1);
    CHECK(e.matrix(1, 2) == 1);
}

TEST_CASE("rank-nullity against an independent elimination", "[linalg]")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
        Matrix m = random_matrix(rng, r, c, static_cast<int>(rng() % 8));
        const std::size_t rank = testing::dense_rank(dense(m));
        Subspace ker = kernel_basis(m);
        Subspace row = image_basis(m);
        CHECK(row.dim() == rank);
        CHECK(ker.dim() + rank == c);
        for (const auto& k : ker.basis())
            for (std::size_t i = 0; i < r; ++i) {
                Rational s = 0;
                for (const auto& [j, x] : k.entries())
                    s += m(i, j) * x;
                CHECK(s == 0);
            }
        LinearMap f = LinearMap::from_matrix(m);
        CHECK(kernel(f).dim() + image(f).dim() == c);
        CHECK(image(f).dim() == rank);
    }
}

TEST_CASE("sum and intersection satisfy the dimension formula", "[linalg]")
{
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + rng() % 6;
        Matrix a = random_matrix(rng, 1 + rng() % n, n, 5);
        Matrix b = random_matrix(rng, 1 + rng() % n, n, 5);
        Subspace s = image_basis(a), u = image_basis(b);
        Subspace both = intersect(s, u);
        CHECK(both.dim() + sum(s, u).dim() == s.dim() + u.dim());
        for (const auto& v : both.basis()) {
            CHECK(s.contains(v));
            CHECK(u.contains(v));
        }
    }
}

TEST_CASE("column elimination solves exactly", "[linalg]")
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        LinearMap f = LinearMap::from_matrix(random_matrix(rng, r, c, 4));
        ColumnElimination e(f);
        std::vector<Rational> x(c);
        for (auto& v : x)
            v = static_cast<int>(rng() % 5) - 2;
        SparseVector target = f.apply(SparseVector::from_dense(x));
        auto sol = e.solve(target);
        REQUIRE(sol);
        CHECK(f.apply(*sol) == target);
        for (const auto& k : e.kernel_vectors())
            CHECK(f.apply(k).is_zero());
        CHECK(e.rank() + e.kernel_vectors().size() == c);
    }
    LinearMap zero(1, 2, {SparseVector()});
    CHECK_FALSE(ColumnElimination(zero).solve(SparseVector::unit(0)));
}

TEST_CASE("graded subspaces split by degree", "[linalg]")
{
    auto b = std::make_shared<const GradedBasis>(
        std::vector<BasisElement>{{"1", 0}, {"a", 2}, {"b", 2}, {"c", 4}});
    std::vector<SparseVector> vs{SparseVector::unit(1) + SparseVector::unit(2), SparseVector::unit(3)};
    auto S = GradedSubspace::span(b, vs);
    CHECK(S.dim() == 2);
    CHECK(S.contains(SparseVector::unit(3)));
    CHECK_FALSE(S.contains(SparseVector::unit(1)));
    CHECK(b->in_degree(2).size() == 2);
    CHECK_THROWS_AS(homogeneous_degree(*b, SparseVector::unit(0) + SparseVector::unit(1)), Error);
}
