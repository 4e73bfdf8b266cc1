#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tcmap/catalog.hpp"
#include "tcmap/free_cdga.hpp"
#include "tcmap/graded_algebra.hpp"

namespace tcmap::testing {

using algebra::AlgebraPtr;
using algebra::Element;
using algebra::GradedAlgebra;
using algebra::WorkMap;

using DenseMatrix = std::vector<std::vector<Rational>>;

/* Plain Gaussian elimination, kept apart from the library code. */
std::size_t dense_rank(DenseMatrix rows);
/* Inverse of a square invertible matrix by Gauss-Jordan. */
DenseMatrix dense_inverse(DenseMatrix m);

/* Largest n such that some product of n spanning vectors is nonzero,
 * enumerating every non-decreasing tuple. */
int brute_force_nil(const GradedAlgebra& B, const std::vector<Element>& span);

/* Catalog algebras of dimension <= 16, tensor squares included. */
std::vector<AlgebraPtr> small_algebras();

struct Conjugated {
    AlgebraPtr algebra;
    DenseMatrix P;     // columns: new basis in old coordinates
    DenseMatrix Pinv;
};

/* Same algebra written in a random graded basis (unit fixed). */
Conjugated conjugate(const AlgebraPtr& a, std::mt19937_64& rng);
WorkMap conjugate(const WorkMap& f, std::mt19937_64& rng);

struct PropertyResult {
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;
    void fail(const std::string& what)
    {
        if (failures++ == 0)
            first_failure = what;
    }
};

PropertyResult commutativity_associativity(std::uint64_t seed, std::size_t checks);
/* Coordinate subspaces of dimension <= 4 and `random_subspaces` random
 * homogeneous ones per algebra. */
PropertyResult nil_oracle(std::uint64_t seed, std::size_t random_subspaces);
PropertyResult basis_change(std::uint64_t seed, std::size_t conjugations);
PropertyResult d_squared_on_extensions();

/* d∘d on every basis monomial of degree < N, both through d() and through
 * the composed matrices. */
bool d_squared_zero(const sullivan::FreeCDGA& M, std::string* detail = nullptr);

}  // namespace tcmap::testing
