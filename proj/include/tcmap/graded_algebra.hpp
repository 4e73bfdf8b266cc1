#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcmap/linalg.hpp"

namespace tcmap::algebra {

using linalg::GradedBasis;
using linalg::GradedSubspace;
using linalg::LinearMap;
using linalg::SparseVector;

/* An element of a graded algebra: coordinates over its basis. */
using Element = SparseVector;

struct ProductEntry {
    std::size_t left = 0;
    std::size_t right = 0;
    Element result;
};

struct AlgebraLimits {
    int max_top_degree = 64;
    std::size_t max_dimension = 4096;
};

struct Violation {
    std::string kind;    // e.g. "associativity"
    std::string detail;  // names the offending pair/triple
};

/**
 * Finite-dimensional graded-commutative Q-algebra given by structure
 * constants. Only supplied pairs are stored; a missing (i,j) is derived from
 * a supplied (j,i) by the Koszul sign, products with the unit default to the
 * unit law and everything else is zero.
 */
class GradedAlgebra {
public:
    GradedAlgebra(std::string name, GradedBasis basis, std::size_t unit, std::vector<ProductEntry> products);

    const std::string& name() const { return name_; }
    const GradedBasis& basis() const { return *basis_; }
    const std::shared_ptr<const GradedBasis>& basis_ptr() const { return basis_; }
    std::size_t unit() const { return unit_; }
    std::size_t dim() const { return basis_->size(); }
    int degree(std::size_t i) const { return basis_->degree(i); }
    int top_degree() const { return basis_->top_degree(); }

    const Element* supplied(std::size_t i, std::size_t j) const;
    const std::vector<ProductEntry>& supplied_products() const { return products_; }

    Element product(std::size_t i, std::size_t j) const;
    Element multiply(const Element& u, const Element& v) const;
    Element power(const Element& u, int n) const;

    Element unit_element() const { return Element::unit(unit_); }
    Element basis_element(std::size_t i) const { return Element::unit(i); }

    /* Nonzero products for i <= j, excluding the unit, as derived. */
    std::vector<ProductEntry> canonical_products() const;

    std::string format(const Element& v) const;

    /* Same basis and same derived multiplication table. */
    friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b);

private:
    std::string name_;
    std::shared_ptr<const GradedBasis> basis_;
    std::size_t unit_;
    std::vector<ProductEntry> products_;
    std::unordered_map<std::size_t, std::size_t> index_;  // i*dim+j -> products_ slot
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

std::vector<Violation> validate_algebra(const GradedAlgebra& a, const AlgebraLimits& limits = {});

/* Koszul-signed tensor product; basis e_i⊗f_j at index i*dim(B)+j. */
GradedAlgebra tensor_product(const GradedAlgebra& a, const GradedAlgebra& b);
GradedAlgebra tensor_square(const GradedAlgebra& a);

/* Index of e_i⊗e_j in the tensor square of an algebra of dimension n. */
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) { return i * n + j; }

/* Positive-degree part of the algebra. */
GradedSubspace reduced_subspace(const GradedAlgebra& a);

/* Linear map of the algebra that sends e_i⊗e_j to e_i·e_j. */
LinearMap cup_morphism(const GradedAlgebra& a);

/**
 * Unital multiplicative degree-preserving linear map; images[i] is the image
 * of source basis element i in target coordinates.
 */
class AlgebraMorphism {
public:
    AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, std::vector<Element> images);

    const GradedAlgebra& source() const { return *source_; }
    const GradedAlgebra& target() const { return *target_; }
    const AlgebraPtr& source_ptr() const { return source_; }
    const AlgebraPtr& target_ptr() const { return target_; }
    const Element& image(std::size_t i) const { return images_[i]; }
    const std::vector<Element>& images() const { return images_; }

    Element apply(const Element& v) const;
    LinearMap linear_map() const;

    /* Image of the reduced part, as a homogeneous subspace of the target. */
    GradedSubspace reduced_image() const;
    bool is_zero_on_reduced() const;

private:
    AlgebraPtr source_;
    AlgebraPtr target_;
    std::vector<Element> images_;
};

std::vector<Violation> validate_morphism(const AlgebraMorphism& f);

AlgebraMorphism identity_morphism(AlgebraPtr a);
/* outer ∘ inner */
AlgebraMorphism compose(const AlgebraMorphism& outer, const AlgebraMorphism& inner);
/* φ⊗φ between tensor squares (no sign: φ has degree 0). */
AlgebraMorphism tensor_square_morphism(const AlgebraMorphism& phi);
/* Same as above with precomputed squares. */
AlgebraMorphism tensor_square_morphism(const AlgebraMorphism& phi, AlgebraPtr square_source,
                                       AlgebraPtr square_target);

struct WorkMapFlags {
    bool formal = false;
    bool codomain_coH = false;
    bool simply_connected = false;
};

/* Optional facts about the underlying spaces that cohomology cannot see. */
struct WorkMapHints {
    std::optional<int> domain_tc;  // known upper bound for TC(X)
    bool null_homotopic = false;   // f is known to be homotopic to a constant
};

/**
 * A map f: X -> Y seen through rational cohomology. The induced morphism is
 * contravariant: H*(Y) -> H*(X).
 */
struct WorkMap {
    std::string name;
    AlgebraPtr domain;    // H*(X)
    AlgebraPtr codomain;  // H*(Y)
    AlgebraMorphism induced;
    WorkMapFlags flags;
    WorkMapHints hints;
};

bool has_degree_one(const GradedAlgebra& a);
std::vector<Violation> validate_work_map(const WorkMap& f);

}  // namespace tcmap::algebra
