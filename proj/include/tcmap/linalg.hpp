#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tcmap/rational.hpp"

namespace tcmap::linalg {

/**
 * Sparse coordinate vector over Q. Entries are kept sorted by index with no
 * explicit zeros, so two vectors are equal iff their entry lists are equal.
 */
class SparseVector {
public:
    using Entry = std::pair<std::size_t, Rational>;

    SparseVector() = default;

    static SparseVector unit(std::size_t index, const Rational& coeff = Rational(1));
    static SparseVector from_dense(std::span<const Rational> values);

    std::vector<Rational> to_dense(std::size_t size) const;

    bool is_zero() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

    /* Smallest index with a nonzero coefficient. Precondition: nonzero. */
    std::size_t leading() const { return entries_.front().first; }
    const Rational& leading_coeff() const { return entries_.front().second; }

    Rational coeff(std::size_t index) const;

    /* this += c * other */
    void add_scaled(const SparseVector& other, const Rational& c);
    /* Appends an entry; index must exceed every stored index. */
    void push_back(std::size_t index, Rational coeff);
    /* Adds c at index, keeping the order. */
    void add(std::size_t index, const Rational& c);

    SparseVector& operator*=(const Rational& c);
    SparseVector& operator+=(const SparseVector& other);
    SparseVector& operator-=(const SparseVector& other);

    friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
    friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
    friend SparseVector operator*(const Rational& c, SparseVector v) { return v *= c; }
    friend bool operator==(const SparseVector& a, const SparseVector& b) = default;

private:
    std::vector<Entry> entries_;
};

/* Row-major dense matrix, used at the API boundary. */
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    SparseVector row(std::size_t r) const;
    SparseVector column(std::size_t c) const;
    static Matrix identity(std::size_t n);

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct Echelon {
    Matrix matrix;                     // nonzero rows only
    std::vector<std::size_t> pivots;   // strictly increasing
};

/* Reduced row echelon form; zero rows are dropped. */
Echelon rref(const Matrix& m);

/**
 * Subspace of Q^n held as the rows of its reduced echelon form. The echelon
 * form is the canonical representative, so == compares subspaces.
 */
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

    static Subspace span(std::size_t ambient_dim, std::span<const SparseVector> vectors);
    static Subspace whole(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t dim() const { return rows_.size(); }
    bool is_zero() const { return rows_.empty(); }
    const std::vector<SparseVector>& basis() const { return rows_; }
    std::vector<std::size_t> pivots() const;

    /* Residual of v after eliminating every pivot coordinate. */
    SparseVector reduce(const SparseVector& v) const;
    bool contains(const SparseVector& v) const { return reduce(v).is_zero(); }
    bool contains(const Subspace& other) const;

    Matrix to_matrix() const;

    friend bool operator==(const Subspace& a, const Subspace& b) = default;

private:
    std::size_t ambient_dim_ = 0;
    std::vector<SparseVector> rows_;  // RREF, pivots increasing
};

Subspace sum(const Subspace& s, const Subspace& t);
Subspace intersect(const Subspace& s, const Subspace& t);

/* Linear map given by the images of the domain basis vectors (column j of
 * the matrix is image(j)). */
class LinearMap {
public:
    LinearMap() = default;
    LinearMap(std::size_t domain_dim, std::size_t codomain_dim, std::vector<SparseVector> images);
    static LinearMap from_matrix(const Matrix& m);

    std::size_t domain_dim() const { return domain_dim_; }
    std::size_t codomain_dim() const { return codomain_dim_; }
    const SparseVector& image(std::size_t j) const { return images_[j]; }
    const std::vector<SparseVector>& images() const { return images_; }

    SparseVector apply(const SparseVector& v) const;
    /* this ∘ inner */
    LinearMap after(const LinearMap& inner) const;

private:
    std::size_t domain_dim_ = 0;
    std::size_t codomain_dim_ = 0;
    std::vector<SparseVector> images_;
};

/**
 * Gaussian elimination over the columns of a linear map, remembering how
 * every echelon row was combined from the columns. Columns are processed in
 * index order; a column that reduces to zero yields a kernel vector, the
 * others become pivot rows. Solutions returned by solve() are supported on
 * pivot columns only (free variables zero).
 */
class ColumnElimination {
public:
    explicit ColumnElimination(const LinearMap& map);

    std::size_t rank() const { return rows_.size(); }
    const std::vector<SparseVector>& kernel_vectors() const { return kernel_; }
    std::optional<SparseVector> solve(const SparseVector& target) const;

private:
    struct Row {
        SparseVector residual;  // leading coefficient 1
        SparseVector combo;     // over the domain basis
    };
    std::size_t domain_dim_;
    std::size_t codomain_dim_;
    std::map<std::size_t, Row> rows_;  // keyed by leading index
    std::vector<SparseVector> kernel_;
};

Subspace kernel(const LinearMap& map);
Subspace image(const LinearMap& map);

/* Null space {x : m x = 0}. */
Subspace kernel_basis(const Matrix& m);
/* Row space of m. */
Subspace image_basis(const Matrix& m);

/* ---------------------------------------------------------------------- */
/* Graded bases and homogeneous subspaces                                  */
/* ---------------------------------------------------------------------- */

struct BasisElement {
    std::string name;
    int degree = 0;
    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

class GradedBasis {
public:
    GradedBasis() = default;
    explicit GradedBasis(std::vector<BasisElement> elements);

    std::size_t size() const { return elements_.size(); }
    const BasisElement& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<BasisElement>& elements() const { return elements_; }
    int degree(std::size_t i) const { return elements_[i].degree; }
    const std::string& name(std::size_t i) const { return elements_[i].name; }

    std::optional<std::size_t> find(const std::string& name) const;
    int top_degree() const { return top_degree_; }

    /* Global indices of the elements of degree k, in basis order. */
    const std::vector<std::size_t>& in_degree(int k) const;
    /* Position of global index i inside in_degree(degree(i)). */
    std::size_t local_index(std::size_t i) const { return local_[i]; }
    std::vector<int> degrees() const;

    friend bool operator==(const GradedBasis& a, const GradedBasis& b) { return a.elements_ == b.elements_; }

private:
    std::vector<BasisElement> elements_;
    std::unordered_map<std::string, std::size_t> by_name_;
    std::map<int, std::vector<std::size_t>> by_degree_;
    std::vector<std::size_t> local_;
    int top_degree_ = 0;
};

/* Degree of a homogeneous vector; nullopt for zero; throws on mixed degrees. */
std::optional<int> homogeneous_degree(const GradedBasis& basis, const SparseVector& v);

/* Splits a vector into homogeneous components in local coordinates. */
std::map<int, SparseVector> split_by_degree(const GradedBasis& basis, const SparseVector& v);
SparseVector embed_local(const GradedBasis& basis, int degree, const SparseVector& local);

/**
 * Homogeneous subspace stored as one echelon basis per degree, in the local
 * coordinates of that degree.
 */
class GradedSubspace {
public:
    GradedSubspace() = default;
    explicit GradedSubspace(std::shared_ptr<const GradedBasis> ambient);

    /* Span of homogeneous vectors (global coordinates). */
    static GradedSubspace span(std::shared_ptr<const GradedBasis> ambient,
                               std::span<const SparseVector> vectors);

    const GradedBasis& ambient() const { return *ambient_; }
    const std::shared_ptr<const GradedBasis>& ambient_ptr() const { return ambient_; }

    std::size_t dim() const;
    bool is_zero() const { return dim() == 0; }
    const std::map<int, Subspace>& components() const { return components_; }
    const Subspace* component(int degree) const;
    void set_component(int degree, Subspace s);

    /* Homogeneous basis vectors in global coordinates, ordered by degree. */
    std::vector<SparseVector> basis() const;
    bool contains(const SparseVector& v) const;

    friend bool operator==(const GradedSubspace& a, const GradedSubspace& b);

private:
    std::shared_ptr<const GradedBasis> ambient_;
    std::map<int, Subspace> components_;  // zero components are not stored
};

GradedSubspace sum(const GradedSubspace& s, const GradedSubspace& t);
GradedSubspace intersect(const GradedSubspace& s, const GradedSubspace& t);

}  // namespace tcmap::linalg
