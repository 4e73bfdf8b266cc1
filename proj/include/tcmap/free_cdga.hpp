#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tcmap/graded_algebra.hpp"
#include "tcmap/linalg.hpp"

namespace tcmap::sullivan {

using linalg::LinearMap;
using linalg::SparseVector;
using algebra::Violation;

/* Exponent of each generator, in generator order. */
using Monomial = std::vector<int>;
using Poly = std::map<Monomial, Rational>;

struct Generator {
    std::string name;
    int degree = 2;
};

void add_term(Poly& p, const Monomial& m, const Rational& c);
void add_poly(Poly& p, const Poly& q, const Rational& c = Rational(1));
Poly scaled(Poly p, const Rational& c);

/**
 * Free graded-commutative algebra Λ(v_0, v_1, ...) with a differential given
 * on generators; dv_i may only involve v_j with j < i. Monomials are exponent
 * vectors read as v_0^e0 v_1^e1 ... in generator order. Monomial bases are
 * enumerated up to degree N+1 so that d is available on every degree <= N.
 */
class FreeCDGA {
public:
    FreeCDGA(std::string name, std::vector<Generator> generators, std::vector<Poly> differential, int truncation,
             bool allow_degree_one = false);

    const std::string& name() const { return name_; }
    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t num_generators() const { return gens_.size(); }
    const Generator& generator(std::size_t i) const { return gens_[i]; }
    const Poly& differential(std::size_t i) const { return diff_[i]; }
    int truncation() const { return N_; }
    bool allows_degree_one() const { return allow_degree_one_; }
    std::optional<std::size_t> find(const std::string& name) const;

    int degree(const Monomial& m) const;
    Monomial generator_monomial(std::size_t i, int exponent = 1) const;
    Poly generator_poly(std::size_t i) const;
    Poly one() const;

    /* Monomials of degree k, 0 <= k <= N+1. */
    const std::vector<Monomial>& basis(int k) const;
    std::size_t dim(int k) const { return basis(k).size(); }
    std::size_t index(int k, const Monomial& m) const;

    SparseVector to_vector(const Poly& p, int k) const;
    Poly from_vector(const SparseVector& v, int k) const;

    /* Signed product of monomials; nullopt when an odd generator repeats. */
    std::optional<std::pair<Monomial, int>> multiply(const Monomial& a, const Monomial& b) const;
    Poly multiply(const Poly& a, const Poly& b) const;

    Poly d(const Poly& p) const;
    /* d restricted to degree k, k <= N. */
    const LinearMap& d_matrix(int k) const;

    FreeCDGA with_truncation(int N) const;

    std::string format(const Poly& p) const;
    std::string format(const Monomial& m) const;

private:
    std::string name_;
    std::vector<Generator> gens_;
    std::vector<Poly> diff_;
    int N_;
    bool allow_degree_one_;
    std::vector<std::vector<Monomial>> bases_;
    std::vector<std::map<Monomial, std::size_t>> index_;
    mutable std::map<int, LinearMap> d_cache_;
};

using CDGAPtr = std::shared_ptr<const FreeCDGA>;

struct CDGAReport {
    std::vector<Violation> violations;
    std::vector<std::string> warnings;
    bool ok() const { return violations.empty(); }
};

CDGAReport validate_cdga(const FreeCDGA& M);

struct Cohomology {
    std::vector<std::size_t> dims;                      // dims[k], k = 0..up_to
    std::vector<std::vector<SparseVector>> representatives;  // cocycles per degree
};

Cohomology cdga_cohomology(const FreeCDGA& M, int up_to);

/* Cocycles of degree k, k <= N. */
std::vector<SparseVector> cocycles(const FreeCDGA& M, int k);
/* Coboundaries d(M^{k-1}) inside degree k. */
linalg::Subspace coboundaries(const FreeCDGA& M, int k);

/**
 * Morphism of free CDGAs given on generators. The surjective flag is
 * recomputed degreewise up to the common truncation.
 */
class CDGAMorphism {
public:
    CDGAMorphism(CDGAPtr source, CDGAPtr target, std::vector<Poly> images);

    const FreeCDGA& source() const { return *source_; }
    const FreeCDGA& target() const { return *target_; }
    const CDGAPtr& source_ptr() const { return source_; }
    const CDGAPtr& target_ptr() const { return target_; }
    const Poly& image(std::size_t i) const { return images_[i]; }
    const std::vector<Poly>& images() const { return images_; }
    int truncation() const;

    Poly apply(const Poly& p) const;
    Poly apply(const Monomial& m) const;
    /* Degree-k component as a matrix between monomial bases. */
    LinearMap matrix(int k) const;

    bool surjective() const;

private:
    CDGAPtr source_;
    CDGAPtr target_;
    std::vector<Poly> images_;
    mutable std::map<Monomial, Poly> cache_;
    mutable std::optional<bool> surjective_;
};

std::vector<Violation> validate_cdga_morphism(const CDGAMorphism& f);

}  // namespace tcmap::sullivan
