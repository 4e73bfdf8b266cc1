#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcmap/free_cdga.hpp"
#include "tcmap/graded_algebra.hpp"

namespace tcmap::sullivan {

/* Λ(V'⊕V''): copies v' of every generator followed by copies v''. */
FreeCDGA tensor_square(const FreeCDGA& M);
Poly embed_left(const Poly& p, std::size_t generators);
Poly embed_right(const Poly& p, std::size_t generators);

/* ψ⊗ψ between the tensor squares. */
CDGAMorphism tensor_square_morphism(const CDGAMorphism& psi, CDGAPtr square_source, CDGAPtr square_target);
/* μ∘(ψ⊗ψ): v', v'' ↦ ψ(v). */
CDGAMorphism multiplied_square(const CDGAMorphism& psi, CDGAPtr square_source);

/* Same morphism with both ends rebuilt at truncation N. */
CDGAMorphism with_truncation(const CDGAMorphism& psi, int N);

int default_truncation(int top_degree);

/* Adds pairs (dr_w, r_w), d r_w = dr_w, for every target generator w not in
 * the image; returns ψ itself when it is already surjective. */
CDGAMorphism surjectivize(const CDGAMorphism& psi);

/* Homogeneous ideal of a free CDGA, one subspace per degree 0..up_to. */
struct DegreewiseIdeal {
    CDGAPtr owner;
    int up_to = 0;
    std::vector<linalg::Subspace> components;

    const linalg::Subspace& component(int k) const { return components.at(k); }
    std::vector<Poly> basis(int k) const;
    bool contains(const Poly& p, int k) const;
    bool is_zero() const;
    /* Generators times components stay inside the ideal (within up_to). */
    bool is_ideal() const;
};

DegreewiseIdeal kernel_ideal(const CDGAMorphism& psi, CDGAPtr square_source, int up_to);
DegreewiseIdeal kernel_ideal(const CDGAMorphism& psi);
/* Minimal ideal generators per degree: K_k modulo A^+·K. */
std::map<int, std::vector<Poly>> ideal_generators(const DegreewiseIdeal& K);
DegreewiseIdeal ideal_power(const DegreewiseIdeal& K, int m);

enum class Verdict { Certified, FailedWitness, Unknown };
const char* to_string(Verdict v);

struct ObstructionEntry {
    std::string generator;
    int degree = 0;
    std::string target;  // ρ(du), which is not a coboundary
    std::string detail;
};

struct FactorizationOutcome {
    Verdict verdict = Verdict::Unknown;
    int n = 0;
    int N = 0;
    std::optional<Poly> witness;  // in the tensor square of the source
    int witness_degree = 0;
    std::string witness_text;
    std::size_t extension_generators = 0;
    std::size_t lifted = 0;
    std::vector<ObstructionEntry> log;
};

FactorizationOutcome strict_certificate(const CDGAMorphism& psi, int n, int N);

struct RelativeModel {
    CDGAPtr base;       // ΛV⊗ΛV
    CDGAPtr extension;  // ΛV⊗ΛV⊗ΛU, U generators after the base ones
    DegreewiseIdeal power;  // K^{n+1} inside the base
    std::size_t base_generators = 0;
};

RelativeModel relative_model_of_quotient(const CDGAMorphism& psi, int n, int N);

FactorizationOutcome homotopy_factorization(const CDGAMorphism& psi, int n, int N);

/* Minimal model ΛV of (H, 0) with the quasi-isomorphism β: ΛV -> H. */
struct FormalModel {
    algebra::AlgebraPtr cohomology;
    CDGAPtr model;
    std::vector<SparseVector> beta;  // per generator, in H coordinates

    SparseVector beta_of(const Poly& p) const;
};

FormalModel formal_model(algebra::AlgebraPtr H, int N);
/* Lifts f: H(Y) -> H(X) to ψ: M_Y -> M_X with β_X ψ = f β_Y. */
CDGAMorphism formal_map_model(const algebra::AlgebraMorphism& f, const FormalModel& Y, const FormalModel& X);

struct ConsistencyReport {
    std::string map;
    int n = 0;
    int N = 0;
    FactorizationOutcome strict;
    FactorizationOutcome homotopy;
    std::vector<std::string> defects;
    bool ok() const { return defects.empty(); }
};

ConsistencyReport formal_consistency(const algebra::WorkMap& f, std::optional<int> N = std::nullopt);

}  // namespace tcmap::sullivan
