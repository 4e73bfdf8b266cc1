#include "tcmap/sullivan.hpp"

#include <algorithm>
#include <set>

#include "tcmap/error.hpp"
#include "tcmap/invariants.hpp"

namespace tcmap::sullivan {

using linalg::ColumnElimination;
using linalg::Subspace;

namespace {

Poly pad(const Poly& p, std::size_t G)
{
    Poly out;
    for (const auto& [m, c] : p) {
        Monomial mm = m;
        mm.resize(G, 0);
        out.emplace(std::move(mm), c);
    }
    return out;
}

std::vector<Poly> pad_all(const std::vector<Poly>& ps, std::size_t G)
{
    std::vector<Poly> out;
    out.reserve(ps.size());
    for (const auto& p : ps)
        out.push_back(pad(p, G));
    return out;
}

Subspace span1(std::size_t dim, const SparseVector& v)
{
    return Subspace::span(dim, std::vector<SparseVector>{v});
}

/* Vectors of `candidates` independent modulo `base`, in order. */
std::vector<SparseVector> complement_reps(Subspace base, const std::vector<SparseVector>& candidates)
{
    std::vector<SparseVector> reps;
    for (const auto& z : candidates) {
        if (base.contains(z))
            continue;
        base = linalg::sum(base, span1(base.ambient_dim(), z));
        reps.push_back(z);
    }
    return reps;
}

/* Applies a partially known morphism given on generators. */
class Evaluator {
public:
    Evaluator(const FreeCDGA& source, const FreeCDGA& target, std::vector<Poly> images)
        : source_(source), target_(target), images_(std::move(images))
    {
    }

    void set(std::size_t i, Poly p) { images_[i] = std::move(p); }
    const std::vector<Poly>& images() const { return images_; }

    Poly apply(const Monomial& m)
    {
        auto it = cache_.find(m);
        if (it != cache_.end())
            return it->second;
        std::size_t last = m.size();
        for (std::size_t i = m.size(); i-- > 0;)
            if (m[i]) {
                last = i;
                break;
            }
        Poly out;
        if (last == m.size()) {
            out = target_.one();
        } else {
            Monomial rest = m;
            --rest[last];
            out = target_.multiply(apply(rest), images_[last]);
        }
        cache_.emplace(m, out);
        return out;
    }

    Poly apply(const Poly& p)
    {
        Poly out;
        for (const auto& [m, c] : p)
            add_poly(out, apply(m), c);
        return out;
    }

private:
    const FreeCDGA& source_;
    const FreeCDGA& target_;
    std::vector<Poly> images_;
    std::map<Monomial, Poly> cache_;
};

class DifferentialSolver {
public:
    explicit DifferentialSolver(const FreeCDGA& M) : M_(M) {}

    /* x with dx = t for t of degree k+1. */
    std::optional<Poly> solve(const Poly& t, int k)
    {
        if (t.empty())
            return Poly{};
        auto it = elim_.find(k);
        if (it == elim_.end())
            it = elim_.emplace(k, ColumnElimination(M_.d_matrix(k))).first;
        auto sol = it->second.solve(M_.to_vector(t, k + 1));
        if (!sol)
            return std::nullopt;
        return M_.from_vector(*sol, k);
    }

private:
    const FreeCDGA& M_;
    std::map<int, ColumnElimination> elim_;
};

bool has_degree_one_generator(const std::vector<Generator>& gens)
{
    return std::any_of(gens.begin(), gens.end(), [](const Generator& g) { return g.degree == 1; });
}

}  // namespace

/* ---------------------------------------------------------------------- */

Poly embed_left(const Poly& p, std::size_t generators)
{
    Poly out;
    for (const auto& [m, c] : p) {
        Monomial mm = m;
        mm.resize(2 * generators, 0);
        out.emplace(std::move(mm), c);
    }
    return out;
}

Poly embed_right(const Poly& p, std::size_t generators)
{
    Poly out;
    for (const auto& [m, c] : p) {
        Monomial mm(generators, 0);
        mm.insert(mm.end(), m.begin(), m.end());
        out.emplace(std::move(mm), c);
    }
    return out;
}

FreeCDGA tensor_square(const FreeCDGA& M)
{
    const std::size_t G = M.num_generators();
    std::vector<Generator> gens;
    std::vector<Poly> diffs;
    for (std::size_t i = 0; i < G; ++i) {
        gens.push_back({M.generator(i).name + "'", M.generator(i).degree});
        diffs.push_back(embed_left(M.differential(i), G));
    }
    for (std::size_t i = 0; i < G; ++i) {
        gens.push_back({M.generator(i).name + "''", M.generator(i).degree});
        diffs.push_back(embed_right(M.differential(i), G));
    }
    return FreeCDGA(M.name() + "⊗" + M.name(), std::move(gens), std::move(diffs), M.truncation(),
                    M.allows_degree_one());
}

CDGAMorphism tensor_square_morphism(const CDGAMorphism& psi, CDGAPtr square_source, CDGAPtr square_target)
{
    const std::size_t GS = psi.source().num_generators();
    const std::size_t GT = psi.target().num_generators();
    std::vector<Poly> images(2 * GS);
    for (std::size_t i = 0; i < GS; ++i) {
        images[i] = embed_left(psi.image(i), GT);
        images[GS + i] = embed_right(psi.image(i), GT);
    }
    return CDGAMorphism(std::move(square_source), std::move(square_target), std::move(images));
}

CDGAMorphism multiplied_square(const CDGAMorphism& psi, CDGAPtr square_source)
{
    const std::size_t GS = psi.source().num_generators();
    std::vector<Poly> images(2 * GS);
    for (std::size_t i = 0; i < GS; ++i)
        images[i] = images[GS + i] = psi.image(i);
    return CDGAMorphism(std::move(square_source), psi.target_ptr(), std::move(images));
}

CDGAMorphism with_truncation(const CDGAMorphism& psi, int N)
{
    if (psi.source().truncation() == N && psi.target().truncation() == N)
        return psi;
    auto s = std::make_shared<const FreeCDGA>(psi.source().with_truncation(N));
    auto t = std::make_shared<const FreeCDGA>(psi.target().with_truncation(N));
    return CDGAMorphism(s, t, psi.images());
}

int default_truncation(int top_degree) { return std::max(12, 2 * top_degree + 2); }

CDGAMorphism surjectivize(const CDGAMorphism& psi)
{
    if (psi.surjective())
        return psi;
    const FreeCDGA& S = psi.source();
    const FreeCDGA& T = psi.target();
    std::vector<Generator> gens = S.generators();
    std::vector<Poly> diffs(S.num_generators());
    for (std::size_t i = 0; i < S.num_generators(); ++i)
        diffs[i] = S.differential(i);
    std::vector<Poly> images = psi.images();

    std::map<int, Subspace> image_by_degree;
    for (std::size_t j = 0; j < T.num_generators(); ++j) {
        const auto& w = T.generator(j);
        if (w.degree > psi.truncation())
            continue;
        auto it = image_by_degree.find(w.degree);
        if (it == image_by_degree.end())
            it = image_by_degree.emplace(w.degree, linalg::image(psi.matrix(w.degree))).first;
        if (it->second.contains(T.to_vector(T.generator_poly(j), w.degree)))
            continue;
        const std::size_t dr = gens.size();
        gens.push_back({"dr_" + w.name, w.degree + 1});
        diffs.push_back({});
        images.push_back(T.d(T.generator_poly(j)));
        gens.push_back({"r_" + w.name, w.degree});
        Monomial m(dr + 2, 0);
        m[dr] = 1;
        diffs.push_back({{m, Rational(1)}});
        images.push_back(T.generator_poly(j));
    }
    const bool low = S.allows_degree_one() || T.allows_degree_one() || has_degree_one_generator(gens);
    auto source = std::make_shared<const FreeCDGA>(S.name() + "⊗Λ(R,dR)", gens, pad_all(diffs, gens.size()),
                                                   S.truncation(), low);
    CDGAMorphism gamma(source, psi.target_ptr(), std::move(images));

    const int N = psi.truncation();
    if (cdga_cohomology(S, N).dims != cdga_cohomology(*source, N).dims)
        throw Error(ErrorCode::InvalidParameter, "surjectivization changed the cohomology of " + S.name());
    if (!gamma.surjective())
        throw Error(ErrorCode::NotSurjective, "surjectivization of " + S.name() + " is not surjective");
    return gamma;
}

/* ---------------------------------------------------------------------- */

std::vector<Poly> DegreewiseIdeal::basis(int k) const
{
    std::vector<Poly> out;
    for (const auto& row : component(k).basis())
        out.push_back(owner->from_vector(row, k));
    return out;
}

bool DegreewiseIdeal::contains(const Poly& p, int k) const
{
    return component(k).contains(owner->to_vector(p, k));
}

bool DegreewiseIdeal::is_zero() const
{
    return std::all_of(components.begin(), components.end(), [](const Subspace& s) { return s.is_zero(); });
}

bool DegreewiseIdeal::is_ideal() const
{
    for (int k = 0; k <= up_to; ++k) {
        if (component(k).is_zero())
            continue;
        const auto elems = basis(k);
        for (std::size_t g = 0; g < owner->num_generators(); ++g) {
            const int kk = k + owner->generator(g).degree;
            if (kk > up_to)
                continue;
            const Poly gp = owner->generator_poly(g);
            for (const auto& b : elems)
                if (!contains(owner->multiply(gp, b), kk))
                    return false;
        }
    }
    return true;
}

DegreewiseIdeal kernel_ideal(const CDGAMorphism& psi, CDGAPtr square_source, int up_to)
{
    if (!psi.surjective())
        throw Error(ErrorCode::NotSurjective, "kernel ideal needs a surjective model");
    CDGAMorphism mu = multiplied_square(psi, square_source);
    DegreewiseIdeal K{square_source, up_to, {}};
    for (int k = 0; k <= up_to; ++k)
        K.components.push_back(linalg::kernel(mu.matrix(k)));
    return K;
}

DegreewiseIdeal kernel_ideal(const CDGAMorphism& psi)
{
    auto A = std::make_shared<const FreeCDGA>(tensor_square(psi.source()));
    return kernel_ideal(psi, A, psi.truncation());
}

std::map<int, std::vector<Poly>> ideal_generators(const DegreewiseIdeal& K)
{
    const FreeCDGA& A = *K.owner;
    std::vector<std::vector<Poly>> bases(K.up_to + 1);
    for (int k = 0; k <= K.up_to; ++k)
        bases[k] = K.basis(k);
    std::map<int, std::vector<Poly>> out;
    for (int k = 0; k <= K.up_to; ++k) {
        if (K.component(k).is_zero())
            continue;
        std::vector<SparseVector> decomposable;
        for (std::size_t g = 0; g < A.num_generators(); ++g) {
            const int j = k - A.generator(g).degree;
            if (j < 0)
                continue;
            const Poly gp = A.generator_poly(g);
            for (const auto& b : bases[j])
                decomposable.push_back(A.to_vector(A.multiply(gp, b), k));
        }
        auto reps = complement_reps(Subspace::span(A.dim(k), decomposable), K.component(k).basis());
        for (const auto& r : reps)
            out[k].push_back(A.from_vector(r, k));
    }
    return out;
}

DegreewiseIdeal ideal_power(const DegreewiseIdeal& K, int m)
{
    if (m < 1)
        throw Error(ErrorCode::InvalidParameter, "ideal power exponent must be positive");
    if (m == 1)
        return K;
    const FreeCDGA& A = *K.owner;
    const auto gens = ideal_generators(K);
    DegreewiseIdeal P = K;
    for (int step = 2; step <= m; ++step) {
        std::vector<std::vector<Poly>> bases(P.up_to + 1);
        for (int k = 0; k <= P.up_to; ++k)
            bases[k] = P.basis(k);
        DegreewiseIdeal next{K.owner, K.up_to, {}};
        for (int k = 0; k <= K.up_to; ++k) {
            std::vector<SparseVector> vs;
            for (const auto& [i, gs] : gens) {
                if (i > k)
                    break;
                for (const auto& g : gs)
                    for (const auto& p : bases[k - i]) {
                        Poly q = A.multiply(g, p);
                        if (!q.empty())
                            vs.push_back(A.to_vector(q, k));
                    }
            }
            next.components.push_back(Subspace::span(A.dim(k), vs));
        }
        P = std::move(next);
        if (P.is_zero())
            break;
    }
    return P;
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Certified: return "CERTIFIED";
    case Verdict::FailedWitness: return "FAILED_WITNESS";
    case Verdict::Unknown: return "UNKNOWN";
    }
    return "?";
}

/* ---------------------------------------------------------------------- */

FactorizationOutcome strict_certificate(const CDGAMorphism& psi0, int n, int N)
{
    if (n < 0)
        throw Error(ErrorCode::InvalidParameter, "n must be non-negative");
    CDGAMorphism psi = with_truncation(psi0, N);
    if (!psi.surjective())
        throw Error(ErrorCode::NotSurjective, "strict certificate needs a surjective model");
    auto A = std::make_shared<const FreeCDGA>(tensor_square(psi.source()));
    auto B = std::make_shared<const FreeCDGA>(tensor_square(psi.target()));
    DegreewiseIdeal P = ideal_power(kernel_ideal(psi, A, N), n + 1);
    CDGAMorphism phi = tensor_square_morphism(psi, A, B);

    FactorizationOutcome out;
    out.n = n;
    out.N = N;
    for (int k = 0; k <= N; ++k) {
        if (P.component(k).is_zero())
            continue;
        LinearMap mk = phi.matrix(k);
        for (const auto& row : P.component(k).basis()) {
            if (mk.apply(row).is_zero())
                continue;
            Poly w = A->from_vector(row, k);
            if (!P.contains(w, k) || phi.apply(w).empty())
                throw Error(ErrorCode::InvalidParameter, "witness failed re-verification");
            out.verdict = Verdict::FailedWitness;
            out.witness = w;
            out.witness_degree = k;
            out.witness_text = A->format(w);
            return out;
        }
    }
    out.verdict = Verdict::Certified;
    return out;
}

namespace {

std::vector<SparseVector> ideal_part(const FreeCDGA& E, std::size_t base_generators, const FreeCDGA& A,
                                     const DegreewiseIdeal& P, int k)
{
    std::vector<SparseVector> vs;
    const auto& B = E.basis(k);
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = base_generators; j < B[i].size(); ++j)
            if (B[i][j]) {
                vs.push_back(SparseVector::unit(i));
                break;
            }
    if (k <= P.up_to)
        for (const auto& row : P.component(k).basis())
            vs.push_back(E.to_vector(pad(A.from_vector(row, k), E.num_generators()), k));
    return Subspace::span(E.dim(k), vs).basis();
}

/* Cocycle representatives of H^k(J), J = ker(E -> A/P). */
std::vector<SparseVector> kernel_cohomology(const FreeCDGA& E, std::size_t base_generators, const FreeCDGA& A,
                                            const DegreewiseIdeal& P, int k)
{
    const auto Jk = ideal_part(E, base_generators, A, P, k);
    if (Jk.empty())
        return {};
    const LinearMap& dk = E.d_matrix(k);
    std::vector<SparseVector> cols;
    for (const auto& j : Jk)
        cols.push_back(dk.apply(j));
    ColumnElimination elim(LinearMap(Jk.size(), E.dim(k + 1), std::move(cols)));
    std::vector<SparseVector> cycles;
    for (const auto& c : elim.kernel_vectors()) {
        SparseVector z;
        for (const auto& [i, a] : c.entries())
            z.add_scaled(Jk[i], a);
        cycles.push_back(std::move(z));
    }
    if (cycles.empty())
        return {};
    std::vector<SparseVector> bounds;
    if (k >= 1) {
        const LinearMap& dk1 = E.d_matrix(k - 1);
        for (const auto& j : ideal_part(E, base_generators, A, P, k - 1))
            bounds.push_back(dk1.apply(j));
    }
    auto cyc = Subspace::span(E.dim(k), cycles).basis();
    return complement_reps(Subspace::span(E.dim(k), bounds), cyc);
}

}  // namespace

RelativeModel relative_model_of_quotient(const CDGAMorphism& psi0, int n, int N)
{
    if (n < 0)
        throw Error(ErrorCode::InvalidParameter, "n must be non-negative");
    CDGAMorphism psi = with_truncation(psi0, N);
    if (!psi.surjective())
        throw Error(ErrorCode::NotSurjective, "relative model needs a surjective model");
    auto A = std::make_shared<const FreeCDGA>(tensor_square(psi.source()));
    DegreewiseIdeal P = ideal_power(kernel_ideal(psi, A, N), n + 1);

    const std::size_t G0 = A->num_generators();
    std::vector<Generator> gens = A->generators();
    std::vector<Poly> diffs;
    for (std::size_t i = 0; i < G0; ++i)
        diffs.push_back(A->differential(i));
    std::map<int, int> per_degree;

    auto build = [&] {
        return std::make_shared<const FreeCDGA>(A->name() + "⊗ΛU", gens, pad_all(diffs, gens.size()), N,
                                                A->allows_degree_one() || has_degree_one_generator(gens));
    };
    CDGAPtr E = build();
    for (int k = 1; k <= N; ++k) {
        for (int pass = 0;; ++pass) {
            if (pass > 64)
                throw Error(ErrorCode::TruncationExceeded,
                            "relative model does not stabilize in degree " + std::to_string(k));
            auto reps = kernel_cohomology(*E, G0, *A, P, k);
            if (reps.empty())
                break;
            if (k - 1 < 1)
                throw Error(ErrorCode::Unsupported,
                            "relative model would need a degree-0 generator to kill H^" + std::to_string(k));
            for (const auto& z : reps) {
                const int idx = ++per_degree[k - 1];
                gens.push_back({"u" + std::to_string(k - 1) + "_" + std::to_string(idx), k - 1});
                diffs.push_back(E->from_vector(z, k));
            }
            E = build();
            if (!has_degree_one_generator(gens))
                break;
        }
    }
    return {A, E, std::move(P), G0};
}

FactorizationOutcome homotopy_factorization(const CDGAMorphism& psi0, int n, int N)
{
    if (n < 0)
        throw Error(ErrorCode::InvalidParameter, "n must be non-negative");
    CDGAMorphism psi = with_truncation(psi0, N);
    if (!psi.surjective())
        throw Error(ErrorCode::NotSurjective, "homotopy factorization needs a surjective model");
    FactorizationOutcome out;
    out.n = n;
    out.N = N;

    RelativeModel rel;
    try {
        rel = relative_model_of_quotient(psi, n, N);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Unsupported && e.code() != ErrorCode::TruncationExceeded)
            throw;
        out.verdict = Verdict::Unknown;
        out.log.push_back({"", 0, "", e.what()});
        return out;
    }
    const FreeCDGA& E = *rel.extension;
    auto B = std::make_shared<const FreeCDGA>(tensor_square(psi.target()));
    const std::size_t G0 = rel.base_generators;
    const std::size_t GS = psi.source().num_generators();
    const std::size_t GT = psi.target().num_generators();
    out.extension_generators = E.num_generators() - G0;

    std::vector<Poly> images(E.num_generators());
    for (std::size_t i = 0; i < GS; ++i) {
        images[i] = embed_left(psi.image(i), GT);
        images[GS + i] = embed_right(psi.image(i), GT);
    }
    Evaluator rho(E, *B, std::move(images));
    DifferentialSolver solver(*B);
    for (std::size_t i = G0; i < E.num_generators(); ++i) {
        const auto& u = E.generator(i);
        Poly target = rho.apply(E.differential(i));
        auto lift = solver.solve(target, u.degree);
        if (!lift) {
            out.verdict = Verdict::Unknown;
            out.log.push_back({u.name, u.degree, B->format(target),
                               "ρ(d" + u.name + ") is not a coboundary in degree " + std::to_string(u.degree + 1) +
                                   "; greedy lift stops (no backtracking), retry with another truncation"});
            return out;
        }
        rho.set(i, std::move(*lift));
        ++out.lifted;
    }
    CDGAMorphism full(rel.extension, B, rho.images());
    for (const auto& v : validate_cdga_morphism(full))
        out.log.push_back({"", 0, "", v.kind + ": " + v.detail});
    out.verdict = out.log.empty() ? Verdict::Certified : Verdict::Unknown;
    return out;
}

/* ---------------------------------------------------------------------- */

SparseVector FormalModel::beta_of(const Poly& p) const
{
    SparseVector out;
    for (const auto& [m, c] : p) {
        SparseVector acc = cohomology->unit_element();
        for (std::size_t i = 0; i < m.size() && !acc.is_zero(); ++i)
            for (int e = 0; e < m[i]; ++e)
                acc = cohomology->multiply(acc, beta[i]);
        out.add_scaled(acc, c);
    }
    return out;
}

FormalModel formal_model(algebra::AlgebraPtr H, int N)
{
    if (algebra::has_degree_one(*H))
        throw Error(ErrorCode::NotSimplyConnected, "formal model needs a simply connected algebra: " + H->name());
    const auto& basis = H->basis();
    std::vector<Generator> gens;
    std::vector<Poly> diffs;
    std::vector<SparseVector> beta;
    std::set<std::string> used;
    auto unique = [&](std::string name) {
        while (used.count(name))
            name += "_";
        used.insert(name);
        return name;
    };
    auto build = [&] {
        return std::make_shared<const FreeCDGA>("M(" + H->name() + ")", gens, pad_all(diffs, gens.size()), N);
    };
    auto model = [&] { return FormalModel{H, build(), beta}; };

    for (int k = 2; k <= N; ++k) {
        FormalModel cur = model();
        std::vector<SparseVector> hit;
        for (const auto& z : cocycles(*cur.model, k))
            hit.push_back(cur.beta_of(cur.model->from_vector(z, k)));
        Subspace S = Subspace::span(H->dim(), hit);
        for (std::size_t idx : basis.in_degree(k)) {
            SparseVector e = SparseVector::unit(idx);
            if (S.contains(e))
                continue;
            S = linalg::sum(S, span1(H->dim(), e));
            gens.push_back({unique(basis.name(idx)), k});
            diffs.push_back({});
            beta.push_back(e);
        }
        if (k + 1 > N)
            continue;

        cur = model();
        const auto Z = cocycles(*cur.model, k + 1);
        std::vector<SparseVector> cols;
        for (const auto& z : Z)
            cols.push_back(cur.beta_of(cur.model->from_vector(z, k + 1)));
        ColumnElimination elim(LinearMap(Z.size(), H->dim(), std::move(cols)));
        std::vector<SparseVector> killed;
        for (const auto& c : elim.kernel_vectors()) {
            SparseVector w;
            for (const auto& [i, a] : c.entries())
                w.add_scaled(Z[i], a);
            killed.push_back(std::move(w));
        }
        auto reps = complement_reps(coboundaries(*cur.model, k + 1),
                                    Subspace::span(cur.model->dim(k + 1), killed).basis());
        for (std::size_t r = 0; r < reps.size(); ++r) {
            std::string name = "y" + std::to_string(k);
            if (reps.size() > 1)
                name += "_" + std::to_string(r + 1);
            gens.push_back({unique(name), k});
            diffs.push_back(cur.model->from_vector(reps[r], k + 1));
            beta.push_back({});
        }
    }
    return model();
}

CDGAMorphism formal_map_model(const algebra::AlgebraMorphism& f, const FormalModel& Y, const FormalModel& X)
{
    if (!(f.source() == *Y.cohomology) || !(f.target() == *X.cohomology))
        throw Error(ErrorCode::CompositionMismatch, "cohomology morphism does not match the formal models");
    const FreeCDGA& MY = *Y.model;
    const FreeCDGA& MX = *X.model;
    Evaluator psi(MY, MX, std::vector<Poly>(MY.num_generators()));
    DifferentialSolver solver(MX);
    std::map<int, std::pair<std::vector<SparseVector>, ColumnElimination>> closed;

    for (std::size_t i = 0; i < MY.num_generators(); ++i) {
        const auto& v = MY.generator(i);
        const int k = v.degree;
        auto b = solver.solve(psi.apply(MY.differential(i)), k);
        if (!b)
            throw Error(ErrorCode::NotFormal, "cannot lift generator " + v.name + ": image of its differential is not exact");
        SparseVector h = f.apply(Y.beta[i]);
        h -= X.beta_of(*b);

        auto it = closed.find(k);
        if (it == closed.end()) {
            auto Z = cocycles(MX, k);
            std::vector<SparseVector> cols;
            for (const auto& z : Z)
                cols.push_back(X.beta_of(MX.from_vector(z, k)));
            ColumnElimination elim(LinearMap(Z.size(), X.cohomology->dim(), std::move(cols)));
            it = closed.emplace(k, std::make_pair(std::move(Z), std::move(elim))).first;
        }
        auto c = it->second.second.solve(h);
        if (!c)
            throw Error(ErrorCode::NotFormal, "cannot realize the cohomology image of " + v.name);
        Poly img = *b;
        for (const auto& [j, a] : c->entries())
            add_poly(img, MX.from_vector(it->second.first[j], k), a);
        psi.set(i, std::move(img));
    }
    return CDGAMorphism(Y.model, X.model, psi.images());
}

ConsistencyReport formal_consistency(const algebra::WorkMap& f, std::optional<int> N)
{
    if (!f.flags.formal)
        throw Error(ErrorCode::NotFormal, f.name + " is not flagged formal");
    if (!f.flags.simply_connected || algebra::has_degree_one(*f.domain) || algebra::has_degree_one(*f.codomain))
        throw Error(ErrorCode::NotSimplyConnected, f.name + " is not simply connected");
    ConsistencyReport r;
    r.map = f.name;
    r.N = N.value_or(default_truncation(f.domain->top_degree()));
    r.n = invariants::tc_lower_bound(f);

    FormalModel X = formal_model(f.domain, r.N);
    FormalModel Y = formal_model(f.codomain, r.N);
    CDGAMorphism psi = formal_map_model(f.induced, Y, X);
    for (const auto& v : validate_cdga_morphism(psi))
        r.defects.push_back("model of " + f.name + ": " + v.kind + " " + v.detail);
    CDGAMorphism gamma = surjectivize(psi);

    r.strict = strict_certificate(gamma, r.n, r.N);
    r.homotopy = homotopy_factorization(gamma, r.n, r.N);
    if (r.homotopy.verdict != Verdict::Certified)
        r.defects.push_back("homotopy factorization not certified at n = " + std::to_string(r.n));
    if (r.strict.verdict == Verdict::Certified && r.homotopy.verdict != Verdict::Certified)
        r.defects.push_back("certificate ordering violated: strict certified but homotopy not");
    return r;
}

}  // namespace tcmap::sullivan
