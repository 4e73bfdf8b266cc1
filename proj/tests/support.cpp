#include "support.hpp"

#include <functional>
#include <stdexcept>

#include "tcmap/invariants.hpp"
#include "tcmap/sullivan.hpp"

namespace tcmap::testing {

using algebra::ProductEntry;
using linalg::BasisElement;
using linalg::GradedBasis;
using linalg::SparseVector;

std::size_t dense_rank(DenseMatrix rows)
{
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][c] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0)
                continue;
            const Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

DenseMatrix dense_inverse(DenseMatrix m)
{
    const std::size_t n = m.size();
    DenseMatrix inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0)
            ++p;
        if (p == n)
            throw std::runtime_error("singular matrix");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        const Rational d = m[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] /= d;
            inv[c][k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0)
                continue;
            const Rational f = m[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[r][k] -= f * m[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

int brute_force_nil(const GradedAlgebra& B, const std::vector<Element>& span)
{
    std::vector<Element> gens;
    for (const auto& g : span)
        if (!g.is_zero())
            gens.push_back(g);
    if (gens.empty())
        return 0;
    int best = 0;
    std::function<void(std::size_t, int, const Element&)> walk = [&](std::size_t from, int length, const Element& p) {
        if (length > best)
            best = length;
        for (std::size_t i = from; i < gens.size(); ++i) {
            Element q = length == 0 ? gens[i] : B.multiply(p, gens[i]);
            if (!q.is_zero())
                walk(i, length + 1, q);
        }
    };
    walk(0, 0, Element());
    return best;
}

std::vector<AlgebraPtr> small_algebras()
{
    std::vector<AlgebraPtr> out;
    for (const char* s : {"point", "sphere(1)", "sphere(2)", "sphere(3)", "sphere(4)", "sphere(7)",
                          "complex_projective(1)", "complex_projective(3)", "complex_projective(5)", "torus(2)",
                          "torus(3)", "torus(4)", "product(sphere(2),sphere(3))", "product(sphere(2),sphere(2))",
                          "product(complex_projective(2),sphere(3))"})
        out.push_back(catalog::space(s));
    for (const char* s : {"sphere(2)", "sphere(3)", "complex_projective(2)", "complex_projective(3)", "torus(2)",
                          "product(sphere(2),sphere(3))"})
        out.push_back(std::make_shared<const GradedAlgebra>(algebra::tensor_square(*catalog::space(s))));
    return out;
}

namespace {

DenseMatrix random_graded_change(const GradedBasis& b, std::size_t unit, std::mt19937_64& rng)
{
    const std::size_t n = b.size();
    DenseMatrix P(n, std::vector<Rational>(n));
    std::uniform_int_distribution<int> off(-2, 2);
    static constexpr int diag[] = {1, -1, 2, -2, 3};
    std::uniform_int_distribution<int> pick(0, 4);
    for (int k = 0; k <= b.top_degree(); ++k) {
        const auto& idx = b.in_degree(k);
        const std::size_t m = idx.size();
        DenseMatrix L(m, std::vector<Rational>(m)), U(m, std::vector<Rational>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                if (i > j)
                    L[i][j] = off(rng);
                if (i == j) {
                    L[i][j] = 1;
                    U[i][j] = diag[pick(rng)];
                }
                if (i < j)
                    U[i][j] = off(rng);
            }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                Rational s = 0;
                for (std::size_t t = 0; t < m; ++t)
                    s += L[i][t] * U[t][j];
                P[idx[i]][idx[j]] = s;
            }
    }
    for (std::size_t i = 0; i < n; ++i)
        P[i][unit] = i == unit ? 1 : 0;
    for (std::size_t j = 0; j < n; ++j)
        if (j != unit)
            P[unit][j] = 0;
    return P;
}

Element column(const DenseMatrix& P, std::size_t j)
{
    Element v;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (P[i][j] != 0)
            v.add(i, P[i][j]);
    return v;
}

Element mat_apply(const DenseMatrix& M, const Element& v)
{
    Element out;
    for (const auto& [j, c] : v.entries())
        for (std::size_t i = 0; i < M.size(); ++i)
            if (M[i][j] != 0)
                out.add(i, M[i][j] * c);
    return out;
}

Element random_homogeneous(const GradedAlgebra& A, int degree, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> coeff(-3, 3);
    Element v;
    for (std::size_t i : A.basis().in_degree(degree))
        if (int c = coeff(rng))
            v.add(i, Rational(c));
    return v;
}

std::vector<int> present_degrees(const GradedAlgebra& A)
{
    std::vector<int> out;
    for (int k = 0; k <= A.top_degree(); ++k)
        if (!A.basis().in_degree(k).empty())
            out.push_back(k);
    return out;
}

}  // namespace

Conjugated conjugate(const AlgebraPtr& a, std::mt19937_64& rng)
{
    Conjugated c;
    c.P = random_graded_change(a->basis(), a->unit(), rng);
    c.Pinv = dense_inverse(c.P);
    const std::size_t n = a->dim();
    std::vector<ProductEntry> products;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Element p = mat_apply(c.Pinv, a->multiply(column(c.P, i), column(c.P, j)));
            if (!p.is_zero())
                products.push_back(ProductEntry{i, j, std::move(p)});
        }
    c.algebra = std::make_shared<const GradedAlgebra>(a->name() + "'", a->basis(), a->unit(), std::move(products));
    return c;
}

WorkMap conjugate(const WorkMap& f, std::mt19937_64& rng)
{
    Conjugated X = conjugate(f.domain, rng);
    Conjugated Y = conjugate(f.codomain, rng);
    std::vector<Element> images;
    for (std::size_t i = 0; i < f.codomain->dim(); ++i)
        images.push_back(mat_apply(X.Pinv, f.induced.apply(column(Y.P, i))));
    return WorkMap{f.name + "'", X.algebra, Y.algebra,
                   algebra::AlgebraMorphism(Y.algebra, X.algebra, std::move(images)), f.flags, f.hints};
}

PropertyResult commutativity_associativity(std::uint64_t seed, std::size_t checks)
{
    std::mt19937_64 rng(seed);
    std::vector<AlgebraPtr> bases;
    std::vector<AlgebraPtr> squares;
    for (const auto& spec : catalog::standard_spaces()) {
        auto A = catalog::space(spec);
        bases.push_back(A);
        squares.push_back(std::make_shared<const GradedAlgebra>(algebra::tensor_square(*A)));
    }
    PropertyResult r;
    for (std::size_t t = 0; t < checks; ++t) {
        const std::size_t which = rng() % squares.size();
        const GradedAlgebra& A = *bases[which];
        const GradedAlgebra& S = *squares[which];
        const auto degs = present_degrees(S);
        const int da = degs[rng() % degs.size()], db = degs[rng() % degs.size()], dc = degs[rng() % degs.size()];
        const Element a = random_homogeneous(S, da, rng);
        const Element b = random_homogeneous(S, db, rng);
        const Element c = random_homogeneous(S, dc, rng);
        ++r.checks;
        const std::string where = S.name() + " check " + std::to_string(t);
        if (!(S.multiply(a, b) == Rational(koszul_sign(da, db)) * S.multiply(b, a)))
            r.fail(where + ": graded commutativity");
        if (!(S.multiply(S.multiply(a, b), c) == S.multiply(a, S.multiply(b, c))))
            r.fail(where + ": associativity");
        // (x⊗y)(z⊗w) = (-1)^{|y||z|} xz⊗yw against the factor's own table
        const std::size_t n = A.dim();
        const std::size_t x = rng() % n, y = rng() % n, z = rng() % n, w = rng() % n;
        Element expect;
        const Element xz = A.product(x, z), yw = A.product(y, w);
        const int sign = koszul_sign(A.degree(y), A.degree(z));
        for (const auto& [i, ci] : xz.entries())
            for (const auto& [j, cj] : yw.entries())
                expect.add(algebra::pair_index(n, i, j), Rational(sign) * ci * cj);
        if (!(S.product(algebra::pair_index(n, x, y), algebra::pair_index(n, z, w)) == expect))
            r.fail(where + ": Koszul sign of the tensor product");
    }
    return r;
}

PropertyResult nil_oracle(std::uint64_t seed, std::size_t random_subspaces)
{
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (const auto& B : small_algebras()) {
        if (B->dim() > 16)
            continue;
        std::vector<std::size_t> positive;
        for (std::size_t i = 0; i < B->dim(); ++i)
            if (B->degree(i) > 0)
                positive.push_back(i);
        auto check = [&](const std::vector<Element>& gens, const std::string& label) {
            ++r.checks;
            auto S = linalg::GradedSubspace::span(B->basis_ptr(), gens);
            const int got = invariants::nil_index(S, *B);
            const int want = brute_force_nil(*B, gens);
            if (got != want)
                r.fail(B->name() + " " + label + ": nil_index " + std::to_string(got) + ", oracle " +
                       std::to_string(want));
        };
        std::vector<std::size_t> pick;
        std::function<void(std::size_t)> subsets = [&](std::size_t from) {
            if (!pick.empty()) {
                std::vector<Element> gens;
                std::string label = "span{";
                for (std::size_t i : pick) {
                    gens.push_back(Element::unit(i));
                    label += B->basis().name(i) + ",";
                }
                check(gens, label + "}");
            }
            if (pick.size() == 4)
                return;
            for (std::size_t k = from; k < positive.size(); ++k) {
                pick.push_back(positive[k]);
                subsets(k + 1);
                pick.pop_back();
            }
        };
        subsets(0);
        const auto degs = present_degrees(*B);
        for (std::size_t t = 0; t < random_subspaces && degs.size() > 1; ++t) {
            std::vector<Element> gens;
            const std::size_t m = 1 + rng() % 4;
            for (std::size_t g = 0; g < m; ++g)
                gens.push_back(random_homogeneous(*B, degs[1 + rng() % (degs.size() - 1)], rng));
            check(gens, "random subspace " + std::to_string(t));
        }
    }
    return r;
}

PropertyResult basis_change(std::uint64_t seed, std::size_t conjugations)
{
    std::mt19937_64 rng(seed);
    std::vector<WorkMap> maps;
    for (const auto& spec : catalog::standard_maps())
        maps.push_back(catalog::map(spec));
    PropertyResult r;
    for (std::size_t t = 0; t < conjugations; ++t) {
        const WorkMap& f = maps[t % maps.size()];
        WorkMap g = conjugate(f, rng);
        ++r.checks;
        const auto v = algebra::validate_morphism(g.induced);
        if (!v.empty()) {
            r.fail(g.name + ": conjugated morphism invalid: " + v.front().kind);
            continue;
        }
        const int a = invariants::tc_lower_bound(f);
        const int b = invariants::tc_lower_bound(g);
        if (a != b)
            r.fail(f.name + ": tc_lower_bound " + std::to_string(a) + " became " + std::to_string(b));
    }
    return r;
}

bool d_squared_zero(const sullivan::FreeCDGA& M, std::string* detail)
{
    for (int k = 0; k < M.truncation(); ++k) {
        const auto dd = M.d_matrix(k + 1).after(M.d_matrix(k));
        for (std::size_t j = 0; j < dd.domain_dim(); ++j)
            if (!dd.image(j).is_zero()) {
                if (detail)
                    *detail = M.name() + ": d∘d matrix nonzero on " + M.format(M.basis(k)[j]);
                return false;
            }
        for (const auto& m : M.basis(k)) {
            sullivan::Poly p;
            sullivan::add_term(p, m, Rational(1));
            if (!M.d(M.d(p)).empty()) {
                if (detail)
                    *detail = M.name() + ": d(d(" + M.format(m) + ")) != 0";
                return false;
            }
        }
    }
    return true;
}

PropertyResult d_squared_on_extensions()
{
    PropertyResult r;
    auto check = [&](const sullivan::FreeCDGA& M) {
        ++r.checks;
        std::string why;
        if (!d_squared_zero(M, &why))
            r.fail(why);
    };
    for (const auto& spec : catalog::standard_maps()) {
        WorkMap f = catalog::map(spec);
        if (!f.flags.formal || !f.flags.simply_connected)
            continue;
        const int N = sullivan::default_truncation(f.domain->top_degree());
        auto X = sullivan::formal_model(f.domain, N);
        auto Y = sullivan::formal_model(f.codomain, N);
        auto psi = sullivan::formal_map_model(f.induced, Y, X);
        auto gamma = sullivan::surjectivize(psi);
        check(*X.model);
        check(*Y.model);
        check(gamma.target());
        check(sullivan::tensor_square(gamma.source()));
        const int n = invariants::tc_lower_bound(f);
        auto rel = sullivan::relative_model_of_quotient(gamma, n, N);
        check(*rel.extension);
    }
    return r;
}

}  // namespace tcmap::testing
