#include "tcmap/invariants.hpp"

#include <algorithm>

#include "tcmap/error.hpp"

namespace tcmap::invariants {

using linalg::ColumnElimination;
using linalg::SparseVector;

const char* to_string(BoundKind kind)
{
    switch (kind) {
    case BoundKind::Lower: return "lower";
    case BoundKind::Upper: return "upper";
    case BoundKind::Exact: return "exact";
    case BoundKind::Certificate: return "certificate";
    }
    return "?";
}

int nil_index(const GradedSubspace& S, const GradedAlgebra& B)
{
    if (const auto* c = S.component(0); c && !c->is_zero())
        throw Error(ErrorCode::NotPositiveDegree, "subspace has a degree-0 component");
    if (S.is_zero())
        return 0;
    const std::vector<SparseVector> gens = S.basis();
    std::vector<SparseVector> power = gens;
    int n = 1;
    for (;;) {
        std::vector<SparseVector> next;
        for (const auto& u : power)
            for (const auto& v : gens) {
                SparseVector w = B.multiply(u, v);
                if (!w.is_zero())
                    next.push_back(std::move(w));
            }
        GradedSubspace P = GradedSubspace::span(B.basis_ptr(), next);
        if (P.is_zero())
            return n;
        power = P.basis();
        ++n;
    }
}

GradedSubspace graded_kernel(const linalg::LinearMap& map, std::shared_ptr<const linalg::GradedBasis> domain)
{
    ColumnElimination elim(map);
    std::vector<SparseVector> parts;
    for (const auto& v : elim.kernel_vectors())
        for (const auto& [d, local] : linalg::split_by_degree(*domain, v))
            parts.push_back(linalg::embed_local(*domain, d, local));
    return GradedSubspace::span(std::move(domain), parts);
}

GradedSubspace restricted_zero_divisors(const WorkMap& f, const GradedAlgebra& square)
{
    const GradedAlgebra& X = *f.domain;
    const GradedAlgebra& Y = *f.codomain;
    const std::size_t nx = X.dim();
    std::vector<SparseVector> image;
    for (std::size_t i = 0; i < Y.dim(); ++i)
        for (std::size_t j = 0; j < Y.dim(); ++j) {
            if (Y.degree(i) + Y.degree(j) == 0)
                continue;
            SparseVector v;
            for (const auto& [r, a] : f.induced.image(i).entries())
                for (const auto& [s, b] : f.induced.image(j).entries())
                    v.add(algebra::pair_index(nx, r, s), a * b);
            if (!v.is_zero())
                image.push_back(std::move(v));
        }
    GradedSubspace im = GradedSubspace::span(square.basis_ptr(), image);
    GradedSubspace ker = graded_kernel(algebra::cup_morphism(X), square.basis_ptr());
    return intersect(im, ker);
}

GradedSubspace restricted_zero_divisors(const WorkMap& f)
{
    return restricted_zero_divisors(f, algebra::tensor_square(*f.domain));
}

int tc_lower_bound(const WorkMap& f)
{
    GradedAlgebra square = algebra::tensor_square(*f.domain);
    return nil_index(restricted_zero_divisors(f, square), square);
}

int secat_lower_bound(const AlgebraMorphism& p_star, const AlgebraMorphism& f_star)
{
    if (!(f_star.target() == p_star.source()))
        throw Error(ErrorCode::CompositionMismatch, "target of f* is not the source of p*");
    const GradedAlgebra& B = p_star.source();
    GradedSubspace ker = graded_kernel(p_star.linear_map(), B.basis_ptr());
    return nil_index(intersect(f_star.reduced_image(), ker), B);
}

int cat_image_cuplength(const WorkMap& f) { return nil_index(f.induced.reduced_image(), *f.domain); }

namespace {

std::vector<std::string> inputs_of(const WorkMap& f)
{
    return {f.name, f.domain->name(), f.codomain->name()};
}

}  // namespace

BoundReport formal_tc(const WorkMap& f, bool override_hypotheses)
{
    std::string warning;
    if (!f.flags.formal) {
        if (!override_hypotheses)
            throw Error(ErrorCode::NotFormal, f.name + " is not flagged formal");
        warning = "formality not asserted; value is only a lower bound";
    }
    if (!f.flags.simply_connected) {
        if (!override_hypotheses)
            throw Error(ErrorCode::NotSimplyConnected, f.name + " is not simply connected");
        if (warning.empty())
            warning = "not simply connected; value is only a lower bound";
    }
    BoundReport r;
    r.value = tc_lower_bound(f);
    r.inputs = inputs_of(f);
    if (warning.empty()) {
        r.invariant = "TC(f_Q)";
        r.kind = BoundKind::Exact;
        r.citation = citation::formal;
        r.note = std::string("also a lower bound for TC(f): ") + citation::rational;
    } else {
        r.invariant = "TC(f)";
        r.kind = BoundKind::Lower;
        r.citation = citation::zero_divisor;
        r.note = "warning: " + warning;
    }
    return r;
}

std::vector<BoundReport> bounds_report(const WorkMap& f)
{
    const auto inputs = inputs_of(f);
    if (f.hints.null_homotopic) {
        std::vector<BoundReport> out{{"TC(f)", 0, BoundKind::Exact, citation::trivial, inputs, "f is null-homotopic"}};
        if (f.flags.codomain_coH)
            out.push_back({"TC(f)", 2, BoundKind::Upper, citation::coh, inputs, ""});
        return out;
    }

    std::vector<BoundReport> out;
    const int zd = tc_lower_bound(f);
    const int cl = cat_image_cuplength(f);
    const int lower = std::max(zd, cl);
    out.push_back({"nil ker(cup)|Im(f×f)*", zd, BoundKind::Lower, citation::zero_divisor, inputs, ""});
    out.push_back({"cat(f)", cl, BoundKind::Lower, citation::image_cuplength, inputs,
                   "auxiliary bound, not derived from the TC(f) inequalities"});
    out.push_back({"TC(f)", lower, BoundKind::Lower, citation::sandwich, inputs,
                   "max{cat(f), nil ker(cup)|Im(f×f)*} <= TC(f)"});

    const bool formal = f.flags.formal && f.flags.simply_connected;
    if (formal)
        out.push_back(formal_tc(f));

    std::optional<int> upper;
    if (f.hints.domain_tc) {
        upper = *f.hints.domain_tc;
        out.push_back({"TC(f)", upper, BoundKind::Upper, citation::sandwich, inputs, "TC(f) <= TC(X)"});
    }
    if (f.flags.codomain_coH) {
        upper = upper ? std::min(*upper, 2) : 2;
        out.push_back({"TC(f)", 2, BoundKind::Upper, citation::coh, inputs, ""});
    }
    if (formal && upper && *upper == lower)
        out.push_back({"TC(f)", lower, BoundKind::Exact, citation::sandwich, inputs,
                       "lower and upper bounds agree"});

    if (f.induced.is_zero_on_reduced())
        out.push_back({"TC(f) = 0", std::nullopt, BoundKind::Certificate, citation::trivial, inputs,
                       "consistent: f̃* = 0; exactness unknown, cohomology cannot certify f null-homotopic"});
    else
        out.push_back({"TC(f) = 0", std::nullopt, BoundKind::Certificate, citation::trivial, inputs,
                       "inconsistent: f̃* != 0, so f is essential and TC(f) >= 1"});
    return out;
}

WorkMap identity_work_map(algebra::AlgebraPtr x, bool formal, std::optional<int> known_tc)
{
    WorkMap f{"id(" + x->name() + ")", x, x, algebra::identity_morphism(x), {}, {}};
    f.flags.formal = formal;
    f.flags.simply_connected = !algebra::has_degree_one(*x);
    f.hints.domain_tc = known_tc;
    return f;
}

}  // namespace tcmap::invariants
