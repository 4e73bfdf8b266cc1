#include "tcmap/graded_algebra.hpp"

#include <sstream>

#include "tcmap/error.hpp"

namespace tcmap::algebra {

GradedAlgebra::GradedAlgebra(std::string name, GradedBasis basis, std::size_t unit,
                             std::vector<ProductEntry> products)
    : name_(std::move(name)),
      basis_(std::make_shared<const GradedBasis>(std::move(basis))),
      unit_(unit),
      products_(std::move(products))
{
    const std::size_t n = basis_->size();
    if (unit_ >= n)
        throw Error(ErrorCode::InvalidParameter, "unit index out of range in algebra " + name_);
    for (std::size_t k = 0; k < products_.size(); ++k) {
        const auto& p = products_[k];
        if (p.left >= n || p.right >= n)
            throw Error(ErrorCode::InvalidParameter, "product index out of range in algebra " + name_);
        if (!p.result.is_zero() && p.result.entries().back().first >= n)
            throw Error(ErrorCode::InvalidParameter, "product result out of range in algebra " + name_);
        if (!index_.emplace(p.left * n + p.right, k).second)
            throw Error(ErrorCode::InvalidParameter,
                        "duplicate product (" + basis_->name(p.left) + "," + basis_->name(p.right) + ")");
    }
}

const Element* GradedAlgebra::supplied(std::size_t i, std::size_t j) const
{
    auto it = index_.find(i * dim() + j);
    return it == index_.end() ? nullptr : &products_[it->second].result;
}

Element GradedAlgebra::product(std::size_t i, std::size_t j) const
{
    if (const Element* e = supplied(i, j))
        return *e;
    if (const Element* e = supplied(j, i)) {
        Element out = *e;
        if (koszul_sign(degree(i), degree(j)) < 0)
            out *= Rational(-1);
        return out;
    }
    if (i == unit_)
        return Element::unit(j);
    if (j == unit_)
        return Element::unit(i);
    return {};
}

Element GradedAlgebra::multiply(const Element& u, const Element& v) const
{
    Element out;
    for (const auto& [i, a] : u.entries())
        for (const auto& [j, b] : v.entries()) {
            Element p = product(i, j);
            if (!p.is_zero())
                out.add_scaled(p, a * b);
        }
    return out;
}

Element GradedAlgebra::power(const Element& u, int n) const
{
    Element out = unit_element();
    for (int k = 0; k < n; ++k)
        out = multiply(out, u);
    return out;
}

std::vector<ProductEntry> GradedAlgebra::canonical_products() const
{
    std::vector<ProductEntry> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (i == unit_)
            continue;
        for (std::size_t j = i; j < dim(); ++j) {
            if (j == unit_)
                continue;
            Element p = product(i, j);
            if (!p.is_zero())
                out.push_back({i, j, std::move(p)});
        }
    }
    return out;
}

std::string GradedAlgebra::format(const Element& v) const
{
    if (v.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : v.entries()) {
        if (c < 0)
            os << (first ? "-" : " - ");
        else if (!first)
            os << " + ";
        Rational a = abs(c);
        if (a != 1)
            os << a.str() << "*";
        os << basis_->name(i);
        first = false;
    }
    return os.str();
}

bool operator==(const GradedAlgebra& a, const GradedAlgebra& b)
{
    if (!(a.basis() == b.basis()) || a.unit() != b.unit())
        return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j)
            if (a.product(i, j) != b.product(i, j) || a.product(j, i) != b.product(j, i))
                return false;
    return true;
}

/* ---------------------------------------------------------------------- */

std::vector<Violation> validate_algebra(const GradedAlgebra& a, const AlgebraLimits& limits)
{
    std::vector<Violation> out;
    const auto& B = a.basis();
    const std::size_t n = a.dim();
    auto pair_name = [&](std::size_t i, std::size_t j) { return "(" + B.name(i) + "," + B.name(j) + ")"; };

    if (a.top_degree() > limits.max_top_degree)
        out.push_back({"limits", "top degree " + std::to_string(a.top_degree()) + " exceeds cap " +
                                     std::to_string(limits.max_top_degree)});
    if (n > limits.max_dimension)
        out.push_back({"limits", "dimension " + std::to_string(n) + " exceeds cap " +
                                     std::to_string(limits.max_dimension)});
    if (a.degree(a.unit()) != 0)
        out.push_back({"unit", "unit " + B.name(a.unit()) + " has nonzero degree"});
    if (B.in_degree(0).size() != 1)
        out.push_back({"connectedness", "degree 0 must be spanned by the unit alone"});

    for (const auto& p : a.supplied_products()) {
        const int d = a.degree(p.left) + a.degree(p.right);
        for (const auto& [k, c] : p.result.entries())
            if (a.degree(k) != d) {
                out.push_back({"degree-additivity", pair_name(p.left, p.right) + " has a term " + B.name(k) +
                                                        " of degree " + std::to_string(a.degree(k)) +
                                                        ", expected " + std::to_string(d)});
                break;
            }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (a.product(a.unit(), i) != Element::unit(i) || a.product(i, a.unit()) != Element::unit(i))
            out.push_back({"unit-law", "unit does not act as identity on " + B.name(i)});
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (!a.supplied(i, j) || !a.supplied(j, i) || i == j)
                continue;
            Element lhs = a.product(i, j);
            Element rhs = a.product(j, i);
            rhs *= Rational(koszul_sign(a.degree(i), a.degree(j)));
            if (lhs != rhs)
                out.push_back({"graded-commutativity", pair_name(i, j)});
        }

    for (std::size_t i = 0; i < n; ++i)
        if (a.degree(i) % 2 == 1 && !a.product(i, i).is_zero())
            out.push_back({"odd-square", B.name(i) + " has odd degree and nonzero square"});

    for (std::size_t i = 0; i < n; ++i) {
        if (i == a.unit())
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == a.unit())
                continue;
            Element ij = a.product(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                if (k == a.unit())
                    continue;
                Element jk = a.product(j, k);
                if (ij.is_zero() && jk.is_zero())
                    continue;
                Element lhs = a.multiply(ij, Element::unit(k));
                Element rhs = a.multiply(Element::unit(i), jk);
                if (lhs != rhs)
                    out.push_back({"associativity",
                                   "(" + B.name(i) + "," + B.name(j) + "," + B.name(k) + ")"});
            }
        }
    }
    return out;
}

GradedAlgebra tensor_product(const GradedAlgebra& a, const GradedAlgebra& b)
{
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    std::vector<linalg::BasisElement> elems;
    elems.reserve(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            elems.push_back({a.basis().name(i) + "⊗" + b.basis().name(j), a.degree(i) + b.degree(j)});

    // Nonzero factor products, so the pair loop only visits useful entries.
    std::vector<std::vector<std::pair<std::size_t, Element>>> prod_a(na), prod_b(nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t k = 0; k < na; ++k)
            if (auto p = a.product(i, k); !p.is_zero())
                prod_a[i].emplace_back(k, std::move(p));
    for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t l = 0; l < nb; ++l)
            if (auto p = b.product(j, l); !p.is_zero())
                prod_b[j].emplace_back(l, std::move(p));

    const std::size_t unit = a.unit() * nb + b.unit();
    std::vector<ProductEntry> products;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const std::size_t p = i * nb + j;
            if (p == unit)
                continue;
            for (const auto& [k, ac] : prod_a[i])
                for (const auto& [l, bd] : prod_b[j]) {
                    const std::size_t q = k * nb + l;
                    if (q < p || q == unit)
                        continue;
                    // (a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd
                    Rational sign(koszul_sign(b.degree(j), a.degree(k)));
                    Element result;
                    for (const auto& [r, x] : ac.entries())
                        for (const auto& [s, y] : bd.entries())
                            result.add(r * nb + s, sign * x * y);
                    if (!result.is_zero())
                        products.push_back({p, q, std::move(result)});
                }
        }
    return GradedAlgebra(a.name() + "⊗" + b.name(), GradedBasis(std::move(elems)), unit, std::move(products));
}

GradedAlgebra tensor_square(const GradedAlgebra& a) { return tensor_product(a, a); }

GradedSubspace reduced_subspace(const GradedAlgebra& a)
{
    std::vector<SparseVector> vs;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.degree(i) > 0)
            vs.push_back(Element::unit(i));
    return GradedSubspace::span(a.basis_ptr(), vs);
}

LinearMap cup_morphism(const GradedAlgebra& a)
{
    const std::size_t n = a.dim();
    std::vector<SparseVector> imgs;
    imgs.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            imgs.push_back(a.product(i, j));
    return LinearMap(n * n, n, std::move(imgs));
}

/* ---------------------------------------------------------------------- */

AlgebraMorphism::AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (images_.size() != source_->dim())
        throw Error(ErrorCode::InvalidParameter, "morphism needs one image per source basis element");
    for (const auto& v : images_)
        if (!v.is_zero() && v.entries().back().first >= target_->dim())
            throw Error(ErrorCode::InvalidParameter, "morphism image outside target");
}

Element AlgebraMorphism::apply(const Element& v) const
{
    Element out;
    for (const auto& [i, c] : v.entries())
        out.add_scaled(images_[i], c);
    return out;
}

LinearMap AlgebraMorphism::linear_map() const { return LinearMap(source_->dim(), target_->dim(), images_); }

GradedSubspace AlgebraMorphism::reduced_image() const
{
    std::vector<SparseVector> vs;
    for (std::size_t i = 0; i < source_->dim(); ++i)
        if (source_->degree(i) > 0)
            vs.push_back(images_[i]);
    return GradedSubspace::span(target_->basis_ptr(), vs);
}

bool AlgebraMorphism::is_zero_on_reduced() const
{
    for (std::size_t i = 0; i < source_->dim(); ++i)
        if (source_->degree(i) > 0 && !images_[i].is_zero())
            return false;
    return true;
}

std::vector<Violation> validate_morphism(const AlgebraMorphism& f)
{
    std::vector<Violation> out;
    const auto& S = f.source();
    const auto& T = f.target();
    for (std::size_t i = 0; i < S.dim(); ++i)
        for (const auto& [k, c] : f.image(i).entries())
            if (T.degree(k) != S.degree(i)) {
                out.push_back({"degree", "image of " + S.basis().name(i) + " is not of degree " +
                                             std::to_string(S.degree(i))});
                break;
            }
    if (f.image(S.unit()) != T.unit_element())
        out.push_back({"unit", "unit is not mapped to unit"});
    for (std::size_t i = 0; i < S.dim(); ++i)
        for (std::size_t j = i; j < S.dim(); ++j) {
            Element lhs = f.apply(S.product(i, j));
            Element rhs = T.multiply(f.image(i), f.image(j));
            if (lhs != rhs)
                out.push_back({"multiplicativity",
                               "(" + S.basis().name(i) + "," + S.basis().name(j) + ")"});
        }
    return out;
}

AlgebraMorphism identity_morphism(AlgebraPtr a)
{
    std::vector<Element> imgs;
    for (std::size_t i = 0; i < a->dim(); ++i)
        imgs.push_back(Element::unit(i));
    return AlgebraMorphism(a, a, std::move(imgs));
}

AlgebraMorphism compose(const AlgebraMorphism& outer, const AlgebraMorphism& inner)
{
    if (!(inner.target() == outer.source()))
        throw Error(ErrorCode::CompositionMismatch, "morphisms do not compose");
    std::vector<Element> imgs;
    for (const auto& v : inner.images())
        imgs.push_back(outer.apply(v));
    return AlgebraMorphism(inner.source_ptr(), outer.target_ptr(), std::move(imgs));
}

AlgebraMorphism tensor_square_morphism(const AlgebraMorphism& phi, AlgebraPtr square_source,
                                       AlgebraPtr square_target)
{
    const std::size_t ns = phi.source().dim();
    const std::size_t nt = phi.target().dim();
    if (square_source->dim() != ns * ns || square_target->dim() != nt * nt)
        throw Error(ErrorCode::CompositionMismatch, "tensor squares do not match the morphism");
    std::vector<Element> imgs;
    imgs.reserve(ns * ns);
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < ns; ++j) {
            Element img;
            for (const auto& [r, x] : phi.image(i).entries())
                for (const auto& [s, y] : phi.image(j).entries())
                    img.add(r * nt + s, x * y);
            imgs.push_back(std::move(img));
        }
    return AlgebraMorphism(std::move(square_source), std::move(square_target), std::move(imgs));
}

AlgebraMorphism tensor_square_morphism(const AlgebraMorphism& phi)
{
    auto ss = std::make_shared<const GradedAlgebra>(tensor_square(phi.source()));
    auto st = phi.source_ptr() == phi.target_ptr() ? ss
                                                   : std::make_shared<const GradedAlgebra>(tensor_square(phi.target()));
    return tensor_square_morphism(phi, ss, st);
}

bool has_degree_one(const GradedAlgebra& a) { return !a.basis().in_degree(1).empty(); }

std::vector<Violation> validate_work_map(const WorkMap& f)
{
    std::vector<Violation> out;
    if (!(f.induced.source() == *f.codomain))
        out.push_back({"contravariance", "induced morphism must start at H*(Y)"});
    if (!(f.induced.target() == *f.domain))
        out.push_back({"contravariance", "induced morphism must land in H*(X)"});
    const bool sc = !has_degree_one(*f.domain) && !has_degree_one(*f.codomain);
    if (f.flags.simply_connected != sc)
        out.push_back({"simply-connected", sc ? "flag unset although no degree-1 classes exist"
                                              : "flag set but a degree-1 class exists"});
    for (auto& v : validate_algebra(*f.domain))
        out.push_back({"domain:" + v.kind, v.detail});
    for (auto& v : validate_algebra(*f.codomain))
        out.push_back({"codomain:" + v.kind, v.detail});
    for (auto& v : validate_morphism(f.induced))
        out.push_back({"induced:" + v.kind, v.detail});
    return out;
}

}  // namespace tcmap::algebra
