#include "tcmap/linalg.hpp"

#include <algorithm>
#include <cassert>

#include "tcmap/error.hpp"

namespace tcmap::linalg {

/* ---------------------------------------------------------------------- */
/* SparseVector                                                            */
/* ---------------------------------------------------------------------- */

SparseVector SparseVector::unit(std::size_t index, const Rational& coeff)
{
    SparseVector v;
    if (coeff != 0)
        v.entries_.emplace_back(index, coeff);
    return v;
}

SparseVector SparseVector::from_dense(std::span<const Rational> values)
{
    SparseVector v;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] != 0)
            v.entries_.emplace_back(i, values[i]);
    return v;
}

std::vector<Rational> SparseVector::to_dense(std::size_t size) const
{
    std::vector<Rational> out(size);
    for (const auto& [i, c] : entries_)
        out.at(i) = c;
    return out;
}

Rational SparseVector::coeff(std::size_t index) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index)
        return it->second;
    return Rational(0);
}

void SparseVector::add_scaled(const SparseVector& other, const Rational& c)
{
    if (c == 0 || other.entries_.empty())
        return;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            merged.push_back(std::move(*a));
            ++a;
        }
        else if (a == entries_.end() || b->first < a->first) {
            merged.emplace_back(b->first, c * b->second);
            ++b;
        }
        else {
            Rational s = a->second + c * b->second;
            if (s != 0)
                merged.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    entries_ = std::move(merged);
}

void SparseVector::push_back(std::size_t index, Rational coeff)
{
    assert(entries_.empty() || entries_.back().first < index);
    if (coeff != 0)
        entries_.emplace_back(index, std::move(coeff));
}

void SparseVector::add(std::size_t index, const Rational& c)
{
    if (c == 0)
        return;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) {
        it->second += c;
        if (it->second == 0)
            entries_.erase(it);
    }
    else {
        entries_.insert(it, Entry(index, c));
    }
}

SparseVector& SparseVector::operator*=(const Rational& c)
{
    if (c == 0) {
        entries_.clear();
        return *this;
    }
    for (auto& e : entries_)
        e.second *= c;
    return *this;
}

SparseVector& SparseVector::operator+=(const SparseVector& other)
{
    add_scaled(other, Rational(1));
    return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& other)
{
    add_scaled(other, Rational(-1));
    return *this;
}

/* ---------------------------------------------------------------------- */
/* Matrix and rref                                                         */
/* ---------------------------------------------------------------------- */

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw Error(ErrorCode::InvalidParameter, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

SparseVector Matrix::row(std::size_t r) const
{
    return SparseVector::from_dense(std::span<const Rational>(data_.data() + r * cols_, cols_));
}

SparseVector Matrix::column(std::size_t c) const
{
    SparseVector v;
    for (std::size_t r = 0; r < rows_; ++r)
        v.push_back(r, (*this)(r, c));
    return v;
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

namespace {

/* Echelon rows with distinct leading indices, each with leading coeff 1. */
class RowReducer {
public:
    explicit RowReducer(std::size_t n) : n_(n) {}

    SparseVector reduce(SparseVector v) const
    {
        // Eliminate leading terms until the lead is not a pivot, then keep
        // walking the remaining entries.
        SparseVector out;
        while (!v.is_zero()) {
            std::size_t lead = v.leading();
            auto it = rows_.find(lead);
            if (it == rows_.end()) {
                out.push_back(lead, v.leading_coeff());
                SparseVector rest;
                for (std::size_t k = 1; k < v.entries().size(); ++k)
                    rest.push_back(v.entries()[k].first, v.entries()[k].second);
                v = std::move(rest);
            }
            else {
                Rational c = -v.leading_coeff();
                v.add_scaled(it->second, c);
            }
        }
        return out;
    }

    bool insert(const SparseVector& v)
    {
        SparseVector r = reduce(v);
        if (r.is_zero())
            return false;
        Rational inv = 1 / r.leading_coeff();
        r *= inv;
        rows_.emplace(r.leading(), std::move(r));
        return true;
    }

    /* Back-substitution into reduced echelon form. */
    std::vector<SparseVector> canonical() const
    {
        std::vector<SparseVector> out;
        out.reserve(rows_.size());
        for (const auto& [p, r] : rows_)
            out.push_back(r);
        for (std::size_t i = out.size(); i-- > 0;) {
            for (std::size_t j = 0; j < i; ++j) {
                Rational c = out[j].coeff(out[i].leading());
                if (c != 0)
                    out[j].add_scaled(out[i], -c);
            }
        }
        return out;
    }

    std::size_t n() const { return n_; }

private:
    std::size_t n_;
    std::map<std::size_t, SparseVector> rows_;
};

}  // namespace

Echelon rref(const Matrix& m)
{
    RowReducer red(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        red.insert(m.row(r));
    auto rows = red.canonical();
    Echelon e{Matrix(rows.size(), m.cols()), {}};
    for (std::size_t r = 0; r < rows.size(); ++r) {
        e.pivots.push_back(rows[r].leading());
        for (const auto& [c, v] : rows[r].entries())
            e.matrix(r, c) = v;
    }
    return e;
}

/* ---------------------------------------------------------------------- */
/* Subspace                                                                */
/* ---------------------------------------------------------------------- */

Subspace Subspace::span(std::size_t ambient_dim, std::span<const SparseVector> vectors)
{
    RowReducer red(ambient_dim);
    for (const auto& v : vectors) {
        if (!v.is_zero() && v.entries().back().first >= ambient_dim)
            throw Error(ErrorCode::AmbientMismatch, "vector index outside ambient space");
        red.insert(v);
    }
    Subspace s(ambient_dim);
    s.rows_ = red.canonical();
    return s;
}

Subspace Subspace::whole(std::size_t ambient_dim)
{
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i)
        s.rows_.push_back(SparseVector::unit(i));
    return s;
}

std::vector<std::size_t> Subspace::pivots() const
{
    std::vector<std::size_t> p;
    for (const auto& r : rows_)
        p.push_back(r.leading());
    return p;
}

SparseVector Subspace::reduce(const SparseVector& v) const
{
    SparseVector out = v;
    // Rows are fully reduced, so one pass in pivot order suffices.
    for (const auto& r : rows_) {
        Rational c = out.coeff(r.leading());
        if (c != 0)
            out.add_scaled(r, -c);
    }
    return out;
}

bool Subspace::contains(const Subspace& other) const
{
    if (other.ambient_dim_ != ambient_dim_)
        throw Error(ErrorCode::AmbientMismatch, "subspaces live in different spaces");
    return std::all_of(other.rows_.begin(), other.rows_.end(),
                       [&](const SparseVector& r) { return contains(r); });
}

Matrix Subspace::to_matrix() const
{
    Matrix m(rows_.size(), ambient_dim_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r].entries())
            m(r, c) = v;
    return m;
}

Subspace sum(const Subspace& s, const Subspace& t)
{
    if (s.ambient_dim() != t.ambient_dim())
        throw Error(ErrorCode::AmbientMismatch, "sum of subspaces of different spaces");
    std::vector<SparseVector> all = s.basis();
    all.insert(all.end(), t.basis().begin(), t.basis().end());
    return Subspace::span(s.ambient_dim(), all);
}

Subspace intersect(const Subspace& s, const Subspace& t)
{
    if (s.ambient_dim() != t.ambient_dim())
        throw Error(ErrorCode::AmbientMismatch, "intersection of subspaces of different spaces");
    if (s.is_zero() || t.is_zero())
        return Subspace(s.ambient_dim());
    // Kernel of (a, b) -> sum a_i s_i - sum b_j t_j, projected onto the s part.
    std::vector<SparseVector> cols = s.basis();
    for (const auto& r : t.basis())
        cols.push_back(Rational(-1) * r);
    const std::size_t ncols = cols.size();
    LinearMap m(ncols, s.ambient_dim(), std::move(cols));
    ColumnElimination elim(m);
    std::vector<SparseVector> out;
    for (const auto& k : elim.kernel_vectors()) {
        SparseVector x;
        for (const auto& [j, c] : k.entries()) {
            if (j >= s.dim())
                break;
            x.add_scaled(s.basis()[j], c);
        }
        out.push_back(std::move(x));
    }
    return Subspace::span(s.ambient_dim(), out);
}

/* ---------------------------------------------------------------------- */
/* LinearMap and elimination                                               */
/* ---------------------------------------------------------------------- */

LinearMap::LinearMap(std::size_t domain_dim, std::size_t codomain_dim, std::vector<SparseVector> images)
    : domain_dim_(domain_dim), codomain_dim_(codomain_dim), images_(std::move(images))
{
    if (images_.size() != domain_dim_)
        throw Error(ErrorCode::InvalidParameter, "linear map needs one image per domain basis vector");
}

LinearMap LinearMap::from_matrix(const Matrix& m)
{
    std::vector<SparseVector> cols;
    cols.reserve(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        cols.push_back(m.column(c));
    return LinearMap(m.cols(), m.rows(), std::move(cols));
}

SparseVector LinearMap::apply(const SparseVector& v) const
{
    SparseVector out;
    for (const auto& [j, c] : v.entries())
        out.add_scaled(images_.at(j), c);
    return out;
}

LinearMap LinearMap::after(const LinearMap& inner) const
{
    if (inner.codomain_dim() != domain_dim_)
        throw Error(ErrorCode::CompositionMismatch, "linear maps do not compose");
    std::vector<SparseVector> imgs;
    imgs.reserve(inner.domain_dim());
    for (const auto& v : inner.images())
        imgs.push_back(apply(v));
    return LinearMap(inner.domain_dim(), codomain_dim_, std::move(imgs));
}

ColumnElimination::ColumnElimination(const LinearMap& map)
    : domain_dim_(map.domain_dim()), codomain_dim_(map.codomain_dim())
{
    for (std::size_t j = 0; j < map.domain_dim(); ++j) {
        SparseVector res = map.image(j);
        SparseVector combo = SparseVector::unit(j);
        while (!res.is_zero()) {
            auto it = rows_.find(res.leading());
            if (it == rows_.end())
                break;
            Rational c = -res.leading_coeff();
            res.add_scaled(it->second.residual, c);
            combo.add_scaled(it->second.combo, c);
        }
        if (res.is_zero()) {
            kernel_.push_back(std::move(combo));
        }
        else {
            Rational inv = 1 / res.leading_coeff();
            res *= inv;
            combo *= inv;
            std::size_t lead = res.leading();
            rows_.emplace(lead, Row{std::move(res), std::move(combo)});
        }
    }
}

std::optional<SparseVector> ColumnElimination::solve(const SparseVector& target) const
{
    SparseVector res = target;
    SparseVector x;
    while (!res.is_zero()) {
        auto it = rows_.find(res.leading());
        if (it == rows_.end())
            return std::nullopt;
        Rational c = res.leading_coeff();
        res.add_scaled(it->second.residual, -c);
        x.add_scaled(it->second.combo, c);
    }
    return x;
}

Subspace kernel(const LinearMap& map)
{
    ColumnElimination elim(map);
    return Subspace::span(map.domain_dim(), elim.kernel_vectors());
}

Subspace image(const LinearMap& map) { return Subspace::span(map.codomain_dim(), map.images()); }

Subspace kernel_basis(const Matrix& m) { return kernel(LinearMap::from_matrix(m)); }

Subspace image_basis(const Matrix& m)
{
    std::vector<SparseVector> rows;
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows.push_back(m.row(r));
    return Subspace::span(m.cols(), rows);
}

/* ---------------------------------------------------------------------- */
/* GradedBasis / GradedSubspace                                            */
/* ---------------------------------------------------------------------- */

GradedBasis::GradedBasis(std::vector<BasisElement> elements) : elements_(std::move(elements))
{
    local_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const auto& e = elements_[i];
        if (e.degree < 0)
            throw Error(ErrorCode::InvalidParameter, "negative degree for basis element " + e.name);
        if (!by_name_.emplace(e.name, i).second)
            throw Error(ErrorCode::InvalidParameter, "duplicate basis name " + e.name);
        auto& bucket = by_degree_[e.degree];
        local_[i] = bucket.size();
        bucket.push_back(i);
        top_degree_ = std::max(top_degree_, e.degree);
    }
}

std::optional<std::size_t> GradedBasis::find(const std::string& name) const
{
    auto it = by_name_.find(name);
    if (it == by_name_.end())
        return std::nullopt;
    return it->second;
}

const std::vector<std::size_t>& GradedBasis::in_degree(int k) const
{
    static const std::vector<std::size_t> empty;
    auto it = by_degree_.find(k);
    return it == by_degree_.end() ? empty : it->second;
}

std::vector<int> GradedBasis::degrees() const
{
    std::vector<int> out;
    for (const auto& [k, v] : by_degree_)
        out.push_back(k);
    return out;
}

std::optional<int> homogeneous_degree(const GradedBasis& basis, const SparseVector& v)
{
    if (v.is_zero())
        return std::nullopt;
    int d = basis.degree(v.leading());
    for (const auto& [i, c] : v.entries())
        if (basis.degree(i) != d)
            throw Error(ErrorCode::InvalidParameter, "vector is not homogeneous");
    return d;
}

std::map<int, SparseVector> split_by_degree(const GradedBasis& basis, const SparseVector& v)
{
    std::map<int, SparseVector> out;
    for (const auto& [i, c] : v.entries())
        out[basis.degree(i)].add(basis.local_index(i), c);
    return out;
}

SparseVector embed_local(const GradedBasis& basis, int degree, const SparseVector& local)
{
    const auto& idx = basis.in_degree(degree);
    SparseVector out;
    // in_degree is increasing, so local order matches global order
    for (const auto& [j, c] : local.entries())
        out.push_back(idx.at(j), c);
    return out;
}

GradedSubspace::GradedSubspace(std::shared_ptr<const GradedBasis> ambient) : ambient_(std::move(ambient)) {}

GradedSubspace GradedSubspace::span(std::shared_ptr<const GradedBasis> ambient,
                                    std::span<const SparseVector> vectors)
{
    GradedSubspace s(ambient);
    std::map<int, std::vector<SparseVector>> parts;
    for (const auto& v : vectors) {
        auto d = homogeneous_degree(*ambient, v);
        if (!d)
            continue;
        SparseVector local;
        for (const auto& [i, c] : v.entries())
            local.push_back(ambient->local_index(i), c);
        parts[*d].push_back(std::move(local));
    }
    for (auto& [d, vs] : parts)
        s.set_component(d, Subspace::span(ambient->in_degree(d).size(), vs));
    return s;
}

std::size_t GradedSubspace::dim() const
{
    std::size_t n = 0;
    for (const auto& [d, s] : components_)
        n += s.dim();
    return n;
}

const Subspace* GradedSubspace::component(int degree) const
{
    auto it = components_.find(degree);
    return it == components_.end() ? nullptr : &it->second;
}

void GradedSubspace::set_component(int degree, Subspace s)
{
    if (s.ambient_dim() != ambient_->in_degree(degree).size())
        throw Error(ErrorCode::AmbientMismatch, "component has wrong ambient dimension");
    if (s.is_zero())
        components_.erase(degree);
    else
        components_[degree] = std::move(s);
}

std::vector<SparseVector> GradedSubspace::basis() const
{
    std::vector<SparseVector> out;
    for (const auto& [d, s] : components_)
        for (const auto& r : s.basis())
            out.push_back(embed_local(*ambient_, d, r));
    return out;
}

bool GradedSubspace::contains(const SparseVector& v) const
{
    for (const auto& [d, part] : split_by_degree(*ambient_, v)) {
        const Subspace* s = component(d);
        if (!s || !s->contains(part))
            return false;
    }
    return true;
}

bool operator==(const GradedSubspace& a, const GradedSubspace& b)
{
    if (!(*a.ambient_ == *b.ambient_))
        return false;
    return a.components_ == b.components_;
}

namespace {

void check_same_ambient(const GradedSubspace& s, const GradedSubspace& t)
{
    if (!(s.ambient() == t.ambient()))
        throw Error(ErrorCode::AmbientMismatch, "graded subspaces have different ambient bases");
}

}  // namespace

GradedSubspace sum(const GradedSubspace& s, const GradedSubspace& t)
{
    check_same_ambient(s, t);
    GradedSubspace out = s;
    for (const auto& [d, c] : t.components()) {
        const Subspace* mine = s.component(d);
        out.set_component(d, mine ? sum(*mine, c) : c);
    }
    return out;
}

GradedSubspace intersect(const GradedSubspace& s, const GradedSubspace& t)
{
    check_same_ambient(s, t);
    GradedSubspace out(s.ambient_ptr());
    for (const auto& [d, c] : s.components())
        if (const Subspace* other = t.component(d))
            out.set_component(d, intersect(c, *other));
    return out;
}

}  // namespace tcmap::linalg
