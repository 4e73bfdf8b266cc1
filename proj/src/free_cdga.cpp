#include "tcmap/free_cdga.hpp"

#include <algorithm>
#include <sstream>

#include "tcmap/error.hpp"

namespace tcmap::sullivan {

void add_term(Poly& p, const Monomial& m, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = p.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            p.erase(it);
    }
}

void add_poly(Poly& p, const Poly& q, const Rational& c)
{
    for (const auto& [m, a] : q)
        add_term(p, m, a * c);
}

Poly scaled(Poly p, const Rational& c)
{
    if (c == 0)
        return {};
    for (auto& [m, a] : p)
        a *= c;
    return p;
}

namespace {

void enumerate(const std::vector<Generator>& gens, std::size_t i, int remaining, Monomial& cur,
               std::vector<Monomial>& out)
{
    if (i == gens.size()) {
        if (remaining == 0)
            out.push_back(cur);
        return;
    }
    const int deg = gens[i].degree;
    const int max_e = deg % 2 ? 1 : remaining / deg;
    for (int e = std::min(max_e, remaining / deg); e >= 0; --e) {
        cur[i] = e;
        enumerate(gens, i + 1, remaining - e * deg, cur, out);
    }
    cur[i] = 0;
}

}  // namespace

FreeCDGA::FreeCDGA(std::string name, std::vector<Generator> generators, std::vector<Poly> differential,
                   int truncation, bool allow_degree_one)
    : name_(std::move(name)),
      gens_(std::move(generators)),
      diff_(std::move(differential)),
      N_(truncation),
      allow_degree_one_(allow_degree_one)
{
    if (N_ < 1)
        throw Error(ErrorCode::InvalidParameter, "truncation degree must be positive");
    if (diff_.size() > gens_.size())
        throw Error(ErrorCode::InvalidParameter, "more differentials than generators in " + name_);
    diff_.resize(gens_.size());
    for (const auto& g : gens_)
        if (g.degree < 1)
            throw Error(ErrorCode::InvalidParameter, "generator " + g.name + " must have positive degree");
    for (const auto& p : diff_)
        for (const auto& [m, c] : p)
            if (m.size() != gens_.size())
                throw Error(ErrorCode::InvalidParameter, "monomial length mismatch in " + name_);

    bases_.resize(N_ + 2);
    index_.resize(N_ + 2);
    Monomial cur(gens_.size(), 0);
    for (int k = 0; k <= N_ + 1; ++k) {
        enumerate(gens_, 0, k, cur, bases_[k]);
        for (std::size_t i = 0; i < bases_[k].size(); ++i)
            index_[k].emplace(bases_[k][i], i);
    }
}

std::optional<std::size_t> FreeCDGA::find(const std::string& name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name)
            return i;
    return std::nullopt;
}

int FreeCDGA::degree(const Monomial& m) const
{
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        d += m[i] * gens_[i].degree;
    return d;
}

Monomial FreeCDGA::generator_monomial(std::size_t i, int exponent) const
{
    Monomial m(gens_.size(), 0);
    m[i] = exponent;
    return m;
}

Poly FreeCDGA::generator_poly(std::size_t i) const { return {{generator_monomial(i), Rational(1)}}; }

Poly FreeCDGA::one() const { return {{Monomial(gens_.size(), 0), Rational(1)}}; }

const std::vector<Monomial>& FreeCDGA::basis(int k) const
{
    if (k < 0 || k > N_ + 1)
        throw Error(ErrorCode::TruncationExceeded,
                    "degree " + std::to_string(k) + " beyond truncation " + std::to_string(N_) + " of " + name_);
    return bases_[k];
}

std::size_t FreeCDGA::index(int k, const Monomial& m) const
{
    basis(k);
    auto it = index_[k].find(m);
    if (it == index_[k].end())
        throw Error(ErrorCode::InvalidParameter, "monomial " + format(m) + " is not of degree " + std::to_string(k));
    return it->second;
}

SparseVector FreeCDGA::to_vector(const Poly& p, int k) const
{
    SparseVector v;
    for (const auto& [m, c] : p)
        v.add(index(k, m), c);
    return v;
}

Poly FreeCDGA::from_vector(const SparseVector& v, int k) const
{
    const auto& B = basis(k);
    Poly p;
    for (const auto& [i, c] : v.entries())
        p.emplace(B[i], c);
    return p;
}

std::optional<std::pair<Monomial, int>> FreeCDGA::multiply(const Monomial& a, const Monomial& b) const
{
    const std::size_t G = gens_.size();
    Monomial out(G, 0);
    int parity = 0;
    int odd_above = 0;  // odd factors of a with larger index
    for (std::size_t j = G; j-- > 0;) {
        if (gens_[j].degree % 2) {
            if (a[j] && b[j])
                return std::nullopt;
            if (b[j])
                parity += odd_above;
            if (a[j])
                ++odd_above;
        }
        out[j] = a[j] + b[j];
    }
    return std::make_pair(std::move(out), parity % 2 ? -1 : 1);
}

Poly FreeCDGA::multiply(const Poly& a, const Poly& b) const
{
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b)
            if (auto r = multiply(ma, mb))
                add_term(out, r->first, r->second * ca * cb);
    return out;
}

Poly FreeCDGA::d(const Poly& p) const
{
    Poly out;
    const std::size_t G = gens_.size();
    for (const auto& [m, c] : p) {
        int prefix_degree = 0;
        for (std::size_t g = 0; g < G; ++g) {
            const int e = m[g];
            if (e == 0)
                continue;
            if (!diff_[g].empty()) {
                Monomial left(G, 0), right(G, 0);
                for (std::size_t i = 0; i < g; ++i)
                    left[i] = m[i];
                left[g] = e - 1;
                for (std::size_t i = g + 1; i < G; ++i)
                    right[i] = m[i];
                Rational coeff = c * e * (prefix_degree % 2 ? -1 : 1);
                Poly term = multiply(multiply(Poly{{left, Rational(1)}}, diff_[g]), Poly{{right, Rational(1)}});
                add_poly(out, term, coeff);
            }
            prefix_degree += e * gens_[g].degree;
        }
    }
    return out;
}

const LinearMap& FreeCDGA::d_matrix(int k) const
{
    if (k > N_)
        throw Error(ErrorCode::TruncationExceeded, "d in degree " + std::to_string(k) + " beyond truncation");
    auto it = d_cache_.find(k);
    if (it != d_cache_.end())
        return it->second;
    std::vector<SparseVector> cols;
    for (const auto& m : basis(k))
        cols.push_back(to_vector(d(Poly{{m, Rational(1)}}), k + 1));
    return d_cache_.emplace(k, LinearMap(dim(k), dim(k + 1), std::move(cols))).first->second;
}

FreeCDGA FreeCDGA::with_truncation(int N) const { return FreeCDGA(name_, gens_, diff_, N, allow_degree_one_); }

std::string FreeCDGA::format(const Monomial& m) const
{
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += gens_[i].name;
        if (m[i] > 1)
            s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

std::string FreeCDGA::format(const Poly& p) const
{
    if (p.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        const auto& [m, c] = *it;
        if (c < 0)
            os << (first ? "-" : " - ");
        else if (!first)
            os << " + ";
        Rational a = abs(c);
        const std::string ms = format(m);
        if (ms == "1")
            os << a.str();
        else {
            if (a != 1)
                os << a.str() << "*";
            os << ms;
        }
        first = false;
    }
    return os.str();
}

/* ---------------------------------------------------------------------- */

CDGAReport validate_cdga(const FreeCDGA& M)
{
    CDGAReport r;
    for (std::size_t i = 0; i < M.num_generators(); ++i) {
        const auto& g = M.generator(i);
        if (g.degree == 1) {
            if (M.allows_degree_one())
                r.warnings.push_back("generator " + g.name + " has degree 1 (not simply connected)");
            else
                r.violations.push_back({"degree-one", "generator " + g.name + " has degree 1 without override"});
        }
        for (const auto& [m, c] : M.differential(i)) {
            if (M.degree(m) != g.degree + 1) {
                r.violations.push_back({"degree", "d" + g.name + " has a term of degree " +
                                                      std::to_string(M.degree(m)) + ", expected " +
                                                      std::to_string(g.degree + 1)});
                break;
            }
        }
        bool later = false;
        for (const auto& [m, c] : M.differential(i))
            for (std::size_t j = i; j < m.size(); ++j)
                if (m[j])
                    later = true;
        if (later)
            r.violations.push_back({"well-order", "d" + g.name + " uses a generator that is not earlier"});
    }
    if (!r.ok())
        return r;
    for (std::size_t i = 0; i < M.num_generators(); ++i) {
        const auto& g = M.generator(i);
        if (g.degree > M.truncation())
            continue;
        if (!M.d(M.differential(i)).empty())
            r.violations.push_back({"d-squared", "d(d" + g.name + ") != 0 in degree " + std::to_string(g.degree + 2)});
    }
    return r;
}

std::vector<SparseVector> cocycles(const FreeCDGA& M, int k) { return linalg::kernel(M.d_matrix(k)).basis(); }

linalg::Subspace coboundaries(const FreeCDGA& M, int k)
{
    if (k == 0)
        return linalg::Subspace(M.dim(0));
    return linalg::image(M.d_matrix(k - 1));
}

Cohomology cdga_cohomology(const FreeCDGA& M, int up_to)
{
    if (up_to > M.truncation())
        throw Error(ErrorCode::TruncationExceeded, "cohomology requested up to " + std::to_string(up_to) +
                                                       " beyond truncation " + std::to_string(M.truncation()));
    Cohomology h;
    for (int k = 0; k <= up_to; ++k) {
        linalg::Subspace S = coboundaries(M, k);
        std::vector<SparseVector> reps;
        for (auto& z : cocycles(M, k)) {
            if (S.contains(z))
                continue;
            S = linalg::sum(S, linalg::Subspace::span(M.dim(k), std::vector<SparseVector>{z}));
            reps.push_back(std::move(z));
        }
        h.dims.push_back(reps.size());
        h.representatives.push_back(std::move(reps));
    }
    return h;
}

/* ---------------------------------------------------------------------- */

CDGAMorphism::CDGAMorphism(CDGAPtr source, CDGAPtr target, std::vector<Poly> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (images_.size() != source_->num_generators())
        throw Error(ErrorCode::InvalidParameter, "morphism needs one image per source generator");
    for (const auto& p : images_)
        for (const auto& [m, c] : p)
            if (m.size() != target_->num_generators())
                throw Error(ErrorCode::InvalidParameter, "image monomial length mismatch");
}

int CDGAMorphism::truncation() const { return std::min(source_->truncation(), target_->truncation()); }

Poly CDGAMorphism::apply(const Monomial& m) const
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
        out = target_->one();
    } else {
        Monomial rest = m;
        --rest[last];
        out = target_->multiply(apply(rest), images_[last]);
    }
    cache_.emplace(m, out);
    return out;
}

Poly CDGAMorphism::apply(const Poly& p) const
{
    Poly out;
    for (const auto& [m, c] : p)
        add_poly(out, apply(m), c);
    return out;
}

LinearMap CDGAMorphism::matrix(int k) const
{
    std::vector<SparseVector> cols;
    for (const auto& m : source_->basis(k))
        cols.push_back(target_->to_vector(apply(m), k));
    return LinearMap(source_->dim(k), target_->dim(k), std::move(cols));
}

bool CDGAMorphism::surjective() const
{
    if (!surjective_) {
        bool ok = true;
        for (int k = 1; ok && k <= truncation(); ++k)
            ok = linalg::image(matrix(k)).dim() == target_->dim(k);
        surjective_ = ok;
    }
    return *surjective_;
}

std::vector<Violation> validate_cdga_morphism(const CDGAMorphism& f)
{
    std::vector<Violation> out;
    const auto& S = f.source();
    const auto& T = f.target();
    for (std::size_t i = 0; i < S.num_generators(); ++i) {
        const auto& g = S.generator(i);
        bool degree_ok = true;
        for (const auto& [m, c] : f.image(i))
            if (T.degree(m) != g.degree) {
                out.push_back({"degree", "image of " + g.name + " is not of degree " + std::to_string(g.degree)});
                degree_ok = false;
                break;
            }
        if (!degree_ok || g.degree > f.truncation())
            continue;
        if (f.apply(S.differential(i)) != T.d(f.image(i)))
            out.push_back({"differential", "f(d" + g.name + ") != d f(" + g.name + ")"});
    }
    return out;
}

}  // namespace tcmap::sullivan
