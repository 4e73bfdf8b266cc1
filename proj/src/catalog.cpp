#include "tcmap/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "tcmap/error.hpp"

namespace tcmap::catalog {

using algebra::AlgebraMorphism;
using algebra::Element;
using algebra::GradedAlgebra;
using algebra::ProductEntry;
using linalg::BasisElement;
using linalg::GradedBasis;

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view s) : s_(s) {}

    Term parse()
    {
        Term t = term();
        skip();
        if (pos_ != s_.size())
            fail("trailing characters");
        return t;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorCode::ParseError,
                    "catalog spec '" + std::string(s_) + "' at column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    Term term()
    {
        skip();
        if (pos_ == s_.size())
            fail("expected a term");
        const char c = s_[pos_];
        if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_++;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            std::string digits(s_.substr(start, pos_ - start));
            if (digits == "-" || digits == "+")
                fail("expected digits");
            if (digits.size() > 9)
                fail("integer too large");
            Term t;
            t.number = std::stol(digits);
            return t;
        }
        if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
            fail("expected an identifier");
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        Term t;
        t.head = std::string(s_.substr(start, pos_ - start));
        skip();
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            skip();
            if (pos_ < s_.size() && s_[pos_] == ')') {
                ++pos_;
                return t;
            }
            for (;;) {
                t.args.push_back(term());
                skip();
                if (pos_ < s_.size() && s_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                if (pos_ < s_.size() && s_[pos_] == ')') {
                    ++pos_;
                    break;
                }
                fail("expected ',' or ')'");
            }
        }
        return t;
    }
};

[[noreturn]] void bad(const Term& t, const std::string& why)
{
    throw Error(ErrorCode::InvalidParameter, to_string(t) + ": " + why);
}

int int_arg(const Term& t, std::size_t i)
{
    if (i >= t.args.size() || !t.args[i].is_number())
        bad(t, "argument " + std::to_string(i + 1) + " must be an integer");
    return static_cast<int>(*t.args[i].number);
}

void arity(const Term& t, std::size_t n)
{
    if (t.args.size() != n)
        bad(t, "expected " + std::to_string(n) + " argument(s)");
}

bool odd_sign(const std::vector<int>& s, const std::vector<int>& t)
{
    // inversions when concatenating two increasing index lists
    int inv = 0;
    for (int a : s)
        for (int b : t)
            if (a > b)
                ++inv;
    return inv % 2;
}

AlgebraPtr named(AlgebraPtr a, const std::string& name)
{
    return std::make_shared<const GradedAlgebra>(name, a->basis(), a->unit(), a->supplied_products());
}

Term make(std::string head, std::vector<Term> args = {})
{
    Term t;
    t.head = std::move(head);
    t.args = std::move(args);
    return t;
}

Term num(long v)
{
    Term t;
    t.number = v;
    return t;
}

WorkMap finish(std::string name, AlgebraPtr X, AlgebraPtr Y, std::vector<Element> images, const Term& x,
               const Term& y)
{
    WorkMap f{std::move(name), X, Y, AlgebraMorphism(Y, X, std::move(images)), {}, {}};
    f.flags.formal = true;
    f.flags.codomain_coH = is_co_h(y);
    f.flags.simply_connected = !algebra::has_degree_one(*X) && !algebra::has_degree_one(*Y);
    f.hints.domain_tc = known_tc(x);
    return f;
}

WorkMap constant_map(const std::string& name, const Term& x, const Term& y)
{
    AlgebraPtr X = space(x);
    AlgebraPtr Y = space(y);
    std::vector<Element> images(Y->dim());
    images[Y->unit()] = X->unit_element();
    WorkMap f = finish(name, X, Y, std::move(images), x, y);
    f.hints.null_homotopic = true;
    return f;
}

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

std::string to_string(const Term& t)
{
    if (t.is_number())
        return std::to_string(*t.number);
    if (t.head == "point" && t.args.empty())
        return t.head;
    std::string s = t.head + "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i)
            s += ",";
        s += to_string(t.args[i]);
    }
    return s + ")";
}

bool is_space(const Term& t)
{
    return t.head == "sphere" || t.head == "complex_projective" || t.head == "torus" || t.head == "product" ||
           t.head == "point";
}

bool is_map(const Term& t)
{
    return t.head == "degree_self_sphere" || t.head == "sphere_to_sphere" || t.head == "cp_map" ||
           t.head == "torus_projection" || t.head == "torus_identity" || t.head == "constant";
}

AlgebraPtr sphere(int n)
{
    if (n < 1)
        throw Error(ErrorCode::InvalidParameter, "sphere dimension must be >= 1");
    GradedBasis basis({{"1", 0}, {"x", n}});
    return std::make_shared<const GradedAlgebra>("sphere(" + std::to_string(n) + ")", basis, 0,
                                                 std::vector<ProductEntry>{});
}

AlgebraPtr complex_projective(int n)
{
    if (n < 1)
        throw Error(ErrorCode::InvalidParameter, "complex projective dimension must be >= 1");
    std::vector<BasisElement> elems{{"1", 0}, {"x", 2}};
    for (int k = 2; k <= n; ++k)
        elems.push_back({"x^" + std::to_string(k), 2 * k});
    std::vector<ProductEntry> products;
    for (int i = 1; i <= n; ++i)
        for (int j = i; i + j <= n; ++j)
            products.push_back({std::size_t(i), std::size_t(j), Element::unit(i + j)});
    return std::make_shared<const GradedAlgebra>("complex_projective(" + std::to_string(n) + ")",
                                                 GradedBasis(std::move(elems)), 0, std::move(products));
}

AlgebraPtr torus(int k)
{
    if (k < 1 || k > 12)
        throw Error(ErrorCode::InvalidParameter, "torus rank must be in 1..12");
    // subsets ordered by size, then lexicographically
    std::vector<std::vector<int>> subsets{{}};
    for (int size = 1; size <= k; ++size) {
        std::vector<int> cur(size);
        for (int i = 0; i < size; ++i)
            cur[i] = i;
        for (;;) {
            subsets.push_back(cur);
            int i = size - 1;
            while (i >= 0 && cur[i] == k - size + i)
                --i;
            if (i < 0)
                break;
            ++cur[i];
            for (int j = i + 1; j < size; ++j)
                cur[j] = cur[j - 1] + 1;
        }
    }
    std::vector<BasisElement> elems;
    std::map<std::vector<int>, std::size_t> where;
    for (const auto& s : subsets) {
        std::string name;
        for (int i : s)
            name += "a" + std::to_string(i + 1);
        where[s] = elems.size();
        elems.push_back({s.empty() ? "1" : name, static_cast<int>(s.size())});
    }
    std::vector<ProductEntry> products;
    for (std::size_t i = 1; i < subsets.size(); ++i)
        for (std::size_t j = i; j < subsets.size(); ++j) {
            const auto& s = subsets[i];
            const auto& t = subsets[j];
            std::vector<int> u = s;
            u.insert(u.end(), t.begin(), t.end());
            std::sort(u.begin(), u.end());
            if (std::adjacent_find(u.begin(), u.end()) != u.end() || u.size() > std::size_t(k))
                continue;
            products.push_back({i, j, Element::unit(where.at(u), odd_sign(s, t) ? Rational(-1) : Rational(1))});
        }
    return std::make_shared<const GradedAlgebra>("torus(" + std::to_string(k) + ")", GradedBasis(std::move(elems)),
                                                 0, std::move(products));
}

AlgebraPtr point()
{
    return std::make_shared<const GradedAlgebra>("point", GradedBasis({{"1", 0}}), 0, std::vector<ProductEntry>{});
}

AlgebraPtr space(const Term& t)
{
    if (t.head == "sphere") {
        arity(t, 1);
        return sphere(int_arg(t, 0));
    }
    if (t.head == "complex_projective") {
        arity(t, 1);
        return complex_projective(int_arg(t, 0));
    }
    if (t.head == "torus") {
        arity(t, 1);
        return torus(int_arg(t, 0));
    }
    if (t.head == "point") {
        arity(t, 0);
        return point();
    }
    if (t.head == "product") {
        arity(t, 2);
        return named(std::make_shared<const GradedAlgebra>(
                         algebra::tensor_product(*space(t.args[0]), *space(t.args[1]))),
                     to_string(t));
    }
    throw Error(ErrorCode::UnknownEntry, "unknown catalog space '" + to_string(t) + "'");
}

AlgebraPtr space(std::string_view spec) { return space(parse_term(spec)); }

WorkMap map(const Term& t)
{
    const std::string name = to_string(t);
    if (t.head == "degree_self_sphere") {
        arity(t, 2);
        const int n = int_arg(t, 0), d = int_arg(t, 1);
        Term s = make("sphere", {num(n)});
        if (d == 0)
            return constant_map(to_string(make("constant", {s, s})), s, s);
        AlgebraPtr S = sphere(n);
        return finish(name, S, S, {Element::unit(0), Element::unit(1, Rational(d))}, s, s);
    }
    if (t.head == "sphere_to_sphere") {
        arity(t, 3);
        const int n = int_arg(t, 0), m = int_arg(t, 1), d = int_arg(t, 2);
        if (n < 1 || m < 1)
            bad(t, "sphere dimensions must be >= 1");
        if (n == m)
            return map(make("degree_self_sphere", {num(n), num(d)}));
        if (n > m)
            bad(t, "only n <= m is supported (maps with n > m need not be formal)");
        return constant_map(name, make("sphere", {num(n)}), make("sphere", {num(m)}));
    }
    if (t.head == "cp_map") {
        arity(t, 3);
        const int n = int_arg(t, 0), m = int_arg(t, 1), d = int_arg(t, 2);
        if (n < 1 || n > m)
            bad(t, "requires 1 <= n <= m");
        Term x = make("complex_projective", {num(n)});
        Term y = make("complex_projective", {num(m)});
        if (d == 0)
            return constant_map(to_string(make("constant", {x, y})), x, y);
        AlgebraPtr X = complex_projective(n);
        AlgebraPtr Y = complex_projective(m);
        std::vector<Element> images(m + 1);
        images[0] = X->unit_element();
        Rational c = 1;
        for (int k = 1; k <= m; ++k) {
            c *= d;
            if (k <= n)
                images[k] = Element::unit(k, c);
        }
        return finish(name, X, Y, std::move(images), x, y);
    }
    if (t.head == "torus_projection") {
        arity(t, 0);
        Term x = make("torus", {num(2)});
        Term y = make("sphere", {num(1)});
        AlgebraPtr X = torus(2);
        AlgebraPtr Y = sphere(1);
        return finish(name, X, Y, {X->unit_element(), Element::unit(*X->basis().find("a1"))}, x, y);
    }
    if (t.head == "torus_identity") {
        arity(t, 0);
        Term x = make("torus", {num(2)});
        AlgebraPtr X = torus(2);
        return finish(name, X, X, algebra::identity_morphism(X).images(), x, x);
    }
    if (t.head == "constant") {
        arity(t, 2);
        return constant_map(name, t.args[0], t.args[1]);
    }
    throw Error(ErrorCode::UnknownEntry, "unknown catalog map '" + name + "'");
}

WorkMap map(std::string_view spec) { return map(parse_term(spec)); }

std::optional<int> known_tc(const Term& s)
{
    if (s.head == "sphere" && s.args.size() == 1 && s.args[0].is_number())
        return *s.args[0].number % 2 ? 1 : 2;
    if (s.head == "complex_projective" && s.args.size() == 1 && s.args[0].is_number())
        return 2 * static_cast<int>(*s.args[0].number);
    if (s.head == "torus" && s.args.size() == 1 && s.args[0].is_number())
        return static_cast<int>(*s.args[0].number);
    if (s.head == "point")
        return 0;
    if (s.head == "product" && s.args.size() == 2) {
        auto a = known_tc(s.args[0]);
        auto b = known_tc(s.args[1]);
        if (a && b)
            return *a + *b;
    }
    return std::nullopt;
}

bool is_co_h(const Term& s)
{
    if (s.head == "sphere" || s.head == "point")
        return true;
    if ((s.head == "torus" || s.head == "complex_projective") && s.args.size() == 1 && s.args[0].is_number())
        return *s.args[0].number == 1;
    return false;
}

namespace {

constexpr const char* sphere_cite = "sphere maps of nonzero degree: TC(f) = TC(S^n), 1 for n odd, 2 for n even";
constexpr const char* cp_cite = "maps CP^n -> CP^m of nonzero degree: TC(f) = 2n";
constexpr const char* null_cite = "TC(f) = 0 iff f is null-homotopic";
constexpr const char* arm_cite = "planar 2-link arm: projection T -> S^1 has TC(f) = 1 (two planner regions)";
constexpr const char* torus_cite = "transversal 2-link arm: f ~ id_T, TC(f) = TC(S^1 x S^1) = 2";
constexpr const char* space_cite = "TC(S^n) = 1 (n odd), 2 (n even); TC(CP^n) = 2n; TC(T^k) = k";
constexpr const char* formal_cite = "formal maps: TC(f_Q) = TC(f) = nil ker(cup)|Im(f×f)*";

std::vector<Expectation> with_rational(int value, const char* cite, bool simply_connected)
{
    std::vector<Expectation> out{{"TC(f)", value, cite}};
    if (simply_connected)
        out.push_back({"TC(f_Q)", value, formal_cite});
    return out;
}

}  // namespace

std::vector<Expectation> expected(std::string_view spec)
{
    Term t;
    try {
        t = parse_term(spec);
    } catch (const Error&) {
        throw Error(ErrorCode::UnknownEntry, "no catalog entry for '" + std::string(spec) + "'");
    }
    if (is_space(t) && t.head != "product") {
        auto v = known_tc(t);
        if (!v)
            throw Error(ErrorCode::UnknownEntry, "no known TC for '" + to_string(t) + "'");
        space(t);
        return {{"TC(X)", *v, space_cite}};
    }
    if (!is_map(t))
        throw Error(ErrorCode::UnknownEntry, "no expected values for '" + to_string(t) + "'");
    WorkMap f = map(t);
    const bool sc = f.flags.simply_connected;
    if (f.hints.null_homotopic)
        return with_rational(0, null_cite, sc);
    if (t.head == "degree_self_sphere" || t.head == "sphere_to_sphere") {
        const long n = *t.args[0].number;
        return with_rational(n % 2 ? 1 : 2, sphere_cite, sc);
    }
    if (t.head == "cp_map")
        return with_rational(2 * static_cast<int>(*t.args[0].number), cp_cite, sc);
    if (t.head == "torus_projection")
        return {{"TC(f)", 1, arm_cite}};
    if (t.head == "torus_identity")
        return {{"TC(f)", 2, torus_cite}};
    throw Error(ErrorCode::UnknownEntry, "no expected values for '" + to_string(t) + "'");
}

std::vector<std::string> standard_spaces()
{
    return {"point", "sphere(1)", "sphere(2)", "sphere(3)", "complex_projective(2)", "complex_projective(3)",
            "torus(2)", "product(sphere(2),sphere(3))"};
}

std::vector<std::string> standard_maps()
{
    std::vector<std::string> out;
    for (int n = 1; n <= 7; ++n)
        out.push_back("degree_self_sphere(" + std::to_string(n) + ",2)");
    out.push_back("degree_self_sphere(2,-1)");
    out.push_back("degree_self_sphere(4,0)");
    out.push_back("sphere_to_sphere(2,3,1)");
    out.push_back("sphere_to_sphere(3,5,1)");
    for (int n = 1; n <= 5; ++n)
        for (int m = n; m <= 5; ++m)
            out.push_back("cp_map(" + std::to_string(n) + "," + std::to_string(m) + ",1)");
    out.push_back("cp_map(2,3,2)");
    out.push_back("cp_map(1,1,-1)");
    out.push_back("cp_map(2,4,0)");
    out.push_back("torus_projection()");
    out.push_back("torus_identity()");
    out.push_back("constant(complex_projective(2),sphere(3))");
    return out;
}

}  // namespace tcmap::catalog
