#include "tcmap/io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "tcmap/catalog.hpp"
#include "tcmap/error.hpp"
#include "tcmap/sullivan.hpp"

namespace tcmap::io {

using algebra::Element;
using algebra::ProductEntry;
using linalg::BasisElement;
using linalg::GradedBasis;
using linalg::SparseVector;
using sullivan::add_poly;
using sullivan::scaled;
using sullivan::Generator;
using sullivan::Monomial;
using sullivan::Poly;

namespace {

constexpr std::string_view catalog_prefix = "catalog:";

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw Error(ErrorCode::ParseError, where + ": " + what);
}

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

const json& field(const json& j, const std::string& key, const std::string& where)
{
    if (!j.is_object())
        fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        fail(where, "missing field '" + key + "'");
    return *it;
}

const json* optional_field(const json& j, const std::string& key)
{
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::string as_string(const json& j, const std::string& where)
{
    if (!j.is_string())
        fail(where, "expected a string");
    return j.get<std::string>();
}

int as_int(const json& j, const std::string& where)
{
    if (!j.is_number_integer())
        fail(where, "expected an integer");
    const auto v = j.get<long long>();
    if (v < -1000000 || v > 1000000)
        fail(where, "integer out of range");
    return static_cast<int>(v);
}

bool as_bool(const json& j, const std::string& where)
{
    if (!j.is_boolean())
        fail(where, "expected true or false");
    return j.get<bool>();
}

const json& as_array(const json& j, const std::string& where)
{
    if (!j.is_array())
        fail(where, "expected an array");
    return j;
}

Rational as_rational(const json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (!j.is_string())
        fail(where, "coefficient must be a rational literal string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        fail(where, "bad rational literal '" + j.get<std::string>() + "'");
    }
}

std::size_t basis_index(const GradedBasis& b, const std::string& name, const std::string& where)
{
    auto i = b.find(name);
    if (!i)
        fail(where, "unknown basis name '" + name + "'");
    return *i;
}

/* [{basis, coeff}] -> element, homogeneous of the given degree. */
Element parse_element(const json& j, const GradedBasis& b, std::optional<int> degree, const std::string& where)
{
    Element v;
    const json& arr = as_array(j, where);
    for (std::size_t t = 0; t < arr.size(); ++t) {
        const std::string w = at(where, t);
        const std::size_t i = basis_index(b, as_string(field(arr[t], "basis", w), at(w, "basis")), at(w, "basis"));
        if (degree && b.degree(i) != *degree)
            fail(at(w, "basis"), "degree mismatch: " + b.name(i) + " has degree " + std::to_string(b.degree(i)) +
                                     ", expected " + std::to_string(*degree));
        v.add(i, as_rational(field(arr[t], "coeff", w), at(w, "coeff")));
    }
    return v;
}

json emit_element(const Element& v, const GradedBasis& b)
{
    json out = json::array();
    for (const auto& [i, c] : v.entries())
        out.push_back({{"basis", b.name(i)}, {"coeff", to_string(c)}});
    return out;
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::InvalidParameter, "cannot read file '" + p.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/* Fills images of basis elements that were not given, degree by degree, from
 * the products of lower-degree elements. */
std::vector<Element> complete_images(const GradedAlgebra& src, const GradedAlgebra& tgt,
                                     std::vector<std::optional<Element>> given, const std::string& where)
{
    const GradedBasis& b = src.basis();
    if (!given[src.unit()])
        given[src.unit()] = tgt.unit_element();
    for (int k = 1; k <= src.top_degree(); ++k) {
        const auto& idx = b.in_degree(k);
        std::vector<std::size_t> missing;
        for (std::size_t i : idx)
            if (!given[i])
                missing.push_back(i);
        if (missing.empty())
            continue;
        // columns: known elements of degree k, then products of lower degrees
        std::vector<SparseVector> cols;
        std::vector<Element> values;
        for (std::size_t i : idx)
            if (given[i]) {
                cols.push_back(SparseVector::unit(b.local_index(i)));
                values.push_back(*given[i]);
            }
        for (int p = 1; 2 * p <= k; ++p)
            for (std::size_t i : b.in_degree(p))
                for (std::size_t j : b.in_degree(k - p)) {
                    Element prod = src.product(i, j);
                    if (prod.is_zero())
                        continue;
                    SparseVector local;
                    for (const auto& [g, c] : prod.entries())
                        local.add(b.local_index(g), c);
                    cols.push_back(std::move(local));
                    values.push_back(tgt.multiply(*given[i], *given[j]));
                }
        const std::size_t ncols = cols.size();
        linalg::ColumnElimination elim(linalg::LinearMap(ncols, idx.size(), std::move(cols)));
        for (std::size_t i : missing) {
            auto sol = elim.solve(SparseVector::unit(b.local_index(i)));
            if (!sol)
                fail(at(where, b.name(i)), "image not given and not determined by products");
            Element v;
            for (const auto& [c, a] : sol->entries())
                v.add_scaled(values[c], a);
            given[i] = std::move(v);
        }
    }
    std::vector<Element> out;
    out.reserve(given.size());
    for (auto& g : given)
        out.push_back(std::move(*g));
    return out;
}

class PolyParser {
public:
    PolyParser(std::string_view s, const FreeCDGA& M, const std::string& where) : s_(s), M_(M), where_(where) {}

    Poly parse()
    {
        Poly p = expr();
        skip();
        if (pos_ != s_.size())
            error("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    std::string_view s_;
    const FreeCDGA& M_;
    const std::string& where_;
    std::size_t pos_ = 0;

    [[noreturn]] void error(const std::string& what) const
    {
        fail(where_, "column " + std::to_string(pos_ + 1) + " of '" + std::string(s_) + "': " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr()
    {
        Poly out;
        bool negative = false;
        if (accept('-'))
            negative = true;
        else
            accept('+');
        add_poly(out, term(), Rational(negative ? -1 : 1));
        for (;;) {
            if (accept('+'))
                add_poly(out, term());
            else if (accept('-'))
                add_poly(out, term(), Rational(-1));
            else
                return out;
        }
    }

    Poly term()
    {
        Poly p = factor();
        while (accept('*'))
            p = M_.multiply(p, factor());
        return p;
    }

    Poly factor()
    {
        Poly base = primary();
        if (!accept('^'))
            return base;
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            error("expected an exponent");
        const std::string digits(s_.substr(start, pos_ - start));
        if (digits.size() > 4)
            error("exponent too large");
        Poly out = M_.one();
        for (int e = std::stoi(digits); e > 0; --e)
            out = M_.multiply(out, base);
        return out;
    }

    Poly primary()
    {
        skip();
        if (pos_ == s_.size())
            error("expected a term");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!accept(')'))
                error("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
            }
            Rational q;
            try {
                q = parse_rational(s_.substr(start, pos_ - start));
            } catch (const Error&) {
                pos_ = start;
                error("bad rational literal");
            }
            return scaled(M_.one(), q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
                ++pos_;
            const std::string name(s_.substr(start, pos_ - start));
            auto g = M_.find(name);
            if (!g) {
                pos_ = start;
                error("unknown generator '" + name + "'");
            }
            return M_.generator_poly(*g);
        }
        error("unexpected character '" + std::string(1, c) + "'");
    }
};

std::string where_of(const Source& s) { return s.uri; }

AlgebraPtr algebra_ref(const json& j, const std::string& where, const std::filesystem::path& dir,
                       std::vector<Source>* inputs)
{
    if (j.is_string())
        return load_algebra(j.get<std::string>(), inputs, dir);
    return parse_algebra(j, where);
}

std::shared_ptr<const FreeCDGA> cdga_ref(const json& j, const std::string& where, const std::filesystem::path& dir,
                                         std::vector<Source>* inputs)
{
    if (j.is_string()) {
        Source s = load_source(j.get<std::string>(), dir);
        if (s.catalog)
            fail(where, "CDGA references must be files");
        if (inputs)
            inputs->push_back(s);
        return std::make_shared<const FreeCDGA>(parse_cdga(parse_json(s.text, s.uri), s.uri));
    }
    return std::make_shared<const FreeCDGA>(parse_cdga(j, where));
}

void check_violations(const std::vector<algebra::Violation>& vs, const std::string& where)
{
    if (!vs.empty())
        throw Error(ErrorCode::InvalidParameter, where + ": " + vs.front().kind + ": " + vs.front().detail);
}

}  // namespace

std::string sha256_hex(std::string_view data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorCode::Unsupported, "sha256 unavailable");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

Source load_source(const std::string& ref, const std::filesystem::path& base)
{
    Source s;
    if (ref.starts_with(catalog_prefix)) {
        s.catalog = true;
        s.spec = catalog::to_string(catalog::parse_term(std::string_view(ref).substr(catalog_prefix.size())));
        s.uri = std::string(catalog_prefix) + s.spec;
        s.digest = sha256_hex(s.uri);
        return s;
    }
    std::filesystem::path p(ref);
    if (p.is_relative() && !base.empty())
        p = base / p;
    s.uri = ref;
    s.text = read_file(p);
    s.digest = sha256_hex(s.text);
    s.dir = p.parent_path();
    return s;
}

json parse_json(const std::string& text, const std::string& where)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (auto k = msg.find("syntax error"); k != std::string::npos)
            msg = msg.substr(k);
        fail(where, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
    }
}

AlgebraPtr parse_algebra(const json& j, const std::string& where)
{
    if (!j.is_object())
        fail(where, "expected an algebra object");
    std::string name = "A";
    if (const json* n = optional_field(j, "name"))
        name = as_string(*n, at(where, "name"));

    const std::string bw = at(where, "basis");
    const json& barr = as_array(field(j, "basis", where), bw);
    std::vector<BasisElement> elems;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < barr.size(); ++i) {
        const std::string w = at(bw, i);
        BasisElement e;
        e.name = as_string(field(barr[i], "name", w), at(w, "name"));
        e.degree = as_int(field(barr[i], "degree", w), at(w, "degree"));
        if (e.name.empty())
            fail(at(w, "name"), "empty basis name");
        if (e.degree < 0)
            fail(at(w, "degree"), "negative degree");
        if (!seen.insert(e.name).second)
            fail(at(w, "name"), "duplicate basis name '" + e.name + "'");
        elems.push_back(std::move(e));
    }
    if (elems.empty())
        fail(bw, "empty basis");
    GradedBasis basis(std::move(elems));

    std::size_t unit = 0;
    if (const json* u = optional_field(j, "unit")) {
        unit = basis_index(basis, as_string(*u, at(where, "unit")), at(where, "unit"));
    } else {
        const auto& zero = basis.in_degree(0);
        if (zero.size() != 1)
            fail(where, "missing field 'unit'");
        unit = zero.front();
    }

    std::vector<ProductEntry> products;
    if (const json* ps = optional_field(j, "products")) {
        const std::string pw = at(where, "products");
        const json& parr = as_array(*ps, pw);
        std::set<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t t = 0; t < parr.size(); ++t) {
            const std::string w = at(pw, t);
            ProductEntry e;
            e.left = basis_index(basis, as_string(field(parr[t], "left", w), at(w, "left")), at(w, "left"));
            e.right = basis_index(basis, as_string(field(parr[t], "right", w), at(w, "right")), at(w, "right"));
            if (!pairs.emplace(e.left, e.right).second)
                fail(w, "duplicate product (" + basis.name(e.left) + "," + basis.name(e.right) + ")");
            e.result = parse_element(field(parr[t], "result", w), basis, basis.degree(e.left) + basis.degree(e.right),
                                     at(w, "result"));
            products.push_back(std::move(e));
        }
    }
    return std::make_shared<const GradedAlgebra>(std::move(name), std::move(basis), unit, std::move(products));
}

json emit_algebra(const GradedAlgebra& a)
{
    const GradedBasis& b = a.basis();
    json out = json::object();
    out["name"] = a.name();
    json basis = json::array();
    for (const auto& e : b.elements())
        basis.push_back({{"name", e.name}, {"degree", e.degree}});
    out["basis"] = std::move(basis);
    out["unit"] = b.name(a.unit());
    json products = json::array();
    for (const auto& p : a.canonical_products())
        products.push_back({{"left", b.name(p.left)}, {"right", b.name(p.right)}, {"result", emit_element(p.result, b)}});
    out["products"] = std::move(products);
    return out;
}

WorkMap parse_work_map(const json& j, const std::string& where, const std::filesystem::path& dir,
                       std::vector<Source>* inputs)
{
    if (!j.is_object())
        fail(where, "expected a morphism object");
    std::string name = "f";
    if (const json* n = optional_field(j, "name"))
        name = as_string(*n, at(where, "name"));
    AlgebraPtr Y = algebra_ref(field(j, "source", where), at(where, "source"), dir, inputs);
    AlgebraPtr X = algebra_ref(field(j, "target", where), at(where, "target"), dir, inputs);

    const std::string iw = at(where, "images");
    const json& images = field(j, "images", where);
    if (!images.is_object())
        fail(iw, "expected an object keyed by source basis names");
    std::vector<std::optional<Element>> given(Y->dim());
    for (const auto& [key, val] : images.items()) {
        const std::size_t i = basis_index(Y->basis(), key, at(iw, key));
        given[i] = parse_element(val, X->basis(), Y->degree(i), at(iw, key));
    }
    std::vector<Element> imgs = complete_images(*Y, *X, std::move(given), iw);

    WorkMap f{name, X, Y, AlgebraMorphism(Y, X, std::move(imgs)), {}, {}};
    f.flags.simply_connected = !algebra::has_degree_one(*X) && !algebra::has_degree_one(*Y);
    if (const json* fl = optional_field(j, "flags")) {
        const std::string fw = at(where, "flags");
        if (!fl->is_object())
            fail(fw, "expected an object");
        for (const auto& [key, val] : fl->items()) {
            if (key == "formal")
                f.flags.formal = as_bool(val, at(fw, key));
            else if (key == "coH_target")
                f.flags.codomain_coH = as_bool(val, at(fw, key));
            else if (key == "simply_connected")
                f.flags.simply_connected = as_bool(val, at(fw, key));
            else
                fail(at(fw, key), "unknown flag");
        }
    }
    if (const json* h = optional_field(j, "hints")) {
        const std::string hw = at(where, "hints");
        if (!h->is_object())
            fail(hw, "expected an object");
        for (const auto& [key, val] : h->items()) {
            if (key == "domain_tc")
                f.hints.domain_tc = as_int(val, at(hw, key));
            else if (key == "null_homotopic")
                f.hints.null_homotopic = as_bool(val, at(hw, key));
            else
                fail(at(hw, key), "unknown hint");
        }
    }
    return f;
}

json emit_work_map(const WorkMap& f)
{
    json out = json::object();
    out["name"] = f.name;
    out["source"] = emit_algebra(*f.codomain);
    out["target"] = emit_algebra(*f.domain);
    json images = json::object();
    const GradedAlgebra& Y = *f.codomain;
    for (std::size_t i = 0; i < Y.dim(); ++i)
        images[Y.basis().name(i)] = emit_element(f.induced.image(i), f.domain->basis());
    out["images"] = std::move(images);
    out["flags"] = {{"formal", f.flags.formal},
                    {"coH_target", f.flags.codomain_coH},
                    {"simply_connected", f.flags.simply_connected}};
    json hints = json::object();
    if (f.hints.domain_tc)
        hints["domain_tc"] = *f.hints.domain_tc;
    hints["null_homotopic"] = f.hints.null_homotopic;
    out["hints"] = std::move(hints);
    return out;
}

FreeCDGA parse_cdga(const json& j, const std::string& where)
{
    if (!j.is_object())
        fail(where, "expected a CDGA object");
    std::string name = "M";
    if (const json* n = optional_field(j, "name"))
        name = as_string(*n, at(where, "name"));
    const std::string gw = at(where, "generators");
    const json& garr = as_array(field(j, "generators", where), gw);
    std::vector<Generator> gens;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < garr.size(); ++i) {
        const std::string w = at(gw, i);
        Generator g;
        g.name = as_string(field(garr[i], "name", w), at(w, "name"));
        g.degree = as_int(field(garr[i], "degree", w), at(w, "degree"));
        if (g.name.empty() || !(std::isalpha(static_cast<unsigned char>(g.name[0])) || g.name[0] == '_'))
            fail(at(w, "name"), "generator names start with a letter");
        for (char c : g.name)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''))
                fail(at(w, "name"), "invalid character in generator name '" + g.name + "'");
        if (g.degree < 1)
            fail(at(w, "degree"), "generator degree must be positive");
        if (!seen.insert(g.name).second)
            fail(at(w, "name"), "duplicate generator '" + g.name + "'");
        gens.push_back(std::move(g));
    }
    int N = 12;
    if (const json* t = optional_field(j, "truncation")) {
        N = as_int(*t, at(where, "truncation"));
        if (N < 1 || N > 256)
            fail(at(where, "truncation"), "truncation must lie in 1..256");
    }
    bool allow = false;
    if (const json* a = optional_field(j, "allow_degree_one"))
        allow = as_bool(*a, at(where, "allow_degree_one"));

    // generators only, to parse the differentials against
    const FreeCDGA bare(name, gens, {}, 1, allow);
    std::vector<Poly> diffs(gens.size());
    if (const json* d = optional_field(j, "differential")) {
        const std::string dw = at(where, "differential");
        if (!d->is_object())
            fail(dw, "expected an object keyed by generator names");
        for (const auto& [key, val] : d->items()) {
            auto g = bare.find(key);
            if (!g)
                fail(at(dw, key), "unknown generator '" + key + "'");
            diffs[*g] = parse_poly(as_string(val, at(dw, key)), bare, at(dw, key));
        }
    }
    return FreeCDGA(std::move(name), std::move(gens), std::move(diffs), N, allow);
}

json emit_cdga(const FreeCDGA& m)
{
    json out = json::object();
    out["name"] = m.name();
    json gens = json::array();
    json diff = json::object();
    for (std::size_t i = 0; i < m.num_generators(); ++i) {
        gens.push_back({{"name", m.generator(i).name}, {"degree", m.generator(i).degree}});
        if (!m.differential(i).empty())
            diff[m.generator(i).name] = m.format(m.differential(i));
    }
    out["generators"] = std::move(gens);
    out["differential"] = std::move(diff);
    out["truncation"] = m.truncation();
    out["allow_degree_one"] = m.allows_degree_one();
    return out;
}

Poly parse_poly(std::string_view text, const FreeCDGA& M, const std::string& where)
{
    return PolyParser(text, M, where).parse();
}

CDGAMorphism parse_cdga_morphism(const json& j, const std::string& where, const std::filesystem::path& dir,
                                 std::vector<Source>* inputs)
{
    if (!j.is_object())
        fail(where, "expected a CDGA morphism object");
    auto src = cdga_ref(field(j, "source", where), at(where, "source"), dir, inputs);
    auto tgt = cdga_ref(field(j, "target", where), at(where, "target"), dir, inputs);
    const std::string iw = at(where, "images");
    const json& images = field(j, "images", where);
    if (!images.is_object())
        fail(iw, "expected an object keyed by source generator names");
    std::vector<Poly> imgs(src->num_generators());
    std::vector<bool> given(src->num_generators(), false);
    for (const auto& [key, val] : images.items()) {
        auto g = src->find(key);
        if (!g)
            fail(at(iw, key), "unknown generator '" + key + "'");
        imgs[*g] = parse_poly(as_string(val, at(iw, key)), *tgt, at(iw, key));
        given[*g] = true;
        for (const auto& [m, c] : imgs[*g])
            if (tgt->degree(m) != src->generator(*g).degree)
                fail(at(iw, key), "degree mismatch: image of " + key + " must have degree " +
                                      std::to_string(src->generator(*g).degree));
    }
    for (std::size_t i = 0; i < given.size(); ++i)
        if (!given[i])
            fail(iw, "missing image of generator '" + src->generator(i).name + "'");
    return CDGAMorphism(src, tgt, std::move(imgs));
}

json emit_cdga_morphism(const CDGAMorphism& f)
{
    json out = json::object();
    out["source"] = emit_cdga(f.source());
    out["target"] = emit_cdga(f.target());
    json images = json::object();
    for (std::size_t i = 0; i < f.source().num_generators(); ++i)
        images[f.source().generator(i).name] = f.target().format(f.image(i));
    out["images"] = std::move(images);
    return out;
}

AlgebraPtr load_algebra(const std::string& ref, std::vector<Source>* inputs, const std::filesystem::path& base)
{
    Source s = load_source(ref, base);
    if (inputs)
        inputs->push_back(s);
    if (s.catalog)
        return catalog::space(s.spec);
    AlgebraPtr a = parse_algebra(parse_json(s.text, where_of(s)), where_of(s));
    check_violations(algebra::validate_algebra(*a), where_of(s));
    return a;
}

WorkMap load_work_map(const std::string& ref, std::vector<Source>* inputs, const std::filesystem::path& base)
{
    Source s = load_source(ref, base);
    if (inputs)
        inputs->push_back(s);
    if (s.catalog)
        return catalog::map(s.spec);
    WorkMap f = parse_work_map(parse_json(s.text, where_of(s)), where_of(s), s.dir, inputs);
    check_violations(algebra::validate_work_map(f), where_of(s));
    return f;
}

CDGAMorphism load_cdga_morphism(const std::string& ref, std::vector<Source>* inputs, int truncation)
{
    Source s = load_source(ref);
    if (inputs)
        inputs->push_back(s);
    if (s.catalog) {
        WorkMap f = catalog::map(s.spec);
        const int N = truncation > 0 ? truncation : sullivan::default_truncation(f.domain->top_degree());
        auto X = sullivan::formal_model(f.domain, N);
        auto Y = sullivan::formal_model(f.codomain, N);
        return sullivan::formal_map_model(f.induced, Y, X);
    }
    CDGAMorphism f = parse_cdga_morphism(parse_json(s.text, where_of(s)), where_of(s), s.dir, inputs);
    for (const auto* M : {&f.source(), &f.target()}) {
        auto r = sullivan::validate_cdga(*M);
        check_violations(r.violations, where_of(s) + " (" + M->name() + ")");
    }
    check_violations(sullivan::validate_cdga_morphism(f), where_of(s));
    if (truncation > 0)
        return sullivan::with_truncation(f, truncation);
    return f;
}

}  // namespace tcmap::io
