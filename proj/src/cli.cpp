#include "tcmap/cli.hpp"

#include <cmath>
#include <sstream>

#include "CLI11.hpp"
#include "tcmap/arm_planner.hpp"
#include "tcmap/catalog.hpp"
#include "tcmap/error.hpp"
#include "tcmap/invariants.hpp"
#include "tcmap/io.hpp"
#include "tcmap/report.hpp"
#include "tcmap/sullivan.hpp"

namespace tcmap::cli {

namespace {

using invariants::BoundKind;
using invariants::BoundReport;
using io::json;
using report::ReportDocument;

struct UsageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json violations_json(const std::vector<algebra::Violation>& vs)
{
    json out = json::array();
    for (const auto& v : vs)
        out.push_back({{"kind", v.kind}, {"detail", v.detail}});
    return out;
}

json outcome_json(const sullivan::FactorizationOutcome& o)
{
    json out = json::object();
    out["verdict"] = sullivan::to_string(o.verdict);
    out["n"] = o.n;
    out["N"] = o.N;
    out["witness"] = o.witness ? json(o.witness_text) : json(nullptr);
    if (o.witness)
        out["witness_degree"] = o.witness_degree;
    out["extension_generators"] = o.extension_generators;
    out["lifted"] = o.lifted;
    json log = json::array();
    for (const auto& e : o.log)
        log.push_back({{"generator", e.generator}, {"degree", e.degree}, {"target", e.target}, {"detail", e.detail}});
    out["obstructions"] = std::move(log);
    return out;
}

json stats_json(const arm::PlannerStats& s)
{
    json out = json::object();
    out["samples"] = s.samples;
    out["regions_used"] = s.regions_used();
    out["region_hits"] = s.region_hits;
    out["region_members"] = s.region_members;
    out["uncovered"] = s.uncovered;
    out["max_endpoint_error"] = s.max_endpoint_error;
    out["max_continuity_gap"] = s.max_continuity_gap;
    out["max_lipschitz_ratio"] = s.max_lipschitz_ratio;
    out["annulus_violations"] = s.annulus_violations;
    return out;
}

/* validate: returns true when no violations were found. */
bool do_validate(const std::string& ref, ReportDocument& doc)
{
    io::Source s = io::load_source(ref);
    doc.inputs.push_back(s);
    std::vector<algebra::Violation> violations;
    std::vector<std::string> warnings;
    std::string kind;
    if (s.catalog) {
        auto t = catalog::parse_term(s.spec);
        if (catalog::is_map(t)) {
            kind = "work-map";
            violations = algebra::validate_work_map(catalog::map(t));
        } else {
            kind = "algebra";
            violations = algebra::validate_algebra(*catalog::space(t));
        }
    } else {
        json j = io::parse_json(s.text, s.uri);
        if (j.is_object() && j.contains("basis")) {
            kind = "algebra";
            violations = algebra::validate_algebra(*io::parse_algebra(j, s.uri));
        } else if (j.is_object() && j.contains("generators")) {
            kind = "cdga";
            auto r = sullivan::validate_cdga(io::parse_cdga(j, s.uri));
            violations = r.violations;
            warnings = r.warnings;
        } else if (j.is_object() && j.contains("images")) {
            const json& src = j.contains("source") ? j["source"] : json();
            const bool cdga = src.is_object() ? src.contains("generators")
                                              : src.is_string() && src.get<std::string>().ends_with(".cdga.json");
            if (cdga) {
                kind = "cdga-morphism";
                auto f = io::parse_cdga_morphism(j, s.uri, s.dir, &doc.inputs);
                for (const auto* M : {&f.source(), &f.target()}) {
                    auto r = sullivan::validate_cdga(*M);
                    for (auto& v : r.violations)
                        violations.push_back({M->name() + ":" + v.kind, v.detail});
                    for (auto& w : r.warnings)
                        warnings.push_back(M->name() + ": " + w);
                }
                auto mv = sullivan::validate_cdga_morphism(f);
                violations.insert(violations.end(), mv.begin(), mv.end());
            } else {
                kind = "work-map";
                violations = algebra::validate_work_map(io::parse_work_map(j, s.uri, s.dir, &doc.inputs));
            }
        } else {
            throw Error(ErrorCode::ParseError, s.uri + ": cannot tell the document kind (no basis, generators or images)");
        }
    }
    doc.sections["kind"] = kind;
    doc.sections["valid"] = violations.empty();
    doc.sections["violations"] = violations_json(violations);
    doc.sections["warnings"] = warnings;
    return violations.empty();
}

void do_tc_bound(const std::string& ref, ReportDocument& doc)
{
    algebra::WorkMap f = io::load_work_map(ref, &doc.inputs);
    doc.entries = invariants::bounds_report(f);
    doc.sections["map"] = f.name;
    doc.sections["flags"] = {{"formal", f.flags.formal},
                             {"coH_target", f.flags.codomain_coH},
                             {"simply_connected", f.flags.simply_connected}};
}

void rename(std::string& s, const std::string& from, const std::string& to)
{
    for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size()))
        s.replace(p, from.size(), to);
}

void do_tc_space(const std::string& ref, bool formal, ReportDocument& doc)
{
    algebra::AlgebraPtr X = io::load_algebra(ref, &doc.inputs);
    std::optional<int> known;
    bool coh = false;
    if (ref.starts_with("catalog:")) {
        auto t = catalog::parse_term(doc.inputs.back().spec);
        known = catalog::known_tc(t);
        coh = catalog::is_co_h(t);
    }
    algebra::WorkMap id = invariants::identity_work_map(X, formal, known);
    id.flags.codomain_coH = coh;
    doc.entries = invariants::bounds_report(id);
    for (auto& e : doc.entries) {
        if (e.invariant == "nil ker(cup)|Im(f×f)*")
            e.invariant = "nil ker(cup)";
        rename(e.invariant, "TC(f_Q)", "TC(X_Q)");
        rename(e.invariant, "TC(f)", "TC(X)");
        rename(e.note, "TC(f) <= TC(X)", "known value of TC(X)");
        rename(e.note, "f̃*", "the reduced cohomology");
        rename(e.note, "TC(f)", "TC(X)");
    }
    doc.subject = "TC(X)";
    doc.sections["space"] = X->name();
    doc.sections["formal"] = formal;
    doc.sections["citation"] = invariants::citation::identity;
}

void do_secat(const std::string& pref, const std::string& fref, ReportDocument& doc)
{
    algebra::WorkMap p = io::load_work_map(pref, &doc.inputs);
    algebra::WorkMap f = io::load_work_map(fref, &doc.inputs);
    const int v = invariants::secat_lower_bound(p.induced, f.induced);
    doc.subject = "secat_f(p)";
    doc.entries.push_back({"secat_f(p)", v, BoundKind::Lower, invariants::citation::secat, {p.name, f.name}, ""});
}

void do_sullivan(const std::string& ref, int n, int N, bool strict_only, ReportDocument& doc)
{
    sullivan::CDGAMorphism psi = io::load_cdga_morphism(ref, &doc.inputs, N);
    if (N <= 0)
        N = psi.truncation();
    const bool surjective = psi.surjective();
    sullivan::CDGAMorphism gamma = sullivan::surjectivize(psi);
    doc.subject = "TC(f_Q)";
    doc.sections["n"] = n;
    doc.sections["N"] = N;
    doc.sections["surjectivized"] = !surjective;
    doc.sections["source_generators"] = gamma.source().num_generators();
    doc.sections["target_generators"] = gamma.target().num_generators();

    const std::vector<std::string> inputs{doc.inputs.front().uri};
    auto strict = sullivan::strict_certificate(gamma, n, N);
    doc.sections["strict"] = outcome_json(strict);
    if (strict.verdict == sullivan::Verdict::Certified)
        doc.entries.push_back({"TC(f_Q)", n, BoundKind::Upper, invariants::citation::strict_factorization, inputs,
                               "strict certificate"});
    if (!strict_only) {
        auto homotopy = sullivan::homotopy_factorization(gamma, n, N);
        doc.sections["homotopy"] = outcome_json(homotopy);
        if (homotopy.verdict == sullivan::Verdict::Certified)
            doc.entries.push_back({"TC(f_Q)", n, BoundKind::Upper, invariants::citation::homotopy_factorization,
                                   inputs, "homotopy certificate"});
        else
            doc.entries.push_back({"TC(f_Q)", std::nullopt, BoundKind::Certificate,
                                   invariants::citation::homotopy_factorization, inputs,
                                   std::string("verdict ") + sullivan::to_string(homotopy.verdict) + " at n = " +
                                       std::to_string(n)});
    }
}

void do_catalog_list(ReportDocument& doc)
{
    json spaces = json::array();
    for (const auto& spec : catalog::standard_spaces()) {
        auto t = catalog::parse_term(spec);
        auto X = catalog::space(t);
        json e = {{"spec", spec}, {"dim", X->dim()}, {"top_degree", X->top_degree()}};
        auto tc = catalog::known_tc(t);
        e["TC"] = tc ? json(*tc) : json(nullptr);
        spaces.push_back(std::move(e));
    }
    json maps = json::array();
    for (const auto& spec : catalog::standard_maps()) {
        json expected = json::array();
        for (const auto& x : catalog::expected(spec))
            expected.push_back({{"invariant", x.invariant}, {"value", x.value}, {"citation", x.citation}});
        maps.push_back({{"spec", spec}, {"expected", std::move(expected)}});
    }
    doc.sections["spaces"] = std::move(spaces);
    doc.sections["maps"] = std::move(maps);
}

json do_catalog_emit(const std::string& spec_text)
{
    auto t = catalog::parse_term(spec_text);
    if (catalog::is_map(t))
        return io::emit_work_map(catalog::map(t));
    return io::emit_algebra(*catalog::space(t));
}

void do_arm_demo(const arm::VerifyOptions& opts, ReportDocument& doc)
{
    try {
        arm::check_arm(opts.arm);
    } catch (const Error& e) {
        throw UsageFailure(std::string("--l1/--l2: ") + e.what());
    }
    arm::VerifyOptions work = opts;
    work.naive_identity = false;
    arm::VerifyOptions naive = opts;
    naive.naive_identity = true;
    const auto ws = arm::verify_planner(work);
    const auto ns = arm::verify_planner(naive);

    algebra::WorkMap proj = catalog::map("torus_projection()");
    algebra::WorkMap id = catalog::map("torus_identity()");
    const int proj_lower = invariants::tc_lower_bound(proj);
    const int id_lower = invariants::tc_lower_bound(id);
    const std::vector<std::string> pin{proj.name};
    const std::vector<std::string> iin{id.name};

    doc.entries.push_back({"TC(f)", proj_lower, BoundKind::Lower, invariants::citation::zero_divisor, pin,
                           "f = polar angle of the end effector, T^2 -> S^1"});
    const bool work_ok = ws.uncovered == 0 && ws.max_endpoint_error < 1e-9;
    if (work_ok) {
        const int up = static_cast<int>(ws.regions_used()) - 1;
        doc.entries.push_back({"TC(f)", up, BoundKind::Upper, invariants::citation::planner, pin,
                               std::to_string(ws.regions_used()) + "-region work-map planner"});
        if (up == proj_lower)
            doc.entries.push_back({"TC(f)", up, BoundKind::Exact, invariants::citation::sandwich, pin,
                                   "planner matches the cohomological lower bound"});
    }
    doc.entries.push_back({"TC(T^2)", id_lower, BoundKind::Lower, invariants::citation::zero_divisor, iin,
                           "f ~ id for the transversal arm"});
    if (ns.max_endpoint_error < 1e-9)
        doc.entries.push_back({"TC(T^2)", static_cast<int>(ns.regions_used()) - 1, BoundKind::Upper,
                               invariants::citation::planner, iin,
                               std::to_string(ns.regions_used()) + "-region naive identity planner"});

    doc.sections["arm"] = {{"l1", opts.arm.l1}, {"l2", opts.arm.l2}};
    doc.sections["seed"] = opts.seed;
    doc.sections["steps"] = opts.steps;
    doc.sections["margin"] = opts.delta;
    const auto& primary = opts.naive_identity ? ns : ws;
    const auto& other = opts.naive_identity ? ws : ns;
    doc.sections[opts.naive_identity ? "naive_identity_planner" : "work_planner"] = stats_json(primary);
    doc.sections[opts.naive_identity ? "work_planner" : "naive_identity_planner"] = stats_json(other);
    doc.sections["chain"] = {{"work_planner_regions", ws.regions_used()},
                             {"identity_regions_lower", id_lower + 1},
                             {"naive_identity_regions", ns.regions_used()}};
    const char* rel = ws.regions_used() < std::size_t(id_lower + 1) ? " < " : " >= ";
    const char* rel2 = std::size_t(id_lower + 1) <= ns.regions_used() ? " ≤ " : " > ";
    doc.lines.push_back("regions: work-map planner " + std::to_string(ws.regions_used()) + rel +
                        std::to_string(id_lower + 1) + " = TC(T^2)+1" + rel2 + std::to_string(ns.regions_used()) +
                        " = naive identity planner");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Topological complexity of maps: bounds, Sullivan certificates, arm planner demo", "tcmap"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "Machine-readable JSON report");

    std::string validate_ref;
    auto* validate = app.add_subcommand("validate", "Validate an algebra, CDGA or morphism file");
    validate->add_option("file", validate_ref, "File or catalog:<spec>")->required();

    std::string map_ref;
    auto* tc_bound = app.add_subcommand("tc-bound", "Bounds for TC(f)");
    tc_bound->add_option("--map", map_ref, "Morphism file or catalog:<map>")->required();

    std::string space_ref;
    bool formal = false;
    auto* tc_space = app.add_subcommand("tc-space", "Bounds for TC(X)");
    tc_space->add_option("algebra", space_ref, "Algebra file or catalog:<space>")->required();
    tc_space->add_flag("--formal", formal, "Assert that X is formal");

    std::string p_ref, f_ref;
    auto* secat = app.add_subcommand("secat-bound", "Lower bound for secat_f(p)");
    secat->add_option("--p", p_ref, "Morphism file for p")->required();
    secat->add_option("--f", f_ref, "Morphism file for f")->required();

    std::string psi_ref;
    int n = 0, max_degree = 0;
    bool strict_only = false;
    auto* sull = app.add_subcommand("sullivan", "Factorization certificates for a Sullivan model");
    sull->add_option("--psi", psi_ref, "CDGA morphism file or catalog:<map>")->required();
    sull->add_option("--n", n, "Candidate bound")->required()->check(CLI::NonNegativeNumber);
    sull->add_option("--max-degree", max_degree, "Truncation degree N")->check(CLI::PositiveNumber);
    sull->add_flag("--strict-only", strict_only, "Skip the homotopy factorization");

    auto* cat = app.add_subcommand("catalog", "Builtin spaces and maps");
    cat->require_subcommand(1);
    auto* cat_list = cat->add_subcommand("list", "List catalog entries");
    std::string emit_spec;
    auto* cat_emit = cat->add_subcommand("emit", "Emit a catalog entry in the file format");
    cat_emit->add_option("spec", emit_spec, "Catalog spec")->required();

    arm::VerifyOptions arm_opts;
    bool naive = false;
    auto* armd = app.add_subcommand("arm-demo", "Verify the 2-link arm motion planners");
    armd->add_option("--l1", arm_opts.arm.l1, "First link length");
    armd->add_option("--l2", arm_opts.arm.l2, "Second link length");
    armd->add_option("--samples", arm_opts.samples, "Number of random pairs")->check(CLI::PositiveNumber);
    armd->add_option("--steps", arm_opts.steps, "Samples per path")->check(CLI::Range(2, 1 << 20));
    armd->add_option("--seed", arm_opts.seed, "Random seed");
    armd->add_flag("--naive-identity", naive, "Report the component-wise identity planner first");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e, out, err);
            return Success;
        }
        err << "usage error: " << e.what() << "\n";
        return UsageError;
    }
    if (app.get_subcommands().empty()) {
        err << "usage error: a subcommand is required\n" << app.help();
        return UsageError;
    }

    ReportDocument doc;
    bool ok = true;
    try {
        if (*validate) {
            doc.command = "validate";
            ok = do_validate(validate_ref, doc);
        } else if (*tc_bound) {
            doc.command = "tc-bound";
            do_tc_bound(map_ref, doc);
        } else if (*tc_space) {
            doc.command = "tc-space";
            do_tc_space(space_ref, formal, doc);
        } else if (*secat) {
            doc.command = "secat-bound";
            do_secat(p_ref, f_ref, doc);
        } else if (*sull) {
            doc.command = "sullivan";
            do_sullivan(psi_ref, n, max_degree, strict_only, doc);
        } else if (*cat_emit) {
            out << do_catalog_emit(emit_spec).dump(2) << "\n";
            return Success;
        } else if (*cat_list) {
            doc.command = "catalog list";
            do_catalog_list(doc);
        } else if (*armd) {
            doc.command = "arm-demo";
            arm_opts.naive_identity = naive;
            do_arm_demo(arm_opts, doc);
        }
    } catch (const UsageFailure& e) {
        err << "usage error: " << e.what() << "\n";
        return UsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return ValidationFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return ValidationFailure;
    }

    out << (as_json ? report::render_json(doc) : report::render_human(doc));
    if (!ok)
        err << "validation failed\n";
    return ok ? Success : ValidationFailure;
}

}  // namespace tcmap::cli
