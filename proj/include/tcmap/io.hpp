#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tcmap/free_cdga.hpp"
#include "tcmap/graded_algebra.hpp"

namespace tcmap::io {

using json = nlohmann::ordered_json;
using algebra::AlgebraMorphism;
using algebra::AlgebraPtr;
using algebra::GradedAlgebra;
using algebra::WorkMap;
using sullivan::CDGAMorphism;
using sullivan::FreeCDGA;

std::string sha256_hex(std::string_view data);

/* An input as read from disk or from the builtin catalog. */
struct Source {
    std::string uri;     // "catalog:<spec>" or the path as given
    std::string text;    // file contents; empty for catalog inputs
    std::string digest;  // sha256 of the file bytes or of the canonical URI
    bool catalog = false;
    std::string spec;    // canonical catalog spec
    std::filesystem::path dir;
};

Source load_source(const std::string& ref, const std::filesystem::path& base = {});

/* Parses text as JSON; syntax errors report line and column. */
json parse_json(const std::string& text, const std::string& where);

AlgebraPtr parse_algebra(const json& j, const std::string& where);
json emit_algebra(const GradedAlgebra& a);

/* images of every source basis element; basis elements left out are
 * completed by multiplicativity. */
WorkMap parse_work_map(const json& j, const std::string& where, const std::filesystem::path& dir,
                       std::vector<Source>* inputs = nullptr);
json emit_work_map(const WorkMap& f);

FreeCDGA parse_cdga(const json& j, const std::string& where);
json emit_cdga(const FreeCDGA& m);

/* Polynomial in the generators of M: + - * ^, parentheses, p/q literals. */
sullivan::Poly parse_poly(std::string_view text, const FreeCDGA& M, const std::string& where = "expression");

CDGAMorphism parse_cdga_morphism(const json& j, const std::string& where, const std::filesystem::path& dir,
                                 std::vector<Source>* inputs = nullptr);
json emit_cdga_morphism(const CDGAMorphism& f);

/* Loading from catalog URIs or JSON files; each loaded input is appended to
 * `inputs` for the report digests. */
AlgebraPtr load_algebra(const std::string& ref, std::vector<Source>* inputs = nullptr,
                        const std::filesystem::path& base = {});
WorkMap load_work_map(const std::string& ref, std::vector<Source>* inputs = nullptr,
                      const std::filesystem::path& base = {});
/* A catalog map yields the formal model of the map. */
CDGAMorphism load_cdga_morphism(const std::string& ref, std::vector<Source>* inputs = nullptr, int truncation = 0);

}  // namespace tcmap::io
