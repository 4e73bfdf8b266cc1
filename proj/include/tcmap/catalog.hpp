#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcmap/graded_algebra.hpp"

namespace tcmap::catalog {

using algebra::AlgebraPtr;
using algebra::WorkMap;

/* head(arg, ...) where an argument is an integer or a nested term. */
struct Term {
    std::string head;
    std::vector<Term> args;
    std::optional<long> number;  // set for integer leaves

    bool is_number() const { return number.has_value(); }
};

Term parse_term(std::string_view text);
std::string to_string(const Term& t);

bool is_space(const Term& t);
bool is_map(const Term& t);

AlgebraPtr sphere(int n);
AlgebraPtr complex_projective(int n);
AlgebraPtr torus(int k);
AlgebraPtr point();

AlgebraPtr space(const Term& t);
AlgebraPtr space(std::string_view spec);
WorkMap map(const Term& t);
WorkMap map(std::string_view spec);

/* Known TC(X) (an upper bound for products). */
std::optional<int> known_tc(const Term& space);
bool is_co_h(const Term& space);

struct Expectation {
    std::string invariant;
    int value = 0;
    std::string citation;
};

std::vector<Expectation> expected(std::string_view spec);

/* Canonical specs of the built-in entries. */
std::vector<std::string> standard_spaces();
std::vector<std::string> standard_maps();

}  // namespace tcmap::catalog
