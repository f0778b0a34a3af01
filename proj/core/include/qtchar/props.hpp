#pragma once

#include "qtchar/bank.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qtc {

struct PropOptions {
    int random_monomials = 20;
    int max_k = 3;
    int normal_form_samples = 200;
    int product_samples = 20;
    int shuffle_seeds = 5;
    std::uint64_t seed = 20240611;
    // Reverse KR specs whose character exceeds this are reported as skipped.
    std::size_t reverse_term_cap = 100000;
    // Random dominant monomials are redrawn while the product of the
    // fundamental dimensions of their units exceeds this.
    long long random_size_cap = 3000;
    EngineOptions engine;
};

struct PropCase {
    std::string algebra;
    Direction direction;
    int labels = 0;
    int lacing = 0;
    Scheme scheme() const { return make_scheme(algebra, direction, labels, lacing); }
    std::string name() const;
};

std::vector<PropCase> prop_cases();

// Highest monomials of the two specializations of an interpolating monomial.
Monomial q_top(const Scheme& s, const Monomial& m);
Monomial t_top(const Scheme& s, const Monomial& m);

std::vector<CheckResult> prop_unique_dominant(const PropOptions& opt);
std::vector<CheckResult> prop_specialization_oracle(const PropOptions& opt);
std::vector<CheckResult> prop_kernel_membership(const PropOptions& opt);
std::vector<CheckResult> prop_quotient_oracle(const PropOptions& opt);
std::vector<CheckResult> prop_unitriangular(const PropOptions& opt);
std::vector<CheckResult> prop_order_independence(const PropOptions& opt);
std::vector<CheckResult> prop_affine_minuscule(const PropOptions& opt);
std::vector<CheckResult> prop_ordinary_duality(const PropOptions& opt);

SuiteReport run_props(const PropOptions& opt = {});

}  // namespace qtc
