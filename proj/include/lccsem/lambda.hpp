#ifndef LCCSEM_LAMBDA_HPP
#define LCCSEM_LAMBDA_HPP

#include <cstddef>
#include <map>
#include <string>

#include "lccsem/term.hpp"

namespace lccsem {

inline constexpr std::size_t default_fuel = 1'000'000;

enum class Strategy { NormalOrder, ApplicativeOrder };

bool alpha_eq(const Term& a, const Term& b);

// Nameless rendering: two terms are α-equivalent iff their keys are equal.
std::string alpha_key(const Term& t);

// M[x := N], renaming binders of M that would capture free variables of N.
Term subst(const Term& m, const std::string& x, const Term& n);

// β and projection contraction to normal form. Throws FuelExhausted after
// `fuel` contractions.
Term beta_normalize(const Term& t, std::size_t fuel = default_fuel,
                    Strategy strategy = Strategy::NormalOrder);

// λx.M x → M (x not free in M) and ⟨π1 M, π2 M⟩ → M, to a fixed point.
Term eta_reduce(const Term& t);

Term beta_eta_normalize(const Term& t, std::size_t fuel = default_fuel);

using ConstEnv = std::map<std::string, Term, std::less<>>;

// Replaces every constant by its image in `env` simultaneously. With
// `require_all`, a constant without an image is an error; otherwise it stays.
Term substitute_constants(const Term& t, const ConstEnv& env, bool require_all = true);

}  // namespace lccsem

#endif
