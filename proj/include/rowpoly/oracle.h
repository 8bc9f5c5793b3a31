// Copyright 2026 The rowpoly Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROWPOLY_ORACLE_H_
#define ROWPOLY_ORACLE_H_

// Brute-force ground-truth for row unification on small problems.
//
// A problem is a pair of rows whose fields are base types or star type
// variables and whose tails are row variables. Its ground solutions are
// all assignments of base types and closed rows (drawn from a bounded
// GroundSpace) under which both rows denote the same label -> type map.
// A unifier agrees with the oracle when the ground instances of its
// answer are exactly that set. Nothing here depends on how the unifier
// computes its answer; substitutions are read as plain data.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rowpoly/syntax.h"
#include "rowpoly/unify.h"

namespace rowpoly::oracle {

struct GroundSpace {
  std::vector<Label> labels = {"a", "b", "c", "d"};
  std::vector<std::string> base_types = {"Int", "Bool", "String"};
  int max_row_size = 3;

  /** First `labels` letters, first `types` of Int, Bool, String. */
  static GroundSpace make(int labels, int types, int max_row_size);

  /** Throws std::invalid_argument when the bounds are unusable. */
  void validate() const;
};

struct RowProblem {
  RowType left;
  RowType right;
};

/** Variables a generated problem may use: two rows and two stars. */
TypeVar row_var(int n);   // n in {1, 2}
TypeVar star_var(int n);  // n in {1, 2}

std::vector<RowType> enumerate_ground_rows(const GroundSpace &space);

/** Star variables by id, then row variables by id. */
std::vector<TypeVar> problem_vars(const RowProblem &p);

/**
 * One value per problem variable in problem_vars order: a base-type index
 * plus one for star variables, a packed row (four bits per label) for row
 * variables.
 */
using GroundAssignment = std::vector<std::uint64_t>;
using GroundSolutionSet = std::set<GroundAssignment>;

GroundSolutionSet ground_solutions(const RowProblem &p,
                                   const GroundSpace &space);

/** Ground instances of `s` projected onto the problem's variables. */
GroundSolutionSet ground_instances(const RowProblem &p, const Subst &s,
                                   const GroundSpace &space);

using RowUnifier =
    std::function<Subst(const RowType &, const RowType &, VarSupply &)>;

struct Verdict {
  bool agrees = false;
  std::optional<Subst> subst;  // empty when the unifier failed
  std::string unifier_error;
  GroundSolutionSet oracle;
  GroundSolutionSet instances;
};

Verdict compare(const RowProblem &p, const GroundSpace &space,
                const RowUnifier &unifier);
Verdict compare(const RowProblem &p, const GroundSpace &space);

bool oracle_agrees(const RowProblem &p, const GroundSpace &space);

/**
 * Every problem with ground fields drawn from `space`: left tail absent
 * or row_var(1), right tail absent, row_var(1) or row_var(2).
 */
void for_each_exhaustive_problem(
    const GroundSpace &space, const std::function<void(const RowProblem &)> &fn);
std::size_t exhaustive_problem_count(const GroundSpace &space);

/** Random problem; fields may also be star_var(1) or star_var(2). */
RowProblem random_problem(const GroundSpace &space, std::mt19937_64 &rng);

struct CampaignResult {
  std::size_t problems = 0;
  std::size_t failures = 0;
  std::optional<RowProblem> first_failure;
  std::optional<Verdict> first_verdict;
};

CampaignResult run_campaign(const GroundSpace &space, std::size_t samples,
                            std::uint64_t seed, const RowUnifier &unifier);
CampaignResult run_campaign(const GroundSpace &space, std::size_t samples,
                            std::uint64_t seed = 1);

std::string describe(const RowProblem &p);
std::string describe(const RowProblem &p, const GroundAssignment &a,
                     const GroundSpace &space);

}  // namespace rowpoly::oracle

#endif  // ROWPOLY_ORACLE_H_
