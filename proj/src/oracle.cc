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

#include "rowpoly/oracle.h"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace rowpoly::oracle {

namespace {

constexpr int kBitsPerLabel = 4;
constexpr int kMaxLabels = 64 / kBitsPerLabel;
constexpr std::uint64_t kNibble = 0xF;

std::uint64_t slot_mask(int label) { return kNibble << (kBitsPerLabel * label); }

// One bit per label slot: the low bit of each nonzero nibble.
std::uint64_t present_bits(std::uint64_t code) {
  return (code | code >> 1 | code >> 2 | code >> 3) & 0x1111111111111111ULL;
}

std::uint64_t mask_of(std::uint64_t code) { return present_bits(code) * kNibble; }

int size_of(std::uint64_t code) { return std::popcount(present_bits(code)); }

struct GroundRows {
  std::vector<std::uint64_t> codes;
  std::vector<std::uint64_t> masks;
};

// All closed rows as packed codes: for each label, 0 = absent, otherwise
// base-type index + 1.
GroundRows ground_codes(const GroundSpace &space) {
  GroundRows out;
  const int n_labels = static_cast<int>(space.labels.size());
  const std::uint64_t n_types = space.base_types.size();
  // Labels are chosen in increasing index order, so each row appears once.
  auto extend = [&](auto &self, int next, int size, std::uint64_t code) -> void {
    out.codes.push_back(code);
    out.masks.push_back(mask_of(code));
    if (size == space.max_row_size) return;
    for (int l = next; l < n_labels; ++l) {
      for (std::uint64_t t = 1; t <= n_types; ++t) {
        self(self, l + 1, size + 1, code | (t << (kBitsPerLabel * l)));
      }
    }
  };
  extend(extend, 0, 0, 0);
  return out;
}

int label_index(const GroundSpace &space, const Label &l) {
  auto it = std::find(space.labels.begin(), space.labels.end(), l);
  return it == space.labels.end() ? -1
                                  : static_cast<int>(it - space.labels.begin());
}

int base_index(const GroundSpace &space, const std::string &name) {
  auto it = std::find(space.base_types.begin(), space.base_types.end(), name);
  return it == space.base_types.end()
             ? -1
             : static_cast<int>(it - space.base_types.begin());
}

// A field or star-variable value: either a known base type or a slot in
// the assignment vector.
struct StarRef {
  std::uint64_t constant = 0;  // base index + 1, or 0 when slot is used
  int slot = -1;
  bool invalid = false;
};

struct RowRef {
  std::vector<std::pair<int, StarRef>> fields;  // (label index, value)
  int tail_slot = -1;
  bool invalid = false;
};

StarRef compile_star(const Type &t, const GroundSpace &space,
                     const std::map<std::int64_t, int> &slots) {
  StarRef ref;
  if (const auto *c = t.get_if<ConNode>()) {
    int idx = base_index(space, c->name);
    if (idx < 0) {
      ref.invalid = true;
    } else {
      ref.constant = static_cast<std::uint64_t>(idx) + 1;
    }
  } else if (const auto *v = t.get_if<VarNode>();
             v != nullptr && v->var.kind.is_star() && slots.contains(v->var.id)) {
    ref.slot = slots.at(v->var.id);
  } else {
    ref.invalid = true;
  }
  return ref;
}

RowRef compile_row(const Type &t, const GroundSpace &space,
                   const std::map<std::int64_t, int> &slots) {
  RowRef ref;
  RowType row;
  if (const auto *r = t.get_if<RowNode>()) {
    row = r->row;
  } else if (const auto *v = t.get_if<VarNode>(); v && v->var.kind.is_row()) {
    row.tail = v->var;
  } else {
    ref.invalid = true;
    return ref;
  }
  for (const auto &[label, field] : row.fields) {
    int idx = label_index(space, label);
    StarRef value = compile_star(field, space, slots);
    if (idx < 0 || value.invalid) ref.invalid = true;
    ref.fields.emplace_back(idx, value);
  }
  if (row.tail) {
    auto it = slots.find(row.tail->id);
    if (it == slots.end()) {
      ref.invalid = true;
    } else {
      ref.tail_slot = it->second;
    }
  }
  return ref;
}

std::uint64_t star_value(const StarRef &ref,
                         const std::vector<std::uint64_t> &values) {
  return ref.slot >= 0 ? values[ref.slot] : ref.constant;
}

// Packs a row under an assignment. Returns false on a repeated label.
bool row_value(const RowRef &ref, const std::vector<std::uint64_t> &values,
               std::uint64_t &code) {
  code = 0;
  std::uint64_t mask = 0;
  for (const auto &[label, value] : ref.fields) {
    if (mask & slot_mask(label)) return false;
    mask |= slot_mask(label);
    code |= star_value(value, values) << (kBitsPerLabel * label);
  }
  if (ref.tail_slot >= 0) {
    std::uint64_t tail = values[ref.tail_slot];
    if (mask & mask_of(tail)) return false;
    code |= tail;
  }
  return true;
}

// Iterates every assignment of `kinds` (true = row) over the space.
template <typename Fn>
void for_each_assignment(const std::vector<bool> &is_row,
                         const GroundSpace &space, const GroundRows &rows,
                         Fn &&fn) {
  const std::size_t n = is_row.size();
  std::vector<std::size_t> digits(n, 0);
  std::vector<std::uint64_t> values(n, 0);
  auto radix = [&](std::size_t i) {
    return is_row[i] ? rows.codes.size() : space.base_types.size();
  };
  auto value = [&](std::size_t i) {
    return is_row[i] ? rows.codes[digits[i]]
                     : static_cast<std::uint64_t>(digits[i]) + 1;
  };
  for (std::size_t i = 0; i < n; ++i) values[i] = value(i);
  for (;;) {
    fn(values);
    std::size_t i = 0;
    while (i < n) {
      if (++digits[i] < radix(i)) {
        values[i] = value(i);
        break;
      }
      digits[i] = 0;
      values[i] = value(i);
      ++i;
    }
    if (i == n) return;
  }
}

std::map<std::int64_t, int> slots_for(const std::vector<TypeVar> &vars) {
  std::map<std::int64_t, int> slots;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    slots.emplace(vars[i].id, static_cast<int>(i));
  }
  return slots;
}

std::vector<bool> row_flags(const std::vector<TypeVar> &vars) {
  std::vector<bool> flags;
  for (const auto &v : vars) {
    if (!v.kind.is_row() && !v.kind.is_star()) {
      throw std::invalid_argument("oracle: variables must have kind * or row");
    }
    flags.push_back(v.kind.is_row());
  }
  return flags;
}

std::string name_of(const TypeVar &v) {
  if (!v.name.empty()) return v.name;
  return fmt::format("_{}", v.id);
}

std::string describe_row(const RowType &r) {
  std::string out = "{";
  bool first = true;
  for (const auto &[label, field] : canonicalize_row(r).fields) {
    if (!first) out += ", ";
    first = false;
    out += label + ":";
    if (const auto *c = field.get_if<ConNode>()) {
      out += c->name;
    } else if (const auto *v = field.get_if<VarNode>()) {
      out += name_of(v->var);
    } else {
      out += "?";
    }
  }
  if (r.tail) out += (r.fields.empty() ? "| " : " | ") + name_of(*r.tail);
  return out + "}";
}

}  // namespace

GroundSpace GroundSpace::make(int labels, int types, int max_row_size) {
  static const std::vector<std::string> kTypes = {"Int", "Bool", "String"};
  if (labels < 1 || labels > kMaxLabels || types < 1 ||
      types > static_cast<int>(kTypes.size())) {
    throw std::invalid_argument(
        fmt::format("oracle: need 1..{} labels and 1..{} types", kMaxLabels,
                    kTypes.size()));
  }
  GroundSpace space;
  space.labels.clear();
  for (int i = 0; i < labels; ++i) {
    space.labels.emplace_back(1, static_cast<char>('a' + i));
  }
  space.base_types.assign(kTypes.begin(), kTypes.begin() + types);
  space.max_row_size = max_row_size;
  space.validate();
  return space;
}

void GroundSpace::validate() const {
  if (labels.empty() || base_types.empty()) {
    throw std::invalid_argument("oracle: alphabets must be nonempty");
  }
  if (static_cast<int>(labels.size()) > kMaxLabels) {
    throw std::invalid_argument(
        fmt::format("oracle: at most {} labels supported", kMaxLabels));
  }
  if (base_types.size() >= (1u << kBitsPerLabel)) {
    throw std::invalid_argument("oracle: too many base types");
  }
  if (max_row_size < 0) {
    throw std::invalid_argument("oracle: max row size must be >= 0");
  }
}

TypeVar row_var(int n) {
  return TypeVar{n, Kind::row(), fmt::format("r{}", n)};
}

TypeVar star_var(int n) {
  return TypeVar{10 + n, Kind::star(), fmt::format("t{}", n)};
}

std::vector<RowType> enumerate_ground_rows(const GroundSpace &space) {
  space.validate();
  std::vector<RowType> out;
  for (std::uint64_t code : ground_codes(space).codes) {
    RowType row;
    for (std::size_t i = 0; i < space.labels.size(); ++i) {
      std::uint64_t t = (code >> (kBitsPerLabel * i)) & kNibble;
      if (t != 0) {
        row.fields.emplace_back(space.labels[i],
                                Type::con(space.base_types[t - 1], Kind::star()));
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<TypeVar> problem_vars(const RowProblem &p) {
  std::set<TypeVar> stars, rows;
  for (const RowType *r : {&p.left, &p.right}) {
    for (const auto &[label, field] : r->fields) {
      if (const auto *v = field.get_if<VarNode>()) stars.insert(v->var);
    }
    if (r->tail) rows.insert(*r->tail);
  }
  std::vector<TypeVar> out(stars.begin(), stars.end());
  out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

GroundSolutionSet ground_solutions(const RowProblem &p,
                                   const GroundSpace &space) {
  space.validate();
  std::vector<TypeVar> vars = problem_vars(p);
  auto slots = slots_for(vars);
  RowRef left = compile_row(Type::row(p.left), space, slots);
  RowRef right = compile_row(Type::row(p.right), space, slots);
  if (left.invalid || right.invalid) {
    throw std::invalid_argument("oracle: problem outside the ground space: " +
                                describe(p));
  }
  GroundRows rows = ground_codes(space);
  GroundSolutionSet out;
  for_each_assignment(row_flags(vars), space, rows,
                      [&](const std::vector<std::uint64_t> &values) {
                        std::uint64_t l = 0, r = 0;
                        if (row_value(left, values, l) &&
                            row_value(right, values, r) && l == r) {
                          out.insert(values);
                        }
                      });
  return out;
}

GroundSolutionSet ground_instances(const RowProblem &p, const Subst &s,
                                   const GroundSpace &space) {
  space.validate();
  std::vector<TypeVar> vars = problem_vars(p);

  // What each problem variable becomes under s.
  std::vector<Type> images;
  std::vector<TypeVar> params;
  std::set<std::int64_t> seen;
  for (const auto &v : vars) {
    const Type *bound = s.lookup(v);
    Type image = bound ? *bound : Type::var(v);
    for (const auto &fv : vars_in_order(image)) {
      if (seen.insert(fv.id).second) params.push_back(fv);
    }
    images.push_back(image);
  }

  auto slots = slots_for(params);
  std::vector<StarRef> star_images(vars.size());
  std::vector<RowRef> row_images(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].kind.is_row()) {
      row_images[i] = compile_row(images[i], space, slots);
    } else {
      star_images[i] = compile_star(images[i], space, slots);
    }
  }

  // An instance only counts if the problem's own rows stay duplicate-free
  // under it; otherwise they do not denote rows at all.
  auto problem_slots = slots_for(vars);
  RowRef left = compile_row(Type::row(p.left), space, problem_slots);
  RowRef right = compile_row(Type::row(p.right), space, problem_slots);

  GroundRows rows = ground_codes(space);
  GroundSolutionSet out;
  GroundAssignment tuple(vars.size());
  for_each_assignment(
      row_flags(params), space, rows,
      [&](const std::vector<std::uint64_t> &values) {
        for (std::size_t i = 0; i < vars.size(); ++i) {
          if (vars[i].kind.is_row()) {
            const RowRef &ref = row_images[i];
            std::uint64_t code = 0;
            if (ref.invalid || !row_value(ref, values, code) ||
                size_of(code) > space.max_row_size) {
              return;
            }
            tuple[i] = code;
          } else {
            if (star_images[i].invalid) return;
            tuple[i] = star_value(star_images[i], values);
          }
        }
        std::uint64_t code = 0;
        if (!row_value(left, tuple, code) || !row_value(right, tuple, code)) {
          return;
        }
        out.insert(tuple);
      });
  return out;
}

Verdict compare(const RowProblem &p, const GroundSpace &space,
                const RowUnifier &unifier) {
  Verdict v;
  v.oracle = ground_solutions(p, space);
  // Fresh ids start well clear of the problem's variables.
  VarSupply supply(1000);
  for (const auto &var : problem_vars(p)) supply.reserve_above(var.id);
  try {
    Subst s = unifier(p.left, p.right, supply);
    v.instances = ground_instances(p, s, space);
    v.subst = std::move(s);
    v.agrees = v.instances == v.oracle;
  } catch (const UnifyError &e) {
    v.unifier_error = e.what();
    v.agrees = v.oracle.empty();
  }
  return v;
}

Verdict compare(const RowProblem &p, const GroundSpace &space) {
  return compare(p, space, unify_rows);
}

bool oracle_agrees(const RowProblem &p, const GroundSpace &space) {
  return compare(p, space).agrees;
}

void for_each_exhaustive_problem(
    const GroundSpace &space,
    const std::function<void(const RowProblem &)> &fn) {
  std::vector<RowType> rows = enumerate_ground_rows(space);
  const std::vector<std::optional<TypeVar>> left_tails = {std::nullopt,
                                                          row_var(1)};
  const std::vector<std::optional<TypeVar>> right_tails = {
      std::nullopt, row_var(1), row_var(2)};
  RowProblem p;
  for (const auto &l : rows) {
    for (const auto &lt : left_tails) {
      p.left = RowType{l.fields, lt};
      for (const auto &r : rows) {
        for (const auto &rt : right_tails) {
          p.right = RowType{r.fields, rt};
          fn(p);
        }
      }
    }
  }
}

std::size_t exhaustive_problem_count(const GroundSpace &space) {
  std::size_t n = ground_codes(space).codes.size();
  return (n * 2) * (n * 3);
}

RowProblem random_problem(const GroundSpace &space, std::mt19937_64 &rng) {
  space.validate();
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto side = [&] {
    RowType r;
    std::size_t max = std::min<std::size_t>(
        static_cast<std::size_t>(space.max_row_size), space.labels.size());
    std::size_t size = uniform(0, max);
    std::vector<Label> labels = space.labels;
    std::shuffle(labels.begin(), labels.end(), rng);
    for (std::size_t i = 0; i < size; ++i) {
      Type field = uniform(0, 3) == 0
                       ? Type::var(star_var(static_cast<int>(uniform(1, 2))))
                       : Type::con(space.base_types[uniform(
                                       0, space.base_types.size() - 1)],
                                   Kind::star());
      r.fields.emplace_back(labels[i], field);
    }
    std::size_t tail = uniform(0, 2);
    if (tail > 0) r.tail = row_var(static_cast<int>(tail));
    return r;
  };
  RowProblem p;
  p.left = side();
  p.right = side();
  return p;
}

CampaignResult run_campaign(const GroundSpace &space, std::size_t samples,
                            std::uint64_t seed, const RowUnifier &unifier) {
  CampaignResult result;
  auto check = [&](const RowProblem &p) {
    ++result.problems;
    Verdict v = compare(p, space, unifier);
    if (!v.agrees) {
      if (result.failures == 0) {
        result.first_failure = p;
        result.first_verdict = std::move(v);
      }
      ++result.failures;
    }
  };
  for_each_exhaustive_problem(space, check);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) check(random_problem(space, rng));
  return result;
}

CampaignResult run_campaign(const GroundSpace &space, std::size_t samples,
                            std::uint64_t seed) {
  return run_campaign(space, samples, seed, unify_rows);
}

std::string describe(const RowProblem &p) {
  return describe_row(p.left) + " =?= " + describe_row(p.right);
}

std::string describe(const RowProblem &p, const GroundAssignment &a,
                     const GroundSpace &space) {
  std::vector<TypeVar> vars = problem_vars(p);
  std::string out;
  for (std::size_t i = 0; i < vars.size() && i < a.size(); ++i) {
    if (!out.empty()) out += ", ";
    out += name_of(vars[i]) + "=";
    if (vars[i].kind.is_row()) {
      std::string row = "{";
      bool first = true;
      for (std::size_t l = 0; l < space.labels.size(); ++l) {
        std::uint64_t t = (a[i] >> (kBitsPerLabel * l)) & kNibble;
        if (t == 0) continue;
        if (!first) row += ", ";
        first = false;
        row += space.labels[l] + ":" + space.base_types[t - 1];
      }
      out += row + "}";
    } else {
      out += space.base_types[a[i] - 1];
    }
  }
  return out.empty() ? "(no variables)" : out;
}

}  // namespace rowpoly::oracle
