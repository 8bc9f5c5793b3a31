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

#ifndef ROWPOLY_PRINTER_H_
#define ROWPOLY_PRINTER_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "rowpoly/syntax.h"

namespace rowpoly {

std::string print_kind(const Kind &k);

/**
 * Prints types with variables renamed a, b, c, ... in the order they are
 * first printed. Row fields are always printed in label order, so the
 * output depends only on the type modulo row reordering and variable ids.
 *
 * One printer instance keeps its naming across calls; use a single
 * instance when several types in one message must agree on names.
 */
class TypePrinter {
 public:
  TypePrinter() = default;
  /**
   * With `source_names`, variables keep the spelling they were written
   * with (for diagnostics about annotations); unnamed ones fall back to
   * the generated alphabet.
   */
  explicit TypePrinter(bool source_names) : source_names_(source_names) {}

  std::string type(const Type &t);
  std::string row(const RowType &r);
  std::string scheme(const Scheme &s);
  std::string var(const TypeVar &v);

 private:
  enum class Prec { kArrow, kApp, kAtom };
  void print(const Type &t, Prec prec, std::string &out);
  void print_row(const RowType &r, std::string &out);

  std::map<std::int64_t, std::string> names_;
  std::set<std::string> used_;
  bool source_names_ = false;
};

std::string print_type(const Type &t);
std::string print_scheme(const Scheme &s);
std::string print_term(const Term &t);

}  // namespace rowpoly

#endif  // ROWPOLY_PRINTER_H_
