#pragma once

// Tandem models whose critical exponent is rational, i.e. whose gamma^2
// equals 1/4, 1/2 or 3/4.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tandem/model.hpp"

namespace tandem {

enum class FamilyKind { quarter, half, three_quarter };

struct FamilySpec {
  FamilyKind kind;
  mpq_class target;
  int alpha;

  static FamilySpec of(FamilyKind kind);
};

std::string to_string(FamilyKind k);

/// All coprime (A,B,C) in [1,bound]^3 with B^2 den(r) = (A+B)(B+C) num(r),
/// sorted lexicographically. Mirrored pairs are both listed.
std::vector<TandemModel> search_triples(const mpq_class& r, std::int64_t bound);

/// The parametric witnesses with B = (A-1)A:
///   quarter:        C = (A-1)(3A-4),   odd A > 1
///   half:           C = (A-1)(A-2),    odd A > 1
///   three_quarter:  C = (A-1)(A-4)/3,  A = 6k+1 with k > 0
/// Throws ValidationError naming the violated domain condition.
TandemModel family(const FamilySpec& spec, std::int64_t A);

/// The first `count` admissible A values of a family.
std::vector<std::int64_t> family_parameters(FamilyKind kind, std::size_t count);

}  // namespace tandem
