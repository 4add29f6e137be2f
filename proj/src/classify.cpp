#include "tandem/classify.hpp"

#include <algorithm>
#include <numeric>

namespace tandem {

FamilySpec FamilySpec::of(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::quarter: return {kind, mpq_class(1, 4), -4};
    case FamilyKind::half: return {kind, mpq_class(1, 2), -5};
    case FamilyKind::three_quarter: return {kind, mpq_class(3, 4), -7};
  }
  throw ValidationError("unknown family kind");
}

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::quarter: return "quarter";
    case FamilyKind::half: return "half";
    case FamilyKind::three_quarter: return "three_quarter";
  }
  return "?";
}

std::vector<TandemModel> search_triples(const mpq_class& r, std::int64_t bound) {
  if (sgn(r) <= 0 || r >= 1) throw ValidationError("target gamma^2 must lie in (0,1), got " + r.get_str());
  if (bound < 1) throw ValidationError("bound must be positive, got " + std::to_string(bound));
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  std::vector<TandemModel> out;
  mpz_class lhs, q, rem;
  for (std::int64_t A = 1; A <= bound; ++A) {
    for (std::int64_t B = 1; B <= bound; ++B) {
      // B^2 den = (A+B)(B+C) num  =>  C = B^2 den / (num (A+B)) - B.
      const mpz_class b(static_cast<long>(B));
      lhs = b * b * den;
      const mpz_class divisor = num * (A + B);
      mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), lhs.get_mpz_t(), divisor.get_mpz_t());
      if (sgn(rem) != 0) continue;
      q -= b;
      if (sgn(q) <= 0 || q > bound) continue;
      const auto C = q.get_si();
      if (std::gcd(std::gcd(A, B), C) != 1) continue;
      out.emplace_back(A, B, C);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TandemModel family(const FamilySpec& spec, std::int64_t A) {
  const auto B = (A - 1) * A;
  switch (spec.kind) {
    case FamilyKind::quarter:
      if (A <= 1 || A % 2 == 0) throw ValidationError("quarter family needs odd A > 1, got A = " + std::to_string(A));
      return TandemModel(A, B, (A - 1) * (3 * A - 4));
    case FamilyKind::half:
      if (A <= 1 || A % 2 == 0) throw ValidationError("half family needs odd A > 1, got A = " + std::to_string(A));
      return TandemModel(A, B, (A - 1) * (A - 2));
    case FamilyKind::three_quarter:
      if (A <= 1 || (A - 1) % 6 != 0) {
        throw ValidationError("three_quarter family needs A = 6k+1 with k > 0, got A = " + std::to_string(A));
      }
      if ((A - 1) * (A - 4) % 3 != 0) {
        throw std::logic_error("three_quarter family: (A-1)(A-4) not divisible by 3 at A = " + std::to_string(A));
      }
      return TandemModel(A, B, (A - 1) * (A - 4) / 3);
  }
  throw ValidationError("unknown family kind");
}

std::vector<std::int64_t> family_parameters(FamilyKind kind, std::size_t count) {
  std::vector<std::int64_t> out;
  for (std::size_t k = 1; out.size() < count; ++k) {
    out.push_back(kind == FamilyKind::three_quarter ? static_cast<std::int64_t>(6 * k + 1)
                                                    : static_cast<std::int64_t>(2 * k + 1));
  }
  return out;
}

}  // namespace tandem
