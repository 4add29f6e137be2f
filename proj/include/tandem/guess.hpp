#pragma once

// Guessing linear recurrences with polynomial coefficients,
//   sum_{k=0}^{r} p_k(n) t_{n+k} = 0,  deg p_k <= d,
// over exact rationals. Each (r,d) cell is a homogeneous linear system in
// the (r+1)(d+1) unknown coefficients; its kernel is found by
// fraction-free elimination.

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tandem {

class Recurrence {
 public:
  /// coefficients[k][i] is the coefficient of n^i in p_k; all p_k must
  /// share one length d+1. The vector is made primitive (integer, content
  /// 1) with a positive leading coefficient of p_r. Throws ValidationError
  /// on the zero recurrence or when p_r vanishes identically.
  explicit Recurrence(std::vector<std::vector<mpq_class>> coefficients);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  int degree() const { return static_cast<int>(coeffs_.front().size()) - 1; }
  const std::vector<std::vector<mpz_class>>& coefficients() const { return coeffs_; }

  /// p_k(n).
  mpz_class polynomial_at(int k, long n) const;

  std::string to_string() const;

  friend bool operator==(const Recurrence&, const Recurrence&) = default;

 private:
  std::vector<std::vector<mpz_class>> coeffs_;
};

/// True iff the recurrence annihilates every window t_n..t_{n+r} of `terms`.
bool verify_recurrence(const Recurrence& rec, const std::vector<mpq_class>& terms);

struct GuessOptions {
  /// Trailing terms kept out of the linear systems and used only to verify.
  std::size_t held_out = 10;
};

struct GuessResult {
  std::optional<Recurrence> recurrence;
  /// Every (order, degree) cell examined, in search order.
  std::vector<std::pair<int, int>> searched;
};

/// Examines cells in increasing r+d (smaller r first) and returns the first
/// recurrence that verifies on all terms. Throws ValidationError if fewer
/// than (max_order+1)(max_degree+1) + held_out terms are given.
GuessResult guess_recurrence(const std::vector<mpq_class>& terms, int max_order, int max_degree,
                             const GuessOptions& opts = {});

/// Integer kernel basis of an integer matrix (rows x cols), one vector per
/// free column, by Bareiss elimination.
std::vector<std::vector<mpz_class>> integer_kernel(std::vector<std::vector<mpz_class>> rows, std::size_t cols);

/// Reads one integer or num/den per line. Blank lines and lines starting
/// with '#' are skipped, a non-numeric first line is taken as a header, and
/// in comma-separated lines the last field is used.
std::vector<mpq_class> read_series(std::istream& in);

}  // namespace tandem
