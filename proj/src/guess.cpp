#include "tandem/guess.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>

#include "tandem/model.hpp"

namespace tandem {
namespace {

// Rank test modulo 2^61 - 1. Full column rank modulo a prime implies full
// column rank over Q, which settles a cell without exact elimination.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::optional<std::uint64_t> reduce(const mpq_class& v) {
  static const mpz_class prime(std::to_string(kPrime));
  mpz_class n, d;
  mpz_fdiv_r(n.get_mpz_t(), v.get_num_mpz_t(), prime.get_mpz_t());
  mpz_fdiv_r(d.get_mpz_t(), v.get_den_mpz_t(), prime.get_mpz_t());
  if (sgn(d) == 0) return std::nullopt;
  return mulmod(mpz_get_ui(n.get_mpz_t()), powmod(mpz_get_ui(d.get_mpz_t()), kPrime - 2));
}

std::size_t rank_mod_prime(std::vector<std::vector<std::uint64_t>> m, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const auto inv = powmod(m[rank][c], kPrime - 2);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const auto f = mulmod(m[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) {
        m[i][j] = (m[i][j] + kPrime - mulmod(f, m[rank][j])) % kPrime;
      }
    }
    ++rank;
  }
  return rank;
}

mpz_class power(long n, int i) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(i));
  return r;
}

// Clears denominators and divides out the content.
std::vector<mpz_class> make_primitive(const std::vector<mpq_class>& v) {
  mpz_class l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> out;
  out.reserve(v.size());
  mpz_class g = 0;
  for (const auto& q : v) {
    mpz_class x = l / q.get_den() * q.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    out.push_back(std::move(x));
  }
  if (sgn(g) != 0)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

}  // namespace

Recurrence::Recurrence(std::vector<std::vector<mpq_class>> coefficients) {
  if (coefficients.empty() || coefficients.front().empty()) {
    throw ValidationError("recurrence needs at least one coefficient polynomial");
  }
  const auto width = coefficients.front().size();
  std::vector<mpq_class> flat;
  for (const auto& p : coefficients) {
    if (p.size() != width) throw ValidationError("recurrence polynomials must share one degree bound");
    flat.insert(flat.end(), p.begin(), p.end());
  }
  if (std::all_of(flat.begin(), flat.end(), [](const mpq_class& q) { return sgn(q) == 0; })) {
    throw ValidationError("the zero recurrence is not a recurrence");
  }
  const auto& last = coefficients.back();
  if (std::all_of(last.begin(), last.end(), [](const mpq_class& q) { return sgn(q) == 0; })) {
    throw ValidationError("leading polynomial p_r vanishes identically");
  }
  auto ints = make_primitive(flat);
  // Leading coefficient of p_r is its highest-degree nonzero entry.
  const mpz_class* lead = nullptr;
  for (auto i = width; i-- > 0;) {
    if (sgn(ints[flat.size() - width + i]) != 0) {
      lead = &ints[flat.size() - width + i];
      break;
    }
  }
  if (sgn(*lead) < 0)
    for (auto& x : ints) x = -x;
  coeffs_.assign(coefficients.size(), {});
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    coeffs_[k].assign(ints.begin() + k * width, ints.begin() + (k + 1) * width);
}

mpz_class Recurrence::polynomial_at(int k, long n) const {
  mpz_class acc = 0;
  const auto& p = coeffs_.at(k);
  for (auto i = p.size(); i-- > 0;) {
    acc *= n;
    acc += p[i];
  }
  return acc;
}

std::string Recurrence::to_string() const {
  std::ostringstream os;
  for (int k = 0; k <= order(); ++k) {
    if (k) os << " + ";
    os << "(";
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const auto& c = coeffs_[k][i];
      if (sgn(c) == 0) continue;
      if (!first) os << (sgn(c) > 0 ? " + " : " - ");
      else if (sgn(c) < 0) os << "-";
      first = false;
      mpz_class a = abs(c);
      if (i == 0 || a != 1) os << a.get_str();
      if (i > 0) os << (a != 1 ? "*" : "") << "n" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    if (first) os << "0";
    os << ")*t(n" << (k ? "+" + std::to_string(k) : std::string()) << ")";
  }
  os << " = 0";
  return os.str();
}

bool verify_recurrence(const Recurrence& rec, const std::vector<mpq_class>& terms) {
  const auto r = static_cast<std::size_t>(rec.order());
  if (terms.size() <= r) return false;
  mpq_class acc;
  for (std::size_t n = 0; n + r < terms.size(); ++n) {
    acc = 0;
    for (std::size_t k = 0; k <= r; ++k) acc += rec.polynomial_at(static_cast<int>(k), static_cast<long>(n)) * terms[n + k];
    if (sgn(acc) != 0) return false;
  }
  return true;
}

std::vector<std::vector<mpz_class>> integer_kernel(std::vector<std::vector<mpz_class>> m, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::vector<bool> is_pivot(cols, false);
  mpz_class prev = 1, tmp;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && sgn(m[piv][c]) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const auto& prow = m[rank];
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      auto& row = m[i];
      for (std::size_t j = c + 1; j < cols; ++j) {
        // row[j] = (pivot*row[j] - row[c]*prow[j]) / prev, exact.
        mpz_mul(tmp.get_mpz_t(), prow[c].get_mpz_t(), row[j].get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), row[c].get_mpz_t(), prow[j].get_mpz_t());
        mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    prev = prow[c];
    pivot_cols.push_back(c);
    is_pivot[c] = true;
    ++rank;
  }

  std::vector<std::vector<mpz_class>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpq_class> x(cols, mpq_class(0));
    x[f] = 1;
    for (auto t = rank; t-- > 0;) {
      const auto pc = pivot_cols[t];
      mpq_class s = 0;
      for (std::size_t j = pc + 1; j < cols; ++j)
        if (sgn(x[j]) != 0) s += mpq_class(m[t][j]) * x[j];
      x[pc] = -s / mpq_class(m[t][pc]);
    }
    basis.push_back(make_primitive(x));
  }
  return basis;
}

GuessResult guess_recurrence(const std::vector<mpq_class>& terms, int max_order, int max_degree,
                             const GuessOptions& opts) {
  if (max_order < 0 || max_degree < 0) throw ValidationError("order and degree bounds must be nonnegative");
  const auto needed = static_cast<std::size_t>((max_order + 1) * (max_degree + 1)) + opts.held_out;
  if (terms.size() < needed) {
    throw ValidationError("guessing with order <= " + std::to_string(max_order) + " and degree <= " +
                          std::to_string(max_degree) + " needs at least " + std::to_string(needed) +
                          " terms, got " + std::to_string(terms.size()));
  }
  const auto window = terms.size() - opts.held_out;

  std::vector<std::optional<std::uint64_t>> mod_terms;
  bool modular_ok = true;
  for (const auto& t : terms) {
    mod_terms.push_back(reduce(t));
    modular_ok = modular_ok && mod_terms.back().has_value();
  }

  GuessResult result;
  for (int total = 0; total <= max_order + max_degree; ++total) {
    for (int r = 0; r <= std::min(total, max_order); ++r) {
      const int d = total - r;
      if (d > max_degree) continue;
      result.searched.emplace_back(r, d);
      if (window <= static_cast<std::size_t>(r)) continue;
      const std::size_t cols = static_cast<std::size_t>((r + 1) * (d + 1));
      const std::size_t rows = window - static_cast<std::size_t>(r);

      if (modular_ok && rows >= cols) {
        std::vector<std::vector<std::uint64_t>> mm(rows, std::vector<std::uint64_t>(cols));
        for (std::size_t n = 0; n < rows; ++n) {
          for (int k = 0; k <= r; ++k) {
            std::uint64_t npow = 1;
            for (int i = 0; i <= d; ++i) {
              mm[n][k * (d + 1) + i] = mulmod(npow, *mod_terms[n + k]);
              npow = mulmod(npow, n % kPrime);
            }
          }
        }
        if (rank_mod_prime(std::move(mm), cols) == cols) continue;
      }

      std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
      for (std::size_t n = 0; n < rows; ++n) {
        mpz_class l = 1;
        for (int k = 0; k <= r; ++k) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), terms[n + k].get_den_mpz_t());
        for (int k = 0; k <= r; ++k) {
          const mpz_class scaled = l / terms[n + k].get_den() * terms[n + k].get_num();
          for (int i = 0; i <= d; ++i) m[n][k * (d + 1) + i] = power(static_cast<long>(n), i) * scaled;
        }
      }
      for (const auto& v : integer_kernel(std::move(m), cols)) {
        std::vector<std::vector<mpq_class>> polys(r + 1, std::vector<mpq_class>(d + 1));
        bool leading_nonzero = false;
        for (int k = 0; k <= r; ++k)
          for (int i = 0; i <= d; ++i) {
            polys[k][i] = v[k * (d + 1) + i];
            if (k == r && sgn(v[k * (d + 1) + i]) != 0) leading_nonzero = true;
          }
        if (!leading_nonzero) continue;
        Recurrence rec(std::move(polys));
        if (verify_recurrence(rec, terms)) {
          result.recurrence = std::move(rec);
          return result;
        }
      }
    }
  }
  return result;
}

std::vector<mpq_class> read_series(std::istream& in) {
  std::vector<mpq_class> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto field = line.substr(line.rfind(',') == std::string::npos ? 0 : line.rfind(',') + 1);
    mpq_class q;
    if (q.set_str(field, 10) != 0) {
      if (first) {
        first = false;
        continue;
      }
      throw ValidationError("malformed series entry '" + line + "'");
    }
    first = false;
    if (sgn(q.get_den()) == 0) throw ValidationError("zero denominator in series entry '" + line + "'");
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

}  // namespace tandem
