#include "sred/exact.hpp"

#include <cmath>
#include <utility>

namespace sred {

Rat determinant(QMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DomainError("determinant of non-square matrix");
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      Rat factor = m(i, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= factor * m(col, j);
    }
  }
  return det;
}

std::optional<QMatrix> inverse(const QMatrix& input) {
  const std::size_t n = input.rows();
  if (n != input.cols()) throw DomainError("inverse of non-square matrix");
  QMatrix a = input;
  QMatrix inv = QMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    Rat p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      Rat factor = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= factor * a(col, j);
        inv(i, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

std::optional<std::vector<Rat>> solve(const QMatrix& m, const std::vector<Rat>& b) {
  auto inv = inverse(m);
  if (!inv) return std::nullopt;
  std::vector<Rat> x(m.cols(), Rat(0));
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) x[i] += (*inv)(i, j) * b[j];
  return x;
}

QMatrix to_rational(const ZMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
  return q;
}

ZMatrix hermite_normal_form(const ZMatrix& gens) {
  const std::size_t n = gens.rows();
  std::vector<std::vector<Int>> cols;
  cols.reserve(gens.cols());
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    auto c = gens.column(j);
    bool zero = true;
    for (const auto& x : c)
      if (x != 0) zero = false;
    if (!zero) cols.push_back(std::move(c));
  }

  ZMatrix h(n, n, Int(0));
  // Pivot rows from the bottom: after row i is processed, every remaining
  // column is zero in rows >= i.
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t row = n - 1 - step;
    // Euclid on the entries of `row` across the remaining columns.
    while (true) {
      std::size_t best = cols.size();
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j][row] == 0) continue;
        if (best == cols.size() || abs(cols[j][row]) < abs(cols[best][row])) best = j;
      }
      if (best == cols.size()) throw DomainError("lattice generators are not of full rank");
      bool done = true;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (j == best || cols[j][row] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), cols[j][row].get_mpz_t(), cols[best][row].get_mpz_t());
        for (std::size_t i = 0; i <= row; ++i) cols[j][i] -= q * cols[best][i];
        if (cols[j][row] != 0) done = false;
      }
      if (done) {
        auto pivot = std::move(cols[best]);
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(best));
        if (pivot[row] < 0)
          for (auto& x : pivot) x = -x;
        h.set_column(row, pivot);
        break;
      }
    }
  }

  // Reduce entries right of each pivot into [0, pivot).
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      const std::size_t i = j - 1 - k;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, i).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t r = 0; r <= i; ++r) h(r, j) -= q * h(r, i);
    }
  }
  return h;
}

Int lcm_of_denominators(const std::vector<Rat>& v) {
  Int l = 1;
  for (const auto& q : v) {
    Int d = q.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int round_rat(const Rat& q) {
  Rat half(1, 2);
  if (q >= 0) return floor_rat(q + half);
  return -floor_rat(-q + half);
}

std::string to_string(const Rat& q) { return q.get_str(); }

double log_abs(const Rat& q) {
  if (q == 0) throw DomainError("log of zero");
  auto log_z = [](const Int& z) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
  };
  return log_z(q.get_num()) - log_z(q.get_den());
}

}  // namespace sred
