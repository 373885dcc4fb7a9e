#include "entcap/prime_field.hpp"

#include "entcap/error.hpp"

#include <string>
#include <utility>

namespace entcap {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= (std::uint64_t{1} << 32)) throw InvalidInput("prime modulus must be below 2^32");
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw Error("inverse of zero");
  return pow(a, p_ - 2);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, PrimeField field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

Matrix Matrix::identity(std::size_t n, PrimeField field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::size_t rank_mod_p(Matrix m) {
  const auto& f = m.field();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(rank, c));
    }
    const std::uint64_t scale = f.inv(m.at(rank, col));
    for (std::size_t c = col; c < m.cols(); ++c) m.at(rank, c) = f.mul(m.at(rank, c), scale);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      const std::uint64_t factor = m.at(r, col);
      if (factor == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c) {
        m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(rank, c)));
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace entcap
