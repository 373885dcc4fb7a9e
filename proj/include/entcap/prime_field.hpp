#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace entcap {

/// Integers modulo a prime p < 2^32, so every product fits in 64 bits.
class PrimeField {
 public:
  static constexpr std::uint64_t kDefaultPrime = 2147483647;  // 2^31 - 1

  /// Throws InvalidInput unless p is a prime below 2^32.
  explicit PrimeField(std::uint64_t p = kDefaultPrime);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Multiplicative inverse of a non-zero element (Fermat).
  std::uint64_t inv(std::uint64_t a) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

/// Dense row-major matrix over a prime field.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, PrimeField field);

  static Matrix identity(std::size_t n, PrimeField field);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }

  std::uint64_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<std::uint64_t>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<std::uint64_t> data_;
};

/// Exact rank over GF(p) by Gaussian elimination.
std::size_t rank_mod_p(Matrix m);

}  // namespace entcap
