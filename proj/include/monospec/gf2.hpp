#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace monospec {

/// Fixed-length vector over GF(2), packed into 64-bit words.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    if (value) words_[i / 64] |= bit;
    else words_[i / 64] &= ~bit;
  }
  void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  bool none() const noexcept;
  std::size_t count() const noexcept;
  /// Index of the lowest set bit, or size() when zero.
  std::size_t first_set() const noexcept;

  BitVector& operator^=(const BitVector& other) noexcept;
  friend BitVector operator^(BitVector a, const BitVector& b) noexcept { return a ^= b; }
  friend bool operator==(const BitVector& a, const BitVector& b) noexcept {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  /// Lexicographic by bit index (bit 0 most significant).
  friend bool operator<(const BitVector& a, const BitVector& b) noexcept;

  std::size_t hash() const noexcept;

  static BitVector ones(std::size_t size);

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const noexcept { return v.hash(); }
};

/// Reduced row echelon form in place; returns the rank. Pivot columns are
/// the first set bit of each surviving row, rows sorted by pivot.
std::size_t rref(std::vector<BitVector>& rows);

std::size_t rank(std::vector<BitVector> rows);

/// Basis of {x : <row, x> = 0 for every row}, in reduced echelon form.
std::vector<BitVector> nullspace(std::vector<BitVector> rows, std::size_t columns);

/// Reduce v by an rref basis; zero iff v lies in the span.
BitVector reduce(BitVector v, const std::vector<BitVector>& rref_basis);

/// All 2^k members of the span of an rref basis, in Gray-code order from 0.
std::vector<BitVector> span_members(const std::vector<BitVector>& basis, std::size_t size);

}  // namespace monospec
