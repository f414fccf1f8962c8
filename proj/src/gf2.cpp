#include "monospec/gf2.hpp"

#include <algorithm>
#include <bit>

#include "monospec/error.hpp"

namespace monospec {

bool BitVector::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BitVector::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BitVector::first_set() const noexcept {
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
  return size_;
}

BitVector& BitVector::operator^=(const BitVector& other) noexcept {
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
  return *this;
}

bool operator<(const BitVector& a, const BitVector& b) noexcept {
  if (a.size_ != b.size_) return a.size_ < b.size_;
  for (std::size_t i = 0; i < a.size_; ++i)
    if (a.get(i) != b.get(i)) return !a.get(i);
  return false;
}

std::size_t BitVector::hash() const noexcept {
  std::size_t h = size_;
  for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

BitVector BitVector::ones(std::size_t size) {
  BitVector v(size);
  for (std::size_t i = 0; i < size; ++i) v.set(i);
  return v;
}

std::size_t rref(std::vector<BitVector>& rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && !rows[piv].get(c)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

std::size_t rank(std::vector<BitVector> rows) { return rref(rows); }

std::vector<BitVector> nullspace(std::vector<BitVector> rows, std::size_t columns) {
  rref(rows);
  std::vector<std::size_t> pivots;
  std::vector<bool> is_pivot(columns, false);
  for (const auto& r : rows) {
    const std::size_t p = r.first_set();
    pivots.push_back(p);
    is_pivot[p] = true;
  }
  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    BitVector v(columns);
    v.set(free);
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (rows[k].get(free)) v.set(pivots[k]);
    basis.push_back(std::move(v));
  }
  rref(basis);
  return basis;
}

BitVector reduce(BitVector v, const std::vector<BitVector>& rref_basis) {
  for (const auto& r : rref_basis)
    if (v.get(r.first_set())) v ^= r;
  return v;
}

std::vector<BitVector> span_members(const std::vector<BitVector>& basis, std::size_t size) {
  if (basis.size() > 30) throw Error(ErrorCode::CapExceeded, "span too large to enumerate");
  std::vector<BitVector> out;
  out.reserve(std::size_t{1} << basis.size());
  BitVector cur(size);
  out.push_back(cur);
  for (std::size_t i = 1; i < (std::size_t{1} << basis.size()); ++i) {
    cur ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
    out.push_back(cur);
  }
  return out;
}

}  // namespace monospec
