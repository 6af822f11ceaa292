#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace lehmer {

// Fixed-size bitset with a runtime bit count.  Downsets of Bruhat order and
// rank layers are stored in these; the embedding search lives on and/andnot
// over them, so everything here stays branch-light and allocation-free after
// construction.
class DynBitset {
public:
  DynBitset() = default;
  explicit DynBitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

  int size() const { return nbits_; }

  void set(int i) {
    assert(i >= 0 && i < nbits_);
    w_[i >> 6] |= uint64_t(1) << (i & 63);
  }
  void reset(int i) {
    assert(i >= 0 && i < nbits_);
    w_[i >> 6] &= ~(uint64_t(1) << (i & 63));
  }
  bool test(int i) const {
    assert(i >= 0 && i < nbits_);
    return (w_[i >> 6] >> (i & 63)) & 1;
  }

  void clear() {
    for (auto& x : w_) x = 0;
  }

  int count() const {
    int c = 0;
    for (uint64_t x : w_) c += __builtin_popcountll(x);
    return c;
  }
  bool any() const {
    for (uint64_t x : w_)
      if (x) return true;
    return false;
  }
  bool none() const { return !any(); }

  DynBitset& operator&=(const DynBitset& o) {
    assert(nbits_ == o.nbits_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    assert(nbits_ == o.nbits_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  // this &= ~o
  DynBitset& andnot(const DynBitset& o) {
    assert(nbits_ == o.nbits_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }

  bool operator==(const DynBitset& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }

  bool intersects(const DynBitset& o) const {
    assert(nbits_ == o.nbits_);
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool is_subset_of(const DynBitset& o) const {
    assert(nbits_ == o.nbits_);
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  // First set bit at position >= from, or -1.
  int next(int from = 0) const {
    if (from >= nbits_) return -1;
    int wi = from >> 6;
    uint64_t cur = w_[wi] & (~uint64_t(0) << (from & 63));
    while (true) {
      if (cur) {
        int bit = (wi << 6) + __builtin_ctzll(cur);
        return bit < nbits_ ? bit : -1;
      }
      if (size_t(++wi) >= w_.size()) return -1;
      cur = w_[wi];
    }
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (size_t wi = 0; wi < w_.size(); ++wi) {
      uint64_t cur = w_[wi];
      while (cur) {
        int bit = int(wi << 6) + __builtin_ctzll(cur);
        fn(bit);
        cur &= cur - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

private:
  int nbits_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace lehmer
