#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "dstab/errors.hpp"

namespace dstab {

// Maximum matrix dimension supported by the subset machinery.
inline constexpr int kMaxDim = 16;

// Subset of index labels {1, ..., n} stored as a bitmask (label i <-> bit
// i-1).  Labels are 1-based throughout, matching the way principal minors
// and pivots are written in the stability literature.
class IndexSet {
 public:
  IndexSet() : n_(0), bits_(0) {}
  IndexSet(int n, std::uint32_t bits) : n_(n), bits_(bits) {
    check_dim(n);
    if (n < kMaxDim && (bits >> n) != 0) {
      throw DimensionError("bitmask exceeds ambient dimension");
    }
  }

  static IndexSet empty(int n) { return IndexSet(n, 0); }
  static IndexSet full(int n) {
    check_dim(n);
    return IndexSet(n, n == 0 ? 0u : (std::uint32_t{1} << n) - 1u);
  }
  static IndexSet of(int n, std::initializer_list<int> labels) {
    IndexSet s = empty(n);
    for (int i : labels) s = s.with(i);
    return s;
  }
  static IndexSet of(int n, const std::vector<int>& labels) {
    IndexSet s = empty(n);
    for (int i : labels) s = s.with(i);
    return s;
  }

  int ambient() const { return n_; }
  std::uint32_t mask() const { return bits_; }
  int count() const { return __builtin_popcount(bits_); }
  bool is_empty() const { return bits_ == 0; }

  bool contains(int label) const {
    check_label(label);
    return (bits_ >> (label - 1)) & 1u;
  }

  IndexSet with(int label) const {
    check_label(label);
    return IndexSet(n_, bits_ | (std::uint32_t{1} << (label - 1)));
  }
  IndexSet without(int label) const {
    check_label(label);
    return IndexSet(n_, bits_ & ~(std::uint32_t{1} << (label - 1)));
  }
  IndexSet complement() const { return IndexSet(n_, full(n_).mask() & ~bits_); }

  bool subset_of(const IndexSet& o) const { return (bits_ & ~o.bits_) == 0; }

  friend IndexSet operator|(const IndexSet& a, const IndexSet& b) {
    return IndexSet(a.n_, a.bits_ | b.bits_);
  }
  friend IndexSet operator&(const IndexSet& a, const IndexSet& b) {
    return IndexSet(a.n_, a.bits_ & b.bits_);
  }
  // Set difference a \ b.
  friend IndexSet operator-(const IndexSet& a, const IndexSet& b) {
    return IndexSet(a.n_, a.bits_ & ~b.bits_);
  }

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const IndexSet& a, const IndexSet& b) {
    return !(a == b);
  }
  // Orders by cardinality, then by ascending label tuple; a deterministic
  // total order used for witnesses and enumeration.
  friend bool operator<(const IndexSet& a, const IndexSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a.tuple_key() < b.tuple_key();
  }

  // Ascending 1-based labels.
  std::vector<int> labels() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (int i = 1; i <= n_; ++i) {
      if ((bits_ >> (i - 1)) & 1u) out.push_back(i);
    }
    return out;
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (int i : labels()) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
    return s + "}";
  }

 private:
  static void check_dim(int n) {
    if (n < 0 || n > kMaxDim) {
      throw DimensionError("ambient dimension out of range: " + std::to_string(n));
    }
  }
  void check_label(int label) const {
    if (label < 1 || label > n_) {
      throw DimensionError("index label out of range: " + std::to_string(label));
    }
  }
  // Lexicographic key over the ascending label tuple: smaller labels first.
  std::uint64_t tuple_key() const {
    std::uint64_t key = 0;
    for (int i : labels()) key = key * 32 + static_cast<std::uint64_t>(i);
    // Pad so that prefix tuples of equal length compare correctly; equal
    // cardinality means equal length, so plain base-32 packing suffices.
    return key;
  }

  int n_;
  std::uint32_t bits_;
};

// Visits every subset of `sup` (including the empty set and `sup` itself) in
// ascending bitmask order.
template <typename Fn>
void for_each_subset(const IndexSet& sup, Fn&& fn) {
  const std::uint32_t m = sup.mask();
  std::uint32_t sub = 0;
  while (true) {
    fn(IndexSet(sup.ambient(), sub));
    if (sub == m) break;
    sub = (sub - m) & m;  // next subset of m in ascending order
  }
}

}  // namespace dstab
