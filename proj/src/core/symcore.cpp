#include "rmtac/symcore.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace rmtac {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    require(parts_[i] >= 0, "partition parts must be nonnegative");
    require(i == 0 || parts_[i - 1] >= parts_[i], "partition parts must be weakly decreasing");
  }
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::nonzero_parts() const {
  return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int p) { return p > 0; }));
}

Partition Partition::with_length(std::size_t len) const {
  require(static_cast<std::size_t>(nonzero_parts()) <= len, "partition has more nonzero parts than requested length");
  std::vector<int> p(parts_.begin(), parts_.begin() + std::min(len, parts_.size()));
  p.resize(len, 0);
  return Partition(std::move(p));
}

template <class C>
C vandermonde(std::span<const C> points) {
  C prod(1);
  for (std::size_t j = 0; j < points.size(); ++j)
    for (std::size_t k = j + 1; k < points.size(); ++k) prod *= points[k] - points[j];
  return prod;
}

template <class C>
bool near_confluent(std::span<const C> points) {
  double scale = 1.0;
  for (const C& p : points) scale = std::max(scale, magnitude(p));
  for (std::size_t j = 0; j < points.size(); ++j)
    for (std::size_t k = j + 1; k < points.size(); ++k)
      if (magnitude(C(points[k] - points[j])) < kSeparationThreshold * scale) return true;
  return false;
}

template <class C>
C schur_bialternant(const Partition& mu, std::span<const C> points) {
  const std::size_t n = points.size();
  require(mu.length() == n, "partition length must equal the number of points");
  if (near_confluent(points))
    throw RouteError(ErrorKind::NearConfluent, "points too close for the bialternant quotient");
  std::vector<C> num(n * n), den(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const long long shift = static_cast<long long>(n - 1 - j);
      num[i * n + j] = ipow(points[i], mu[j] + shift);
      den[i * n + j] = ipow(points[i], shift);
    }
  }
  return determinant(std::move(num), n) / determinant(std::move(den), n);
}

template <class C>
std::vector<C> complete_homogeneous(std::span<const C> points, int degree) {
  std::vector<C> h(static_cast<std::size_t>(std::max(degree, 0)) + 1, C(0));
  h[0] = C(1);
  for (const C& x : points)
    for (std::size_t k = 1; k < h.size(); ++k) h[k] += x * h[k - 1];
  return h;
}

template <class C>
C schur_stable(const Partition& mu, std::span<const C> points) {
  require(mu.length() == points.size(), "partition length must equal the number of points");
  const int rows = mu.nonzero_parts();
  if (rows == 0) return C(1);
  const int top = mu[0] + rows - 1;
  const std::vector<C> h = complete_homogeneous(points, top);
  const auto n = static_cast<std::size_t>(rows);
  std::vector<C> m(n * n, C(0));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < rows; ++j) {
      const int idx = mu[static_cast<std::size_t>(i)] - i + j;
      if (idx >= 0) m[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = h[static_cast<std::size_t>(idx)];
    }
  }
  return determinant(std::move(m), n);
}

std::vector<SplitPermutation> split_permutations(int n, int m) {
  require(n >= 0 && m >= 0 && m <= n, "split permutation needs 0 <= m <= n");
  std::vector<SplitPermutation> out;
  std::vector<int> left(static_cast<std::size_t>(m));
  std::iota(left.begin(), left.end(), 0);
  while (true) {
    SplitPermutation sp;
    sp.left = left;
    std::vector<bool> in_left(static_cast<std::size_t>(n), false);
    for (int l : left) in_left[static_cast<std::size_t>(l)] = true;
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      if (!in_left[static_cast<std::size_t>(i)]) {
        sp.right.push_back(i);
        // every left element larger than i precedes it in the word
        for (int l : left) inversions += (l > i) ? 1 : 0;
      }
    }
    sp.sign = (inversions % 2 == 0) ? 1 : -1;
    out.push_back(std::move(sp));

    // next m-combination of {0..n-1} in lexicographic order
    int i = m - 1;
    while (i >= 0 && left[static_cast<std::size_t>(i)] == n - m + i) --i;
    if (i < 0) break;
    ++left[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) left[static_cast<std::size_t>(j)] = left[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::vector<Partition> bounded_partitions(int max_length, int max_part) {
  require(max_length >= 0 && max_part >= 0, "partition bounds must be nonnegative");
  std::vector<Partition> out;
  std::vector<int> cur(static_cast<std::size_t>(max_length), 0);
  std::function<void(int, int)> rec = [&](int pos, int cap) {
    if (pos == max_length) {
      out.emplace_back(cur);
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, max_part);
  return out;
}

std::vector<Partition> even_partitions(int k, int max_part) {
  require(k >= 0, "partition length must be nonnegative");
  require(max_part >= 0 && max_part % 2 == 0, "max_part must be an even nonnegative integer");
  std::vector<Partition> out;
  for (const Partition& p : bounded_partitions(k, max_part / 2)) {
    std::vector<int> doubled = p.parts();
    for (int& v : doubled) v *= 2;
    out.emplace_back(std::move(doubled));
  }
  return out;
}

Partition conjugate(const Partition& lambda) {
  const int width = lambda.length() == 0 ? 0 : lambda[0];
  std::vector<int> out(static_cast<std::size_t>(width), 0);
  for (int part : lambda.parts())
    for (int i = 0; i < part; ++i) ++out[static_cast<std::size_t>(i)];
  return Partition(std::move(out));
}

namespace {

enum class Slot { Zero, Pair, Top };

// Places the slots left to right with strictly increasing indices in [0, top];
// a Pair occupies two consecutive indices.
void place_slots(const std::vector<Slot>& slots, int top, std::set<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t s, int next_free) {
    if (s == slots.size()) {
      out.insert(cur);
      return;
    }
    switch (slots[s]) {
      case Slot::Zero:
        if (next_free > 0) return;
        cur.push_back(0);
        rec(s + 1, 1);
        cur.pop_back();
        break;
      case Slot::Top:
        if (next_free > top) return;
        cur.push_back(top);
        rec(s + 1, top + 1);
        cur.pop_back();
        break;
      case Slot::Pair:
        for (int i = next_free; i + 1 <= top; ++i) {
          cur.push_back(i);
          cur.push_back(i + 1);
          rec(s + 1, i + 2);
          cur.pop_back();
          cur.pop_back();
        }
        break;
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<std::vector<int>> paired_index_sets(bool leading_zero, int pairs, bool trailing_top, int top) {
  require(pairs >= 0 && top >= 0, "paired index sets need pairs >= 0 and top >= 0");
  std::vector<Slot> slots;
  if (leading_zero) slots.push_back(Slot::Zero);
  slots.insert(slots.end(), static_cast<std::size_t>(pairs), Slot::Pair);
  if (trailing_top) slots.push_back(Slot::Top);
  std::set<std::vector<int>> sets;
  place_slots(slots, top, sets);
  return {sets.begin(), sets.end()};
}

std::vector<std::vector<int>> so_index_sets(int k, int N) {
  require(k >= 1 && N >= 1, "so_index_sets needs k >= 1 and N >= 1");
  const int top = 2 * N + k - 1;
  std::vector<Slot> a, b;
  if (k % 2 == 0) {
    // i_1 = 0, (i_2,i_3), ..., (i_{k-2},i_{k-1}) paired, i_k = top
    a.push_back(Slot::Zero);
    a.insert(a.end(), static_cast<std::size_t>((k - 2) / 2), Slot::Pair);
    a.push_back(Slot::Top);
    b.assign(static_cast<std::size_t>(k / 2), Slot::Pair);
  } else {
    a.push_back(Slot::Zero);
    a.insert(a.end(), static_cast<std::size_t>((k - 1) / 2), Slot::Pair);
    b.assign(static_cast<std::size_t>((k - 1) / 2), Slot::Pair);
    b.push_back(Slot::Top);
  }
  std::set<std::vector<int>> sets;
  place_slots(a, top, sets);
  place_slots(b, top, sets);
  return {sets.begin(), sets.end()};
}

std::vector<std::vector<int>> sp_index_sets(int k, int N) {
  require(k >= 1 && N >= 0, "sp_index_sets needs k >= 1 and N >= 0");
  const int top = 2 * N + k - 1;
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int j, int next) {
    if (j == k) {
      out.push_back(cur);
      return;
    }
    int start = next;
    if ((start - j) % 2 != 0) ++start;  // i_j = j (mod 2), 0-based j
    for (int i = start; i <= top; i += 2) {
      cur.push_back(i);
      rec(j + 1, i + 1);
      cur.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

template <class C>
C alternant_sum(const std::vector<std::vector<int>>& index_sets, std::span<const C> points) {
  const std::size_t k = points.size();
  if (near_confluent(points))
    throw RouteError(ErrorKind::NearConfluent, "points too close for the Vandermonde quotient");
  C total(0);
  std::vector<C> m(k * k);
  for (const auto& idx : index_sets) {
    require(idx.size() == k, "index vector length must equal the number of points");
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = 0; q < k; ++q) m[p * k + q] = ipow(points[p], idx[q]);
    total += determinant(m, k);
  }
  return total / vandermonde(points);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

#define RMTAC_INSTANTIATE(C)                                                              \
  template C vandermonde<C>(std::span<const C>);                                          \
  template bool near_confluent<C>(std::span<const C>);                                    \
  template C schur_bialternant<C>(const Partition&, std::span<const C>);                  \
  template C schur_stable<C>(const Partition&, std::span<const C>);                       \
  template std::vector<C> complete_homogeneous<C>(std::span<const C>, int);               \
  template C alternant_sum<C>(const std::vector<std::vector<int>>&, std::span<const C>);

RMTAC_INSTANTIATE(Cd)
RMTAC_INSTANTIATE(MpComplex)
#undef RMTAC_INSTANTIATE

}  // namespace rmtac
