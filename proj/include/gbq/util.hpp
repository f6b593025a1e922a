#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace gbq {

// Pairwise (cascade) summation over a fixed index order. Error grows like
// O(log n) in ulps instead of O(n), and the recursion tree depends only on
// the range, never on thread count, so totals are bit-stable.
inline double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& x) {
  return pairwise_sum(x.data(), x.size());
}

// Thread cap: GBQ_THREADS when set, else hardware concurrency.
inline int thread_cap() {
  static const int cap = [] {
    if (const char* s = std::getenv("GBQ_THREADS")) {
      const int v = std::atoi(s);
      if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
  }();
  return cap;
}

namespace detail {
inline constexpr std::size_t kChunk = 2048;  // fixed work-chunk size

template <class Body>
void run_chunked(std::size_t n, const Body& body) {
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  const int nt = std::min<std::size_t>(thread_cap(), nchunks);
  if (nt <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c)
      body(c, c * kChunk, std::min(n, (c + 1) * kChunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      body(c, c * kChunk, std::min(n, (c + 1) * kChunk));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nt - 1);
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}
}  // namespace detail

// Parallel map over [0, n). fn must be safe to call concurrently for
// distinct indices.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  detail::run_chunked(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) fn(i);
  });
}

// Sum of fn(i) over [0, n). Chunk boundaries are fixed, per-chunk partials
// are pairwise-summed and combined in chunk order: independent of threads.
inline double deterministic_sum(std::size_t n, const std::function<double(std::size_t)>& fn) {
  const std::size_t nchunks = (n + detail::kChunk - 1) / detail::kChunk;
  std::vector<double> partial(nchunks, 0.0);
  detail::run_chunked(n, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    std::array<double, detail::kChunk> buf;
    std::size_t m = 0;
    for (std::size_t i = lo; i < hi; ++i) buf[m++] = fn(i);
    partial[c] = pairwise_sum(buf.data(), m);
  });
  return pairwise_sum(partial);
}

// Max of fn(i) over [0, n); deterministic for the same reason.
inline double deterministic_max(std::size_t n, const std::function<double(std::size_t)>& fn) {
  if (n == 0) throw std::invalid_argument("deterministic_max: empty range");
  const std::size_t nchunks = (n + detail::kChunk - 1) / detail::kChunk;
  std::vector<double> partial(nchunks, 0.0);
  detail::run_chunked(n, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    double m = fn(lo);
    for (std::size_t i = lo + 1; i < hi; ++i) m = std::max(m, fn(i));
    partial[c] = m;
  });
  double m = partial[0];
  for (std::size_t c = 1; c < nchunks; ++c) m = std::max(m, partial[c]);
  return m;
}

// All permutations of {0..r-1} with parities, cached per r. Used by the
// generalized-delta contractions; r never exceeds 2k+1 <= 7 at desk scale.
struct PermTable {
  std::vector<std::array<int, 8>> perm;
  std::vector<int> sign;
};

inline const PermTable& permutations(int r) {
  static std::array<PermTable, 8> cache = [] {
    std::array<PermTable, 8> all;
    for (int r = 0; r <= 7; ++r) {
      std::array<int, 8> p{};
      std::vector<int> idx(r);
      std::iota(idx.begin(), idx.end(), 0);
      PermTable& tab = all[r];
      do {
        for (int i = 0; i < r; ++i) p[i] = idx[i];
        int inv = 0;
        for (int i = 0; i < r; ++i)
          for (int j = i + 1; j < r; ++j)
            if (idx[i] > idx[j]) ++inv;
        tab.perm.push_back(p);
        tab.sign.push_back(inv % 2 == 0 ? 1 : -1);
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
    return all;
  }();
  if (r < 0 || r > 7) throw std::invalid_argument("permutations: order out of range");
  return cache[r];
}

// Deterministic uniform variates. mt19937_64 has a standardized sequence and
// the (x >> 11) * 2^-53 mapping avoids distribution objects, whose output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ull + 1) {}

  double uniform() {  // in [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::uint64_t next() {
    // splitmix64; standardized constants, stable across platforms
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

namespace detail {

template <typename F>
double adaptive_simpson_rec(F&& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b]. Handles a > b by sign flip.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-10) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return sign * detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace gbq
