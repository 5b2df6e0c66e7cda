#pragma once

// Sets of positive integers without three-term arithmetic progressions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "errors.hpp"

namespace reconfig {

struct APSet {
  std::vector<std::int64_t> elements;  // strictly increasing
  std::int64_t universe_bound = 0;     // elements lie in [1, universe_bound]
  std::string method;                  // exact | behrend | greedy | affine | odd
  std::map<std::string, std::int64_t> params;

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
  std::int64_t max() const { return elements.empty() ? 0 : elements.back(); }
};

/// True iff no s1 < s2 < s3 in `s` with s2 - s1 == s3 - s2. Input need not be sorted.
inline bool is_3ap_free(std::vector<std::int64_t> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.size() < 3) return true;
  std::unordered_set<std::int64_t> members(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (members.contains(2 * s[j] - s[i])) return false;
  return true;
}

inline bool is_3ap_free(const APSet& s) { return is_3ap_free(s.elements); }

constexpr std::int64_t kMax3apFreeLimit = 40;

namespace detail {

// Branch and bound over x = 1..n, include-branch first, so the first
// maximum found is the lexicographically smallest maximiser. `bounds[m]`
// holds the optimum for intervals of length m (computed bottom-up).
class Max3apSearch {
 public:
  Max3apSearch(int n, const std::vector<int>& bounds) : n_(n), bounds_(bounds) {}

  std::vector<std::int64_t> run() {
    rec(1, 0);
    return best_;
  }

 private:
  void rec(int x, std::uint64_t forbidden) {
    const int size = static_cast<int>(cur_.size());
    if (x > n_) {
      if (size > static_cast<int>(best_.size())) best_ = cur_;
      return;
    }
    if (size + bounds_[static_cast<std::size_t>(n_ - x + 1)] <= static_cast<int>(best_.size())) return;
    if (!((forbidden >> x) & 1u)) {
      std::uint64_t next = forbidden;
      for (auto y : cur_) {
        const auto z = 2 * x - y;
        if (z <= n_) next |= std::uint64_t{1} << z;
      }
      cur_.push_back(x);
      rec(x + 1, next);
      cur_.pop_back();
    }
    rec(x + 1, forbidden);
  }

  int n_;
  const std::vector<int>& bounds_;
  std::vector<std::int64_t> cur_;
  std::vector<std::int64_t> best_;
};

}  // namespace detail

/// Lexicographically smallest maximum-size 3-AP-free subset of [1, n].
inline APSet max_3ap_free(std::int64_t n, std::int64_t limit = kMax3apFreeLimit) {
  if (n > limit || n > 62)
    throw precondition_error("max_3ap_free: n=" + std::to_string(n) + " exceeds limit " + std::to_string(limit));
  APSet out;
  out.universe_bound = std::max<std::int64_t>(n, 0);
  out.method = "exact";
  if (n <= 0) return out;
  std::vector<int> bounds(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::int64_t> best;
  for (int m = 1; m <= n; ++m) {
    // Upper bound for length m while solving m itself: previous optimum + 1.
    bounds[static_cast<std::size_t>(m)] = bounds[static_cast<std::size_t>(m - 1)] + 1;
    best = detail::Max3apSearch(m, bounds).run();
    bounds[static_cast<std::size_t>(m)] = static_cast<int>(best.size());
  }
  out.elements = std::move(best);
  return out;
}

/// Greedy baseline: scan 1..n and keep x unless it completes a progression.
inline APSet greedy_3ap_free(std::int64_t n) {
  APSet out;
  out.universe_bound = std::max<std::int64_t>(n, 0);
  out.method = "greedy";
  if (n <= 0) return out;
  std::vector<char> forbidden(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t x = 1; x <= n; ++x) {
    if (forbidden[static_cast<std::size_t>(x)]) continue;
    for (auto y : out.elements) {
      const auto z = 2 * x - y;
      if (z <= n) forbidden[static_cast<std::size_t>(z)] = 1;
    }
    out.elements.push_back(x);
  }
  return out;
}

namespace detail {

// Number of integers in [0, t) whose base-3 digits are all 0 or 1.
inline std::int64_t count_binary_ternary_below(std::int64_t t) {
  if (t <= 0) return 0;
  std::vector<int> digits;
  for (auto x = t; x > 0; x /= 3) digits.push_back(static_cast<int>(x % 3));
  std::int64_t count = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    const std::int64_t below = std::int64_t{1} << i;  // free choices for lower digits
    if (digits[i] == 0) continue;
    count += below;  // this digit 0
    if (digits[i] == 2) return count + below;  // this digit 1, rest free
    // digit is 1: continue with this digit fixed to 1
  }
  return count;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace detail

/**
 * Behrend-style set: values v = w + 3^cube * u with
 *  - u written in base 2h-1 with `sphere` digits, each in [0, h), all digit
 *    vectors of one fixed squared norm (a sphere, hence no three collinear);
 *  - w written in base 3 with `cube` digits in {0, 1}.
 * Digit sums never carry, so x + z = 2y forces equality digit by digit and
 * the set v + 1 (v <= n - 1) is 3-AP-free. The sweep keeps the largest
 * shell over (sphere, h, cube); sphere = 0 degenerates to the ternary cube.
 */
inline APSet behrend_set(std::int64_t n) {
  if (n < 1) throw precondition_error("behrend_set: n must be >= 1");
  struct Choice {
    std::int64_t size = -1;
    int sphere = 0, h = 2, cube = 0;
    std::int64_t radius = 0;
  } best;

  for (int cube = 0; detail::ipow(3, cube) <= 3 * n; ++cube) {
    const std::int64_t low = detail::ipow(3, cube);
    const std::int64_t cube_size = std::int64_t{1} << cube;
    const std::int64_t max_u = (n - 1) / low;
    auto fit = [&](std::int64_t u) {
      const std::int64_t lim = n - u * low;  // w in [0, lim)
      return lim >= low ? cube_size : detail::count_binary_ternary_below(lim);
    };
    // sphere = 0: only u = 0.
    {
      const auto s = fit(0);
      if (s > best.size) best = {s, 0, 2, cube, 0};
    }
    for (int sphere = 1; sphere <= 24; ++sphere) {
      std::vector<std::int64_t> hs;
      for (std::int64_t h = 2; h <= 128; ++h) hs.push_back(h);
      for (double h = 128 * 1.08; h < 1e7; h *= 1.08) hs.push_back(static_cast<std::int64_t>(h));
      bool any = false;
      for (auto h : hs) {
        const std::int64_t base = 2 * h - 1;
        if (detail::ipow(base, sphere - 1) > max_u) break;
        any = true;
        std::map<std::int64_t, std::int64_t> shells;
        for (std::int64_t u = 0; u <= max_u; ++u) {
          std::int64_t y = u, r = 0;
          bool ok = true;
          for (int i = 0; i < sphere; ++i) {
            const auto d = y % base;
            y /= base;
            if (d >= h) {
              ok = false;
              break;
            }
            r += d * d;
          }
          if (!ok || y != 0) continue;
          shells[r] += fit(u);
        }
        for (const auto& [r, s] : shells)
          if (s > best.size) best = {s, sphere, static_cast<int>(h), cube, r};
      }
      if (!any) break;
    }
  }

  APSet out;
  out.universe_bound = n;
  out.method = "behrend";
  out.params = {{"sphere_dims", best.sphere},
                {"digit_bound", best.h},
                {"base", 2 * best.h - 1},
                {"cube_dims", best.cube},
                {"radius_sq", best.radius}};
  const std::int64_t low = detail::ipow(3, best.cube);
  const std::int64_t base = 2 * best.h - 1;
  const std::int64_t max_u = (n - 1) / low;
  for (std::int64_t u = 0; u <= max_u; ++u) {
    std::int64_t y = u, r = 0;
    bool ok = true;
    for (int i = 0; i < best.sphere; ++i) {
      const auto d = y % base;
      y /= base;
      if (d >= best.h) {
        ok = false;
        break;
      }
      r += d * d;
    }
    if (!ok || y != 0 || r != best.radius) continue;
    for (std::int64_t w = 0; w < low && u * low + w <= n - 1; ++w) {
      bool binary = true;
      for (auto t = w; t > 0; t /= 3)
        if (t % 3 == 2) {
          binary = false;
          break;
        }
      if (binary) out.elements.push_back(u * low + w + 1);
    }
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

/// {a*x + b : x in s}. Requires a >= 1; positive output elements are the
/// caller's concern (b may be negative).
inline APSet affine_transform(const APSet& s, std::int64_t a, std::int64_t b) {
  if (a < 1) throw precondition_error("affine_transform: multiplier must be >= 1, got " + std::to_string(a));
  APSet out;
  out.method = "affine";
  out.params = s.params;
  out.params["multiplier"] = a;
  out.params["offset"] = b;
  for (auto x : s.elements) out.elements.push_back(a * x + b);
  out.universe_bound = a * s.universe_bound + b;
  return out;
}

/// Largest 3-AP-free subset of [1, n] available: exact up to the exact
/// limit, otherwise the larger of the Behrend sweep and the greedy set.
inline APSet best_3ap_free(std::int64_t n) {
  if (n <= kMax3apFreeLimit) return max_3ap_free(n);
  auto b = behrend_set(n);
  auto g = greedy_3ap_free(n);
  return b.size() >= g.size() ? b : g;
}

/// 3-AP-free subset of [1, n] whose elements are all 1 mod `residue_mod`
/// (4 or 8): the image x -> mod*(x-1)+1 of the best set in [1, m],
/// m = floor((n-1)/mod) + 1.
inline APSet odd_3ap_free(std::int64_t n, std::int64_t residue_mod) {
  if (residue_mod != 4 && residue_mod != 8)
    throw precondition_error("odd_3ap_free: residue modulus must be 4 or 8");
  APSet out;
  out.universe_bound = std::max<std::int64_t>(n, 0);
  out.method = "odd";
  out.params = {{"residue_mod", residue_mod}};
  if (n < 1) return out;
  const std::int64_t m = (n - 1) / residue_mod + 1;
  auto base = best_3ap_free(m);
  auto img = affine_transform(base, residue_mod, 1 - residue_mod);
  out.elements = std::move(img.elements);
  out.params["base_bound"] = m;
  out.params["base_size"] = static_cast<std::int64_t>(base.size());
  out.params["base_exact"] = base.method == "exact" ? 1 : 0;
  return out;
}

}  // namespace reconfig
