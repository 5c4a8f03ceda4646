#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace polydisc {

/// Non-increasing sequence of positive integers. Stored without zero
/// padding; the padded function view used by the placement count is
/// materialized on demand.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p < 1) throw std::invalid_argument("Partition: parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
  }

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int max_part() const { return parts_.empty() ? 0 : parts_.front(); }

  /// Number of parts equal to value: #mu^{-1}(value).
  int count_value(int value) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), value));
  }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return parts_ != o.parts_; }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < length(); ++i) {
      if (i > 0) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + ")";
  }

 private:
  std::vector<int> parts_;
};

/// (1, 1, ..., 1) with k parts.
inline Partition ones_partition(int k) {
  return Partition(std::vector<int>(static_cast<size_t>(std::max(k, 0)), 1));
}

/// Every part decreased by 1; parts that reach zero are dropped.
inline Partition down1(const Partition& mu) {
  std::vector<int> out;
  for (int p : mu.parts())
    if (p >= 2) out.push_back(p - 1);
  return Partition(std::move(out));
}

/// Parts >= 2 increased by 1; parts equal to 1 are dropped.
inline Partition up1(const Partition& mu) {
  std::vector<int> out;
  for (int p : mu.parts())
    if (p >= 2) out.push_back(p + 1);
  return Partition(std::move(out));
}

/// Multiset union of the parts, re-sorted non-increasing.
inline Partition uplus(const Partition& a, const Partition& b) {
  std::vector<int> out = a.parts();
  out.insert(out.end(), b.parts().begin(), b.parts().end());
  return Partition(std::move(out));
}

/// |aut(mu)| = prod over distinct part values l of (#mu^{-1}(l))!.
inline long long aut_order(const Partition& mu) {
  long long r = 1;
  int run = 1;
  for (int i = 1; i <= mu.length(); ++i) {
    if (i < mu.length() && mu.parts()[i] == mu.parts()[i - 1]) {
      ++run;
      r *= run;  // running product of run! across the run
      continue;
    }
    run = 1;
  }
  return r;
}

/// Number of distinct monic polynomials of shape kappa dividing a fixed
/// polynomial of shape tau: distinct permutations of kappa (zero-padded to
/// |tau|) that fit under tau pointwise. Zero when no placement exists.
inline long long gamma_count(const Partition& kappa, const Partition& tau) {
  const int n = tau.length();
  if (kappa.length() > n) return 0;
  std::vector<int> padded(static_cast<size_t>(n), 0);
  std::copy(kappa.parts().begin(), kappa.parts().end(), padded.begin());
  std::sort(padded.begin(), padded.end());  // ascending for next_permutation
  long long count = 0;
  do {
    bool fits = true;
    for (int i = 0; i < n && fits; ++i) fits = padded[i] <= tau.parts()[i];
    if (fits) ++count;
  } while (std::next_permutation(padded.begin(), padded.end()));
  return count;
}

namespace detail {

/// Enumerate distinct assignments of the parts of mu to |nu| labelled
/// parents, each parent receiving a multiset summing to its nu-part. Equal
/// parts are forced into non-decreasing parent order so every multiset
/// assignment is produced exactly once. The visitor receives the per-parent
/// multisets; returning false stops the enumeration.
inline void for_each_resolution(const Partition& nu, const Partition& mu,
                                const std::function<bool(const std::vector<std::vector<int>>&)>& visit) {
  const int r = nu.length();
  const std::vector<int>& parts = mu.parts();
  std::vector<int> remaining = nu.parts();
  std::vector<std::vector<int>> groups(static_cast<size_t>(r));
  bool stop = false;

  std::function<void(int, int)> rec = [&](int idx, int min_parent) {
    if (stop) return;
    if (idx == static_cast<int>(parts.size())) {
      for (int j = 0; j < r; ++j)
        if (remaining[j] != 0) return;
      if (!visit(groups)) stop = true;
      return;
    }
    const int p = parts[idx];
    const int start = (idx > 0 && parts[idx - 1] == p) ? min_parent : 0;
    for (int j = start; j < r; ++j) {
      if (remaining[j] < p) continue;
      remaining[j] -= p;
      groups[j].push_back(p);
      rec(idx + 1, j);
      groups[j].pop_back();
      remaining[j] += p;
      if (stop) return;
    }
  };
  rec(0, 0);
}

}  // namespace detail

/// True iff nu can be obtained from mu by repeatedly merging groups of
/// parts. Throws on weight mismatch.
inline bool merge_leq(const Partition& nu, const Partition& mu) {
  if (nu.weight() != mu.weight())
    throw std::invalid_argument("merge_leq: partitions must have equal weight");
  bool found = false;
  detail::for_each_resolution(nu, mu, [&](const std::vector<std::vector<int>>&) {
    found = true;
    return false;
  });
  return found;
}

/// One resolution class: for each parent, the multiset of child
/// multiplicities after the drop-simple-and-decrement reduction, plus the
/// resulting exponent (sum of decremented children).
struct ResolutionClass {
  std::vector<std::vector<int>> reduced;  // per parent, sorted descending
  std::vector<int> exponents;             // per parent, sum of reduced parts
};

/// All equivalence classes of mu-resolutions of a nu-shaped divisor after
/// the reduction that drops simple children and decrements the rest.
/// Parents are labelled by position in nu (distinct locations).
inline std::vector<ResolutionClass> res_down1_classes(const Partition& nu, const Partition& mu) {
  if (!merge_leq(nu, mu))
    throw std::invalid_argument("res_down1: nu is not reachable from mu by merging");
  std::set<std::vector<std::vector<int>>> seen;
  std::vector<ResolutionClass> classes;
  detail::for_each_resolution(nu, mu, [&](const std::vector<std::vector<int>>& groups) {
    ResolutionClass rc;
    for (const auto& g : groups) {
      std::vector<int> red;
      int e = 0;
      for (int m : g)
        if (m >= 2) {
          red.push_back(m - 1);
          e += m - 1;
        }
      std::sort(red.begin(), red.end(), std::greater<int>());
      rc.reduced.push_back(std::move(red));
      rc.exponents.push_back(e);
    }
    if (seen.insert(rc.reduced).second) classes.push_back(std::move(rc));
    return true;
  });
  return classes;
}

inline long long res_down1_count(const Partition& nu, const Partition& mu) {
  return static_cast<long long>(res_down1_classes(nu, mu).size());
}

namespace detail {
inline long long factorial_ll(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}
}  // namespace detail

/// Degree of the stratum indexed by mu: r! * (prod mu_i) / |aut(mu)| with
/// r = |mu|. Hooks (k, 1, ..., 1) of weight d give k(d - k + 1).
inline long long stratum_degree(const Partition& mu) {
  if (mu.empty()) return 1;
  long long num = detail::factorial_ll(mu.length());
  for (int p : mu.parts()) num *= p;
  return num / aut_order(mu);
}

struct DualDims {
  int dual_dim;
  int gauss_dim;
};

/// Dimension of the projective dual of the stratum and of its Gauss image:
/// (d - 1 - #mu^{-1}(1), |mu| - #mu^{-1}(1)).
inline DualDims dual_dimensions(const Partition& mu, int d) {
  if (mu.weight() != d)
    throw std::invalid_argument("dual_dimensions: weight of mu must equal d");
  const int ones = mu.count_value(1);
  return {d - 1 - ones, mu.length() - ones};
}

inline long long binomial_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Upper bound on the degree of the projective dual of the stratum:
/// C(|mu| + #mu^{-1}(2), #mu^{-1}(2)) * stratum_degree((mu down 1) + 1_{|mu|}).
inline long long dual_degree_bound(const Partition& mu) {
  const int twos = mu.count_value(2);
  const Partition swept = uplus(down1(mu), ones_partition(mu.length()));
  return binomial_ll(mu.length() + twos, twos) * stratum_degree(swept);
}

/// All partitions of n in lexicographically decreasing order of part lists.
inline std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int max_part) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(rest, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

}  // namespace polydisc
