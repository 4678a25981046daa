#include "drh/solution.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace drh {

namespace {

Q double_factorial(int n) {  // n!! with (-1)!! = 1
  Q r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

using Key = std::pair<int, std::vector<int>>;

class Dvv {
public:
  Q get(int g, std::vector<int> d) {
    if (g < 0) return 0;
    int n = int(d.size());
    if (2 * g - 2 + n <= 0) return 0;
    for (int x : d)
      if (x < 0) return 0;
    int s = 0;
    for (int x : d) s += x;
    if (s != 3 * g - 3 + n) return 0;
    std::sort(d.begin(), d.end(), std::greater<>());
    Key key{g, d};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Q v = compute(g, d);
    memo_.emplace(std::move(key), v);
    return v;
  }

private:
  Q compute(int g, const std::vector<int>& d) {
    if (g == 0 && d == std::vector<int>{0, 0, 0}) return 1;
    if (g == 1 && d == std::vector<int>{1}) return Q(1, 24);
    if (d.empty() || d.front() == 0) return 0;
    int k = d.front() - 1;
    std::vector<int> rest(d.begin() + 1, d.end());
    Q acc = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      std::vector<int> nd = rest;
      nd[j] = rest[j] + k;
      acc += double_factorial(2 * k + 2 * rest[j] + 1) / double_factorial(2 * rest[j] - 1) * get(g, nd);
    }
    for (int r = 0; r <= k - 1; ++r) {
      int s = k - 1 - r;
      Q w = double_factorial(2 * r + 1) * double_factorial(2 * s + 1) / 2;
      std::vector<int> nd = rest;
      nd.push_back(r);
      nd.push_back(s);
      acc += w * get(g - 1, nd);
      // splittings of the remaining points between two components
      std::size_t m = rest.size();
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> a{r}, b{s};
        for (std::size_t i = 0; i < m; ++i) (mask >> i & 1 ? a : b).push_back(rest[i]);
        for (int g1 = 0; g1 <= g; ++g1) {
          Q x = get(g1, a);
          if (x == 0) continue;
          acc += w * x * get(g - g1, b);
        }
      }
    }
    return acc / double_factorial(2 * k + 3);
  }

  std::map<Key, Q> memo_;
};

Dvv& oracle() {
  static Dvv d;
  return d;
}

void enumerate(int max_points, int max_sum, int start, std::vector<int>& cur,
               const std::function<void(const std::vector<int>&)>& f) {
  f(cur);
  if (int(cur.size()) >= max_points) return;
  for (int x = start; x >= 0; --x) {
    if (x > max_sum) continue;
    cur.push_back(x);
    enumerate(max_points, max_sum - x, x, cur, f);
    cur.pop_back();
  }
}

}  // namespace

Q wk_number(int genus, std::vector<int> d) { return oracle().get(genus, std::move(d)); }

PotentialSeries wk_correlators(const SeriesCaps& caps) {
  PotentialSeries F(Ring::make(1), caps);
  std::vector<int> cur;
  enumerate(caps.points, caps.dsum, caps.dsum, cur, [&](const std::vector<int>& d) {
    for (int g = 0; g <= caps.genus; ++g) {
      Q v = wk_number(g, d);
      if (v == 0) continue;
      std::vector<Index> pts;
      for (int x : d) pts.push_back({1, x});
      F.add_correlator(g, pts, v);
    }
  });
  return F;
}

}  // namespace drh
