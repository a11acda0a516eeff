#include <array>
#include <deque>
#include <map>
#include <stdexcept>

#include "framelab/planar.hpp"
#include "planar_internal.hpp"

namespace framelab {

namespace {

int mod12(int v) { return ((v % 12) + 12) % 12; }

// Shortest move sequences from every point of the lattice F_{w,2} component
// to canonical_lattice(w), for window sizes 4 and 5. Moves rotate a pair whose
// squares are antipodal, or all coordinates, by +-pi/6; both preserve the sum
// of squares exactly.
class WindowTable {
 public:
  explicit WindowTable(int w) : w_(w) {
    int states = 1;
    for (int i = 0; i < w; ++i) states *= 12;
    next_.assign(static_cast<size_t>(states), -1);
    move_.assign(static_cast<size_t>(states), {});
    const int target = encode(canonical_lattice(w));
    next_[static_cast<size_t>(target)] = target;
    std::deque<int> queue{target};
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      std::vector<int> m = decode(cur);
      for (const auto& mv : moves_at(m)) {
        std::vector<int> nb = m;
        for (int j : mv.coords) nb[static_cast<size_t>(j)] = mod12(nb[static_cast<size_t>(j)] + mv.units);
        int id = encode(nb);
        if (next_[static_cast<size_t>(id)] >= 0) continue;
        // From nb, the inverse move returns to cur, one step closer to target.
        next_[static_cast<size_t>(id)] = cur;
        move_[static_cast<size_t>(id)] = {mv.coords, -mv.units};
        queue.push_back(id);
      }
    }
  }

  std::vector<RotationMove> path(const std::vector<int>& m) const {
    int cur = encode(m);
    if (next_[static_cast<size_t>(cur)] < 0) throw NumericalRefusal("fiber element unreachable");
    std::vector<RotationMove> out;
    while (next_[static_cast<size_t>(cur)] != cur) {
      const RotationMove& mv = move_[static_cast<size_t>(cur)];
      if (!out.empty() && out.back().coords == mv.coords && (out.back().units > 0) == (mv.units > 0))
        out.back().units += mv.units;
      else
        out.push_back(mv);
      cur = next_[static_cast<size_t>(cur)];
    }
    return out;
  }

 private:
  int encode(const std::vector<int>& m) const {
    int id = 0;
    for (int j = w_ - 1; j >= 0; --j) id = id * 12 + mod12(m[static_cast<size_t>(j)]);
    return id;
  }
  std::vector<int> decode(int id) const {
    std::vector<int> m(static_cast<size_t>(w_));
    for (int j = 0; j < w_; ++j) {
      m[static_cast<size_t>(j)] = id % 12;
      id /= 12;
    }
    return m;
  }
  std::vector<RotationMove> moves_at(const std::vector<int>& m) const {
    std::vector<RotationMove> out;
    for (int a = 0; a < w_; ++a)
      for (int b = a + 1; b < w_; ++b)
        if (mod12(m[static_cast<size_t>(a)] - m[static_cast<size_t>(b)]) % 6 == 3)
          for (int d : {1, -1}) out.push_back({{a, b}, d});
    std::vector<int> all(static_cast<size_t>(w_));
    for (int j = 0; j < w_; ++j) all[static_cast<size_t>(j)] = j;
    for (int d : {1, -1}) out.push_back({all, d});
    return out;
  }

  int w_;
  std::vector<int> next_;
  std::vector<RotationMove> move_;
};

const WindowTable& table(int w) {
  static const WindowTable t4(4);
  static const WindowTable t5(5);
  return w == 4 ? t4 : t5;
}

std::vector<RotationMove> window_path(const std::vector<int>& local) {
  if (local.size() == 4) {
    // a = (1,-i,1,-i): use the reversed Case I homotopy.
    const std::vector<int> a{0, 9, 0, 9};
    bool is_a = true;
    for (size_t j = 0; j < 4; ++j) is_a = is_a && mod12(local[j]) == a[j];
    if (is_a) {
      auto legs = case1_moves();
      std::vector<RotationMove> out;
      for (auto it = legs.rbegin(); it != legs.rend(); ++it) out.push_back({it->coords, -it->units});
      return out;
    }
  }
  return table(static_cast<int>(local.size())).path(local);
}

}  // namespace

std::vector<RotationMove> case1_moves() {
  // (e^{it}, i e^{it}, 1, i) then coordinates 1 and 4 together, t in [0, pi].
  return {{{0, 1}, 6}, {{0, 3}, 6}};
}

std::vector<RotationMove> case3_moves() {
  return {{{2, 4}, 2}, {{0, 4}, 8}, {{1, 4}, 1}, {{1, 2}, 3}, {{2, 4}, 7}};
}

std::vector<RotationMove> fiber_moves_to_canonical(const std::vector<int>& m0) {
  const int k = static_cast<int>(m0.size());
  const std::vector<int> b = canonical_lattice(k);
  for (int j = 0; j < k; ++j)
    if (mod12(m0[static_cast<size_t>(j)] - b[static_cast<size_t>(j)]) % 6 != 0)
      throw InvalidInput("fiber_moves_to_canonical: point is not over the standard chain");

  std::vector<int> m = m0;
  std::vector<RotationMove> out;
  auto run_window = [&](const std::vector<int>& coords) {
    std::vector<int> local;
    for (int c : coords) local.push_back(m[static_cast<size_t>(c)]);
    for (auto mv : window_path(local)) {
      for (auto& c : mv.coords) c = coords[static_cast<size_t>(c)];
      for (int c : mv.coords) m[static_cast<size_t>(c)] += mv.units;
      out.push_back(std::move(mv));
    }
  };
  if (k % 2 == 0) {
    for (int j = 0; j + 3 < k; j += 2) run_window({j, j + 1, j + 2, j + 3});
  } else {
    run_window({0, 1, 2, 3, 4});
    for (int j = 5; j + 1 < k; j += 2) run_window({0, 1, 2, j, j + 1});
  }
  return out;
}

}  // namespace framelab
