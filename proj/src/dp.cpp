#include "nfold/dp.hpp"

#include <cassert>
#include <unordered_map>

namespace nfold {

i64 dp_layer_size_bound(i64 t, i64 r, i64 delta, i64 g) {
  if (t < 1 || r < 1 || delta < 1 || g < 1)
    throw std::invalid_argument("dp_layer_size_bound: arguments must be >= 1");
  i64 width = checked_add(checked_mul(2, g), 1);
  i64 hb = checked_mul(width, width);
  i64 sig = checked_add(1, checked_mul(4, checked_mul(delta, g)));
  return checked_mul(hb, checked_pow(sig, r));
}

namespace {

// One materialized vertex of the layered graph. Only vertices reachable
// from the source exist; they are keyed by (h, beta, sigma) within their
// layer. pred indexes into the previous layer's vertex vector.
struct State {
  i64 h;
  i64 beta;
  std::vector<i64> sigma;
  i64 weight;
  int pred;
};

struct KeyHash {
  std::size_t operator()(const std::vector<i64>& k) const {
    std::size_t h = 1469598103934665603ull;
    for (i64 v : k) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

std::optional<BestStep> find_best_step(const CombNFoldInstance& inst, const Point& x, i64 alpha,
                                       i64 g) {
  if (alpha < 1) throw std::invalid_argument("find_best_step: alpha must be >= 1");
  if (g < 1) throw std::invalid_argument("find_best_step: radius must be >= 1");
  const i64 n = inst.n;
  const i64 t = inst.t();
  const i64 r = inst.r();
  const i64 sigma_cap = checked_mul(2, checked_mul(inst.bimatrix.delta(), g));

  // Layers are processed in the fixed order (1,1), ..., (n,t). The virtual
  // source behaves like a brick-final vertex with beta = 0 and sigma = 0.
  std::vector<std::vector<State>> layers;
  layers.reserve(static_cast<std::size_t>(n * t));
  std::vector<State> source;
  source.push_back(State{0, 0, std::vector<i64>(static_cast<std::size_t>(r), 0), 0, -1});
  const std::vector<State>* prev = &source;

  std::vector<i64> key(static_cast<std::size_t>(r) + 2);
  for (i64 i = 0; i < n; ++i) {
    for (i64 j = 0; j < t; ++j) {
      const std::size_t v = inst.flat(i, j);
      const i64 xv = x[v];
      // Candidate coordinate values: box feasibility of x + alpha*h
      // intersected with the radius.
      i64 h_lo = std::max(-g, ceil_div(checked_sub(inst.lower[v], xv), alpha));
      i64 h_hi = std::min(g, floor_div(checked_sub(inst.upper[v], xv), alpha));

      std::vector<State> layer;
      std::unordered_map<std::vector<i64>, int, KeyHash> index;
      const bool brick_entry = (j == 0);
      const i64 fx = inst.objective.terms[v].eval(xv);

      for (std::size_t s = 0; s < prev->size(); ++s) {
        const State& src = (*prev)[s];
        // Crossing into a new brick requires the source brick to have
        // closed with prefix sum zero.
        if (brick_entry && src.beta != 0) continue;
        const i64 base_beta = brick_entry ? 0 : src.beta;
        for (i64 h = h_lo; h <= h_hi; ++h) {
          i64 beta = base_beta + h;
          if (beta < -g || beta > g) continue;
          bool ok = true;
          for (i64 row = 0; row < r; ++row) {
            i64 sv = checked_add(src.sigma[static_cast<std::size_t>(row)],
                                 checked_mul(inst.bimatrix.d[static_cast<std::size_t>(row)]
                                                           [static_cast<std::size_t>(j)],
                                             h));
            if (sv < -sigma_cap || sv > sigma_cap) {
              ok = false;
              break;
            }
            key[static_cast<std::size_t>(row) + 2] = sv;
          }
          if (!ok) continue;
          i64 w = checked_add(
              src.weight,
              checked_sub(inst.objective.terms[v].eval(checked_add(xv, checked_mul(alpha, h))),
                          fx));
          key[0] = h;
          key[1] = beta;
          auto [it, inserted] = index.try_emplace(key, static_cast<int>(layer.size()));
          if (inserted) {
            layer.push_back(State{h, beta, std::vector<i64>(key.begin() + 2, key.end()), w,
                                  static_cast<int>(s)});
          } else if (w < layer[static_cast<std::size_t>(it->second)].weight) {
            // Ties keep the first-reached predecessor.
            layer[static_cast<std::size_t>(it->second)].weight = w;
            layer[static_cast<std::size_t>(it->second)].pred = static_cast<int>(s);
          }
        }
      }
      if (layer.empty()) return std::nullopt;
      layers.push_back(std::move(layer));
      prev = &layers.back();
    }
  }

  // Sink accepts brick-final vertices with zero prefix sum and zero
  // signature.
  int best = -1;
  const auto& last = layers.back();
  for (std::size_t s = 0; s < last.size(); ++s) {
    if (last[s].beta != 0) continue;
    bool zero = true;
    for (i64 sv : last[s].sigma)
      if (sv != 0) {
        zero = false;
        break;
      }
    if (!zero) continue;
    if (best < 0 || last[s].weight < last[static_cast<std::size_t>(best)].weight)
      best = static_cast<int>(s);
  }
  if (best < 0) return std::nullopt;

  BestStep out;
  out.weight = last[static_cast<std::size_t>(best)].weight;
  out.direction.assign(static_cast<std::size_t>(n * t), 0);
  int cur = best;
  for (std::size_t layer = layers.size(); layer-- > 0;) {
    out.direction[layer] = layers[layer][static_cast<std::size_t>(cur)].h;
    cur = layers[layer][static_cast<std::size_t>(cur)].pred;
  }

#ifndef NDEBUG
  // Every returned direction is a kernel element of the full constraint
  // matrix and keeps x + alpha*h inside the box.
  for (i64 i = 0; i < n; ++i) {
    i64 sum = 0;
    for (i64 j = 0; j < t; ++j) sum += out.direction[inst.flat(i, j)];
    assert(sum == 0);
  }
  for (i64 row = 0; row < r; ++row) {
    i64 sum = 0;
    for (i64 i = 0; i < n; ++i)
      for (i64 j = 0; j < t; ++j)
        sum += inst.bimatrix.d[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] *
               out.direction[inst.flat(i, j)];
    assert(sum == 0);
  }
  for (std::size_t v = 0; v < out.direction.size(); ++v) {
    i64 nv = x[v] + alpha * out.direction[v];
    assert(nv >= inst.lower[v] && nv <= inst.upper[v]);
  }
#endif
  return out;
}

}  // namespace nfold
