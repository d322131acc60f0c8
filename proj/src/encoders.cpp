#include "nfold/encoders.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nfold::encoders {

namespace {

i64 ipow(i64 base, i64 exp) { return checked_pow(base, exp); }

// Solution column types are indexed (pattern, output char): pattern is a
// mixed-radix number over alphabet + wildcard with the first string as the
// most significant digit, the output character is the fastest digit.
std::string pattern_of_index(i64 idx, i64 k, const std::string& alphabet) {
  const i64 base = static_cast<i64>(alphabet.size()) + 1;
  std::string pat(static_cast<std::size_t>(k), '*');
  for (i64 pos = k; pos-- > 0;) {
    i64 digit = idx % base;
    pat[static_cast<std::size_t>(pos)] =
        digit < static_cast<i64>(alphabet.size()) ? alphabet[static_cast<std::size_t>(digit)] : '*';
    idx /= base;
  }
  return pat;
}

i64 index_of_pattern(const std::string& pat, const std::string& alphabet) {
  const i64 base = static_cast<i64>(alphabet.size()) + 1;
  i64 idx = 0;
  for (char c : pat) {
    i64 digit;
    if (c == '*') {
      digit = static_cast<i64>(alphabet.size());
    } else {
      auto at = alphabet.find(c);
      if (at == std::string::npos) throw std::invalid_argument("pattern character not in alphabet");
      digit = static_cast<i64>(at);
    }
    idx = idx * base + digit;
  }
  return idx;
}

// delta(output f, input e) with wildcard at distance zero.
i64 char_distance(const MultiStringsInstance& ms, i64 f_idx, char input) {
  if (input == '*') return 0;
  auto at = ms.alphabet.find(input);
  if (at == std::string::npos) throw std::invalid_argument("column character not in alphabet");
  return ms.dist[static_cast<std::size_t>(f_idx)][at];
}

std::vector<std::vector<i64>> all_orders(i64 c) {
  std::vector<i64> base(static_cast<std::size_t>(c));
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<i64>> orders;
  do {
    orders.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return orders;
}

// Cost of rebriefing a voter from src to dst: every candidate pair whose
// relative order differs is swapped exactly once, charged in the source
// orientation.
i64 order_move_cost(const std::vector<i64>& src, const std::vector<i64>& dst,
                    const std::vector<std::vector<i64>>& swap_cost) {
  const i64 c = static_cast<i64>(src.size());
  std::vector<i64> pos_src(static_cast<std::size_t>(c)), pos_dst(static_cast<std::size_t>(c));
  for (i64 p = 0; p < c; ++p) {
    pos_src[static_cast<std::size_t>(src[static_cast<std::size_t>(p)])] = p;
    pos_dst[static_cast<std::size_t>(dst[static_cast<std::size_t>(p)])] = p;
  }
  i64 cost = 0;
  for (i64 a = 0; a < c; ++a)
    for (i64 b = 0; b < c; ++b) {
      if (a == b) continue;
      if (pos_src[static_cast<std::size_t>(a)] < pos_src[static_cast<std::size_t>(b)] &&
          pos_dst[static_cast<std::size_t>(a)] > pos_dst[static_cast<std::size_t>(b)])
        cost = checked_add(cost, swap_cost[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    }
  return cost;
}

void check_bribery_common(const BriberyInstance& br, const EncodeCaps& caps, i64& factorial) {
  if (br.num_candidates < 1) throw std::invalid_argument("bribery: need at least one candidate");
  factorial = 1;
  for (i64 i = 2; i <= br.num_candidates; ++i) {
    factorial = checked_mul(factorial, i);
    if (factorial > caps.max_brick_width)
      throw cap_error("bribery: candidate count too large for exact encoding");
  }
  if (static_cast<i64>(br.voter_types.size()) < 1)
    throw std::invalid_argument("bribery: need at least one voter type");
  for (const auto& vt : br.voter_types) {
    if (static_cast<i64>(vt.order.size()) != br.num_candidates)
      throw std::invalid_argument("bribery: voter order has wrong length");
    if (vt.multiplicity < 1) throw std::invalid_argument("bribery: multiplicity must be positive");
    if (static_cast<i64>(vt.swap_cost.size()) != br.num_candidates)
      throw std::invalid_argument("bribery: swap cost matrix has wrong shape");
    for (const auto& row : vt.swap_cost) {
      if (static_cast<i64>(row.size()) != br.num_candidates)
        throw std::invalid_argument("bribery: swap cost matrix has wrong shape");
      for (i64 v : row)
        if (v < 0) throw std::invalid_argument("bribery: swap costs must be non-negative");
    }
  }
}

// Shared skeleton: bricks, bounds, local rows and the move-cost objective
// are identical for every voting rule; only the global rows differ.
RelationalInstance bribery_skeleton(const BriberyInstance& br,
                                    const std::vector<std::vector<i64>>& orders,
                                    std::vector<std::vector<i64>>& move_cost) {
  const i64 t = static_cast<i64>(orders.size());
  const i64 T = static_cast<i64>(br.voter_types.size());
  RelationalInstance rel;
  rel.base.n = T;
  rel.base.b_local.reserve(static_cast<std::size_t>(T));
  const i64 dim = T * t;
  rel.base.lower.assign(static_cast<std::size_t>(dim), 0);
  rel.base.upper.assign(static_cast<std::size_t>(dim), 0);
  rel.base.objective = SeparableObjective::zeros(static_cast<std::size_t>(dim));
  move_cost.assign(static_cast<std::size_t>(T), {});
  for (i64 i = 0; i < T; ++i) {
    const auto& vt = br.voter_types[static_cast<std::size_t>(i)];
    rel.base.b_local.push_back(vt.multiplicity);
    auto& costs = move_cost[static_cast<std::size_t>(i)];
    costs.reserve(static_cast<std::size_t>(t));
    for (i64 j = 0; j < t; ++j) {
      const std::size_t v = static_cast<std::size_t>(i * t + j);
      rel.base.upper[v] = vt.multiplicity;
      i64 c = order_move_cost(vt.order, orders[static_cast<std::size_t>(j)], vt.swap_cost);
      costs.push_back(c);
      rel.base.objective.terms[v] = UnivariateTerm::linear(c);
    }
  }
  rel.local_rel.assign(static_cast<std::size_t>(T), Rel::Eq);
  return rel;
}

BriberyDecoder bribery_decoder(const BriberyInstance& br,
                               const std::vector<std::vector<i64>>& move_cost,
                               std::vector<i64> scenario = {}) {
  BriberyDecoder dec;
  dec.num_candidates = br.num_candidates;
  for (const auto& vt : br.voter_types) {
    dec.type_orders.push_back(vt.order);
    dec.multiplicities.push_back(vt.multiplicity);
  }
  dec.move_cost = move_cost;
  dec.scenario = std::move(scenario);
  return dec;
}

}  // namespace

std::vector<std::vector<i64>> MultiStringsInstance::hamming(std::size_t sigma) {
  std::vector<std::vector<i64>> d(sigma, std::vector<i64>(sigma, 1));
  for (std::size_t i = 0; i < sigma; ++i) d[i][i] = 0;
  return d;
}

MultiStringsInstance normalize_hamming(const std::vector<std::string>& strings, i64 sigma) {
  if (strings.empty()) throw std::invalid_argument("normalize_hamming: no strings");
  const i64 k = static_cast<i64>(strings.size());
  const std::size_t L = strings.front().size();
  for (const auto& s : strings)
    if (s.size() != L) throw std::invalid_argument("normalize_hamming: unequal string lengths");
  if (sigma <= 0) {
    std::map<char, bool> distinct;
    for (const auto& s : strings)
      for (char c : s)
        if (c != '*') distinct[c] = true;
    sigma = std::max<i64>(1, static_cast<i64>(distinct.size()));
  }
  const i64 norm = std::min(sigma, k + 1);
  if (norm > 26) throw cap_error("normalize_hamming: normalized alphabet too large");

  MultiStringsInstance ms;
  ms.k = k;
  ms.alphabet = std::string(static_cast<std::size_t>(norm), 'a');
  for (i64 i = 0; i < norm; ++i) ms.alphabet[static_cast<std::size_t>(i)] = static_cast<char>('a' + i);
  ms.dist = MultiStringsInstance::hamming(static_cast<std::size_t>(norm));
  ms.d_lo.assign(static_cast<std::size_t>(k), 0);
  ms.d_hi.assign(static_cast<std::size_t>(k), static_cast<i64>(L));

  std::map<std::string, i64> seen;
  for (std::size_t col = 0; col < L; ++col) {
    std::string pat(static_cast<std::size_t>(k), '*');
    std::map<char, char> rank;
    for (i64 i = 0; i < k; ++i) {
      char c = strings[static_cast<std::size_t>(i)][col];
      if (c == '*') continue;
      auto [it, fresh] = rank.try_emplace(c, static_cast<char>('a' + rank.size()));
      pat[static_cast<std::size_t>(i)] = it->second;
      (void)fresh;
    }
    auto [it, fresh] = seen.try_emplace(pat, static_cast<i64>(ms.columns.size()));
    if (fresh) ms.columns.push_back({pat, 1});
    else ms.columns[static_cast<std::size_t>(it->second)].multiplicity += 1;
    ms.column_order.push_back(it->second);
  }
  return ms;
}

std::pair<RelationalInstance, Decoder> encode_multi_strings(const MultiStringsInstance& ms,
                                                            const EncodeCaps& caps) {
  if (ms.k < 1) throw std::invalid_argument("multi strings: k must be >= 1");
  if (ms.alphabet.empty()) throw std::invalid_argument("multi strings: empty alphabet");
  const i64 sigma = static_cast<i64>(ms.alphabet.size());
  if (static_cast<i64>(ms.d_lo.size()) != ms.k || static_cast<i64>(ms.d_hi.size()) != ms.k)
    throw std::invalid_argument("multi strings: distance bound vectors must have length k");
  if (static_cast<i64>(ms.dist.size()) != sigma)
    throw std::invalid_argument("multi strings: distance table shape");
  for (const auto& row : ms.dist) {
    if (static_cast<i64>(row.size()) != sigma)
      throw std::invalid_argument("multi strings: distance table shape");
    for (i64 v : row)
      if (v < 0) throw std::invalid_argument("multi strings: distances must be non-negative");
  }
  if (ms.columns.empty()) throw std::invalid_argument("multi strings: no columns");
  for (const auto& col : ms.columns) {
    if (static_cast<i64>(col.pattern.size()) != ms.k)
      throw std::invalid_argument("multi strings: column pattern has wrong length");
    if (col.multiplicity < 1)
      throw std::invalid_argument("multi strings: multiplicities must be positive");
  }

  i64 patterns;
  try {
    patterns = ipow(sigma + 1, ms.k);
  } catch (const overflow_error&) {
    throw cap_error("alphabet/k too large for exact encoding");
  }
  i64 t;
  try {
    t = checked_mul(patterns, sigma);
  } catch (const overflow_error&) {
    throw cap_error("alphabet/k too large for exact encoding");
  }
  if (t > caps.max_brick_width) throw cap_error("alphabet/k too large for exact encoding");
  const i64 n = static_cast<i64>(ms.columns.size());
  if (n > caps.max_bricks) throw cap_error("multi strings: too many column types");

  i64 rhs_mag = 0;
  for (i64 v : ms.d_lo) rhs_mag = std::max(rhs_mag, checked_abs(v));
  for (i64 v : ms.d_hi) rhs_mag = std::max(rhs_mag, checked_abs(v));
  for (const auto& col : ms.columns) rhs_mag = std::max(rhs_mag, col.multiplicity);

  RelationalInstance rel;
  rel.base.n = n;
  // 2k global rows: a lower and an upper distance row per input string.
  rel.base.bimatrix.d.assign(static_cast<std::size_t>(2 * ms.k),
                             std::vector<i64>(static_cast<std::size_t>(t), 0));
  for (i64 p = 0; p < patterns; ++p) {
    const std::string pat = pattern_of_index(p, ms.k, ms.alphabet);
    for (i64 f = 0; f < sigma; ++f) {
      const std::size_t var = static_cast<std::size_t>(p * sigma + f);
      for (i64 i = 0; i < ms.k; ++i) {
        i64 dd = char_distance(ms, f, pat[static_cast<std::size_t>(i)]);
        rel.base.bimatrix.d[static_cast<std::size_t>(i)][var] = dd;
        rel.base.bimatrix.d[static_cast<std::size_t>(ms.k + i)][var] = dd;
      }
    }
  }
  rel.base.b0.reserve(static_cast<std::size_t>(2 * ms.k));
  rel.global_rel.reserve(static_cast<std::size_t>(2 * ms.k));
  for (i64 i = 0; i < ms.k; ++i) {
    rel.base.b0.push_back(ms.d_lo[static_cast<std::size_t>(i)]);
    rel.global_rel.push_back(Rel::Ge);
  }
  for (i64 i = 0; i < ms.k; ++i) {
    rel.base.b0.push_back(ms.d_hi[static_cast<std::size_t>(i)]);
    rel.global_rel.push_back(Rel::Le);
  }

  const i64 dim = n * t;
  rel.base.lower.assign(static_cast<std::size_t>(dim), 0);
  rel.base.upper.assign(static_cast<std::size_t>(dim), 0);
  rel.base.objective = SeparableObjective::zeros(static_cast<std::size_t>(dim));
  rel.base.b_local.reserve(static_cast<std::size_t>(n));
  rel.local_rel.assign(static_cast<std::size_t>(n), Rel::Eq);

  for (i64 b = 0; b < n; ++b) {
    const auto& col = ms.columns[static_cast<std::size_t>(b)];
    rel.base.b_local.push_back(col.multiplicity);
    const i64 p = index_of_pattern(col.pattern, ms.alphabet);
    for (i64 f = 0; f < sigma; ++f) {
      const std::size_t v = rel.base.flat(b, p * sigma + f);
      rel.base.upper[v] = rhs_mag;  // only columns compatible with this brick open up
      if (ms.minimize_total) {
        i64 w = 0;
        for (i64 i = 0; i < ms.k; ++i)
          w = checked_add(w, char_distance(ms, f, col.pattern[static_cast<std::size_t>(i)]));
        if (w != 0) rel.base.objective.terms[v] = UnivariateTerm::linear(w);
      }
    }
  }

  Decoder dec;
  dec.payload = MultiStringsDecoder{ms};
  return {std::move(rel), std::move(dec)};
}

MultiStringsSchedule string_presets(StringProblem problem, const StringPresetArgs& args,
                                    const EncodeCaps& caps) {
  MultiStringsSchedule sched;
  auto single = [&sched](MultiStringsInstance inst, std::string label) {
    MultiStringsSchedule::Member m;
    m.parts.push_back(std::move(inst));
    m.label = std::move(label);
    sched.members.push_back(std::move(m));
  };

  switch (problem) {
    case StringProblem::Closest: {
      auto ms = normalize_hamming(args.strings, args.alphabet_size);
      std::fill(ms.d_hi.begin(), ms.d_hi.end(), args.d);
      single(std::move(ms), "closest");
      break;
    }
    case StringProblem::Farthest: {
      auto ms = normalize_hamming(args.strings, args.alphabet_size);
      std::fill(ms.d_lo.begin(), ms.d_lo.end(), args.d);
      single(std::move(ms), "farthest");
      break;
    }
    case StringProblem::Neighbor: {
      auto ms = normalize_hamming(args.strings, args.alphabet_size);
      if (args.per_string_d.size() != args.strings.size())
        throw std::invalid_argument("neighbor string: need one bound per string");
      ms.d_hi = args.per_string_d;
      single(std::move(ms), "neighbor");
      break;
    }
    case StringProblem::OptimalConsensus: {
      auto ms = normalize_hamming(args.strings, args.alphabet_size);
      std::fill(ms.d_hi.begin(), ms.d_hi.end(), args.d);
      ms.minimize_total = true;
      single(std::move(ms), "optimal-consensus");
      break;
    }
    case StringProblem::Dss: {
      // Bad strings within d, good strings at distance at least L - d2.
      std::vector<std::string> all = args.strings;
      all.insert(all.end(), args.good_strings.begin(), args.good_strings.end());
      auto ms = normalize_hamming(all, args.alphabet_size);
      const i64 L = ms.length();
      for (std::size_t i = 0; i < args.strings.size(); ++i) ms.d_hi[i] = args.d;
      for (std::size_t i = args.strings.size(); i < all.size(); ++i)
        ms.d_lo[i] = std::max<i64>(0, L - args.d2);
      single(std::move(ms), "dss");
      break;
    }
    case StringProblem::ClosestToMost: {
      const i64 k = static_cast<i64>(args.strings.size());
      for (i64 mask = 0; mask < (i64{1} << k); ++mask) {
        if (__builtin_popcountll(static_cast<unsigned long long>(mask)) > args.outliers) continue;
        std::vector<std::string> kept;
        std::string label = "outliers {";
        for (i64 i = 0; i < k; ++i) {
          if (mask & (i64{1} << i))
            label += std::to_string(i) + " ";
          else
            kept.push_back(args.strings[static_cast<std::size_t>(i)]);
        }
        label += "}";
        if (kept.empty()) continue;  // every string dropped: nothing to satisfy
        auto ms = normalize_hamming(kept, args.alphabet_size);
        std::fill(ms.d_hi.begin(), ms.d_hi.end(), args.d);
        single(std::move(ms), std::move(label));
        if (static_cast<i64>(sched.members.size()) > caps.max_schedule)
          throw cap_error("closest-to-most: outlier enumeration too large");
      }
      break;
    }
    case StringProblem::CHrc: {
      const i64 k = static_cast<i64>(args.strings.size());
      const i64 c = std::max<i64>(args.clusters, 1);
      std::vector<i64> assign(static_cast<std::size_t>(k), 0);
      for (;;) {
        // Canonical labelings only: group labels appear in first-use order.
        i64 max_used = -1;
        bool canonical = true;
        for (i64 v : assign) {
          if (v > max_used + 1) {
            canonical = false;
            break;
          }
          max_used = std::max(max_used, v);
        }
        if (canonical) {
          MultiStringsSchedule::Member member;
          member.label = "partition";
          for (i64 group = 0; group <= max_used; ++group) {
            std::vector<std::string> part;
            member.label += group == 0 ? " [" : " | ";
            for (i64 i = 0; i < k; ++i)
              if (assign[static_cast<std::size_t>(i)] == group) {
                part.push_back(args.strings[static_cast<std::size_t>(i)]);
                member.label += std::to_string(i);
              }
            auto ms = normalize_hamming(part, args.alphabet_size);
            std::fill(ms.d_hi.begin(), ms.d_hi.end(), args.d);
            member.parts.push_back(std::move(ms));
          }
          member.label += "]";
          sched.members.push_back(std::move(member));
          if (static_cast<i64>(sched.members.size()) > caps.max_schedule)
            throw cap_error("hrc: partition enumeration too large");
        }
        std::size_t pos = assign.size();
        bool more = false;
        while (pos-- > 0) {
          if (assign[pos] < c - 1) {
            ++assign[pos];
            std::fill(assign.begin() + static_cast<std::ptrdiff_t>(pos) + 1, assign.end(), 0);
            more = true;
            break;
          }
        }
        if (!more) break;
      }
      break;
    }
    case StringProblem::DMismatch: {
      const i64 L = args.strings.empty() ? 0 : static_cast<i64>(args.strings.front().size());
      for (i64 len = 1; len <= L; ++len) {
        for (i64 p = 0; p + len <= L; ++p) {
          std::vector<std::string> windows;
          windows.reserve(args.strings.size());
          for (const auto& s : args.strings)
            windows.push_back(s.substr(static_cast<std::size_t>(p), static_cast<std::size_t>(len)));
          auto ms = normalize_hamming(windows, args.alphabet_size);
          if (args.mismatch_farthest)
            std::fill(ms.d_lo.begin(), ms.d_lo.end(), args.d);
          else
            std::fill(ms.d_hi.begin(), ms.d_hi.end(), args.d);
          single(std::move(ms), "window p=" + std::to_string(p) + " len=" + std::to_string(len));
          if (static_cast<i64>(sched.members.size()) > caps.max_schedule)
            throw cap_error("d-mismatch: window enumeration too large");
        }
      }
      break;
    }
  }
  if (sched.members.empty()) throw std::invalid_argument("string preset produced no instances");
  return sched;
}

std::pair<RelationalInstance, Decoder> encode_wsm(const WsmInstance& w, const EncodeCaps& caps) {
  if (w.k < 1) throw std::invalid_argument("wsm: universe must be non-empty");
  if (static_cast<i64>(w.demands.size()) != w.k)
    throw std::invalid_argument("wsm: need one demand per universe element");
  i64 t;
  try {
    t = ipow(2, w.k);
  } catch (const overflow_error&) {
    throw cap_error("wsm: universe too large for exact encoding");
  }
  if (t > caps.max_brick_width) throw cap_error("wsm: universe too large for exact encoding");
  if (w.types.empty()) throw std::invalid_argument("wsm: no set types");
  if (static_cast<i64>(w.types.size()) > caps.max_bricks) throw cap_error("wsm: too many types");

  const i64 T = static_cast<i64>(w.types.size());
  i64 total_sets = 0;
  for (const auto& ty : w.types) {
    for (i64 m : ty.members)
      if (m < 0 || m >= w.k) throw std::invalid_argument("wsm: set member out of range");
    total_sets = checked_add(total_sets, static_cast<i64>(ty.weights.size()));
  }

  RelationalInstance rel;
  rel.base.n = T;
  rel.base.bimatrix.d.assign(static_cast<std::size_t>(w.k),
                             std::vector<i64>(static_cast<std::size_t>(t), 0));
  for (i64 mask = 0; mask < t; ++mask)
    for (i64 i = 0; i < w.k; ++i)
      if (mask & (i64{1} << i))
        rel.base.bimatrix.d[static_cast<std::size_t>(i)][static_cast<std::size_t>(mask)] = 1;
  rel.base.b0 = w.demands;
  rel.global_rel.assign(static_cast<std::size_t>(w.k), Rel::Ge);
  rel.base.b_local.assign(static_cast<std::size_t>(T), total_sets);
  rel.local_rel.assign(static_cast<std::size_t>(T), Rel::Le);

  const i64 dim = T * t;
  rel.base.lower.assign(static_cast<std::size_t>(dim), 0);
  rel.base.upper.assign(static_cast<std::size_t>(dim), 0);
  rel.base.objective = SeparableObjective::zeros(static_cast<std::size_t>(dim));

  for (i64 tau = 0; tau < T; ++tau) {
    const auto& ty = w.types[static_cast<std::size_t>(tau)];
    if (ty.weights.empty()) continue;  // nothing of this type to take
    i64 mask = 0;
    for (i64 m : ty.members) mask |= i64{1} << m;
    const std::size_t v = rel.base.flat(tau, mask);
    const i64 supply = static_cast<i64>(ty.weights.size());
    rel.base.upper[v] = supply;
    // Partial sums of the sorted weights: taking c sets of this type costs
    // the c lightest ones, which is convex in c.
    std::vector<i64> sorted = ty.weights;
    std::sort(sorted.begin(), sorted.end());
    std::vector<PwlPoint> pts;
    pts.reserve(static_cast<std::size_t>(supply) + 1);
    i64 acc = 0;
    pts.push_back({0, 0});
    for (i64 c = 0; c < supply; ++c) {
      acc = checked_add(acc, sorted[static_cast<std::size_t>(c)]);
      pts.push_back({c + 1, acc});
    }
    rel.base.objective.terms[v] = UnivariateTerm::pwl(std::move(pts));
  }

  Decoder dec;
  WsmDecoder wd;
  wd.source = w;
  for (auto& ty : wd.source.types) std::sort(ty.weights.begin(), ty.weights.end());
  dec.payload = std::move(wd);
  return {std::move(rel), std::move(dec)};
}

std::pair<RelationalInstance, Decoder> encode_bribery_scoring(const BriberyInstance& br,
                                                              const EncodeCaps& caps) {
  i64 factorial;
  check_bribery_common(br, caps, factorial);
  if (static_cast<i64>(br.scoring.size()) != br.num_candidates)
    throw std::invalid_argument("bribery: scoring vector has wrong length");
  for (std::size_t i = 1; i < br.scoring.size(); ++i)
    if (br.scoring[i] > br.scoring[i - 1])
      throw std::invalid_argument("bribery: scoring vector must be non-increasing");
  if (br.scoring.back() < 0) throw std::invalid_argument("bribery: scores must be non-negative");
  if (br.scoring.front() > br.num_candidates)
    throw std::invalid_argument("bribery: scoring protocol is not natural (s1 > |C|)");

  const auto orders = all_orders(br.num_candidates);
  std::vector<std::vector<i64>> move_cost;
  RelationalInstance rel = bribery_skeleton(br, orders, move_cost);

  // One row per rival: the rival's score minus the designated candidate's
  // must not be positive.
  const i64 rivals = br.num_candidates - 1;
  const i64 rows = std::max<i64>(rivals, 1);
  const i64 t = static_cast<i64>(orders.size());
  rel.base.bimatrix.d.assign(static_cast<std::size_t>(rows),
                             std::vector<i64>(static_cast<std::size_t>(t), 0));
  rel.base.b0.assign(static_cast<std::size_t>(rows), 0);
  rel.global_rel.assign(static_cast<std::size_t>(rows), rivals == 0 ? Rel::Eq : Rel::Le);
  for (i64 c = 1; c <= rivals; ++c) {
    for (i64 j = 0; j < t; ++j) {
      const auto& ord = orders[static_cast<std::size_t>(j)];
      i64 s_rival = 0, s_star = 0;
      for (i64 p = 0; p < br.num_candidates; ++p) {
        if (ord[static_cast<std::size_t>(p)] == c) s_rival = br.scoring[static_cast<std::size_t>(p)];
        if (ord[static_cast<std::size_t>(p)] == 0) s_star = br.scoring[static_cast<std::size_t>(p)];
      }
      rel.base.bimatrix.d[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(j)] =
          s_rival - s_star;
    }
  }

  Decoder dec;
  dec.payload = bribery_decoder(br, move_cost);
  return {std::move(rel), std::move(dec)};
}

ScenarioPredicate copeland_predicate(i64 num_candidates, i64 alpha_num, i64 alpha_den) {
  if (alpha_den < 1 || alpha_num < 0 || alpha_num > alpha_den)
    throw std::invalid_argument("copeland: alpha must be a rational in [0, 1]");
  return [num_candidates, alpha_num, alpha_den](const std::vector<i64>& outcomes) {
    std::vector<i64> points(static_cast<std::size_t>(num_candidates), 0);
    std::size_t idx = 0;
    for (i64 a = 0; a < num_candidates; ++a)
      for (i64 b = a + 1; b < num_candidates; ++b, ++idx) {
        switch (outcomes[idx]) {
          case 0: points[static_cast<std::size_t>(a)] += alpha_den; break;
          case 1: points[static_cast<std::size_t>(b)] += alpha_den; break;
          default:
            points[static_cast<std::size_t>(a)] += alpha_num;
            points[static_cast<std::size_t>(b)] += alpha_num;
        }
      }
    return points[0] == *std::max_element(points.begin(), points.end());
  };
}

BriberySchedule encode_bribery_c1(const BriberyInstance& br, const EncodeCaps& caps,
                                  ScenarioPredicate winner) {
  i64 factorial;
  check_bribery_common(br, caps, factorial);
  if (!winner) winner = copeland_predicate(br.num_candidates, br.copeland_num, br.copeland_den);

  const i64 pairs = br.num_candidates * (br.num_candidates - 1) / 2;
  i64 count = 1;
  for (i64 i = 0; i < pairs; ++i) {
    count = checked_mul(count, 3);
    if (count > caps.max_scenarios) throw cap_error("bribery: too many head-to-head scenarios");
  }

  const auto orders = all_orders(br.num_candidates);
  const i64 t = static_cast<i64>(orders.size());
  std::vector<std::vector<i64>> move_cost;
  const RelationalInstance skeleton = bribery_skeleton(br, orders, move_cost);

  BriberySchedule sched;
  std::vector<i64> outcomes(static_cast<std::size_t>(pairs), 0);
  for (i64 s = 0; s < count; ++s) {
    i64 code = s;
    for (std::size_t p = 0; p < outcomes.size(); ++p) {
      outcomes[p] = code % 3;
      code /= 3;
    }
    if (!winner(outcomes)) continue;

    RelationalInstance rel = skeleton;
    const i64 rows = std::max<i64>(pairs, 1);
    rel.base.bimatrix.d.assign(static_cast<std::size_t>(rows),
                               std::vector<i64>(static_cast<std::size_t>(t), 0));
    rel.base.b0.assign(static_cast<std::size_t>(rows), 0);
    rel.global_rel.assign(static_cast<std::size_t>(rows), Rel::Eq);
    std::size_t idx = 0;
    for (i64 a = 0; a < br.num_candidates; ++a)
      for (i64 b = a + 1; b < br.num_candidates; ++b, ++idx) {
        // Winner-first margin: voters preferring the winner minus voters
        // preferring the loser.
        i64 win = a, lose = b;
        if (outcomes[idx] == 1) std::swap(win, lose);
        for (i64 j = 0; j < t; ++j) {
          const auto& ord = orders[static_cast<std::size_t>(j)];
          i64 margin = 0;
          for (i64 p = 0; p < br.num_candidates; ++p) {
            if (ord[static_cast<std::size_t>(p)] == win) {
              margin = 1;
              break;
            }
            if (ord[static_cast<std::size_t>(p)] == lose) {
              margin = -1;
              break;
            }
          }
          rel.base.bimatrix.d[idx][static_cast<std::size_t>(j)] = margin;
        }
        rel.global_rel[idx] = outcomes[idx] == 2 ? Rel::Eq : Rel::Gt;
      }
    sched.scenarios.push_back({std::move(rel), outcomes});
  }
  return sched;
}

std::pair<RelationalInstance, Decoder> encode_huge_nfold(const HugeNFoldInstance& h,
                                                         const EncodeCaps& caps) {
  const i64 t = h.t();
  const i64 r = h.r();
  if (t < 1 || r < 1) throw std::invalid_argument("huge: global block must be non-empty");
  for (const auto& row : h.d)
    if (static_cast<i64>(row.size()) != t) throw std::invalid_argument("huge: ragged global block");
  const i64 s = static_cast<i64>(h.a.size());
  for (const auto& row : h.a)
    if (static_cast<i64>(row.size()) != t) throw std::invalid_argument("huge: ragged inner block");
  if (h.types.empty()) throw std::invalid_argument("huge: no brick types");
  if (static_cast<i64>(h.types.size()) > caps.max_bricks) throw cap_error("huge: too many types");
  if (static_cast<i64>(h.b0.size()) != r) throw std::invalid_argument("huge: b0 length mismatch");
  for (const auto& ty : h.types) {
    if (ty.multiplicity < 1) throw std::invalid_argument("huge: multiplicities must be positive");
    if (static_cast<i64>(ty.lower.size()) != t || static_cast<i64>(ty.upper.size()) != t ||
        static_cast<i64>(ty.objective.size()) != t)
      throw std::invalid_argument("huge: type data length mismatch");
    if (static_cast<i64>(ty.b_local.size()) != s)
      throw std::invalid_argument("huge: inner RHS length mismatch");
    for (i64 j = 0; j < t; ++j)
      if (ty.lower[static_cast<std::size_t>(j)] > ty.upper[static_cast<std::size_t>(j)])
        throw std::invalid_argument("huge: lower exceeds upper");
  }

  // Shift every type to zero lower bounds; domain widths then cap the
  // configuration coordinates.
  std::vector<i64> widths(static_cast<std::size_t>(t), 0);
  for (const auto& ty : h.types)
    for (i64 j = 0; j < t; ++j)
      widths[static_cast<std::size_t>(j)] =
          std::max(widths[static_cast<std::size_t>(j)],
                   checked_sub(ty.upper[static_cast<std::size_t>(j)],
                               ty.lower[static_cast<std::size_t>(j)]));
  i64 config_count = 1;
  for (i64 j = 0; j < t; ++j) {
    config_count = checked_mul(config_count, widths[static_cast<std::size_t>(j)] + 1);
    if (config_count > caps.max_configurations)
      throw cap_error("huge: configuration space too large");
  }

  std::vector<std::vector<i64>> configs;
  configs.reserve(static_cast<std::size_t>(config_count));
  std::vector<i64> cur(static_cast<std::size_t>(t), 0);
  for (bool more = true; more;) {
    configs.push_back(cur);
    more = false;
    for (std::size_t j = cur.size(); j-- > 0;) {
      if (cur[j] < widths[j]) {
        ++cur[j];
        std::fill(cur.begin() + static_cast<std::ptrdiff_t>(j) + 1, cur.end(), 0);
        more = true;
        break;
      }
    }
  }

  const i64 T = static_cast<i64>(h.types.size());
  i64 b0_shift;
  RelationalInstance rel;
  rel.base.n = T;
  rel.base.b0 = h.b0;
  for (i64 row = 0; row < r; ++row) {
    b0_shift = 0;
    for (const auto& ty : h.types) {
      i64 dl = 0;
      for (i64 j = 0; j < t; ++j)
        dl = checked_add(dl, checked_mul(h.d[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)],
                                         ty.lower[static_cast<std::size_t>(j)]));
      b0_shift = checked_add(b0_shift, checked_mul(dl, ty.multiplicity));
    }
    rel.base.b0[static_cast<std::size_t>(row)] =
        checked_sub(rel.base.b0[static_cast<std::size_t>(row)], b0_shift);
  }
  rel.global_rel.assign(static_cast<std::size_t>(r), Rel::Eq);
  rel.local_rel.assign(static_cast<std::size_t>(T), Rel::Eq);

  rel.base.bimatrix.d.assign(static_cast<std::size_t>(r),
                             std::vector<i64>(configs.size(), 0));
  for (i64 row = 0; row < r; ++row)
    for (std::size_t c = 0; c < configs.size(); ++c) {
      i64 acc = 0;
      for (i64 j = 0; j < t; ++j)
        acc = checked_add(acc, checked_mul(h.d[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)],
                                           configs[c][static_cast<std::size_t>(j)]));
      rel.base.bimatrix.d[static_cast<std::size_t>(row)][c] = acc;
    }

  i64 rhs_mag = 0;
  for (i64 v : rel.base.b0) rhs_mag = std::max(rhs_mag, checked_abs(v));
  for (const auto& ty : h.types) rhs_mag = std::max(rhs_mag, ty.multiplicity);

  const i64 dim = T * static_cast<i64>(configs.size());
  rel.base.lower.assign(static_cast<std::size_t>(dim), 0);
  rel.base.upper.assign(static_cast<std::size_t>(dim), 0);
  rel.base.objective = SeparableObjective::zeros(static_cast<std::size_t>(dim));
  rel.base.b_local.reserve(static_cast<std::size_t>(T));

  HugeDecoder hd;
  hd.configs = configs;
  for (i64 i = 0; i < T; ++i) {
    const auto& ty = h.types[static_cast<std::size_t>(i)];
    rel.base.b_local.push_back(ty.multiplicity);
    hd.type_lower.push_back(ty.lower);
    hd.multiplicities.push_back(ty.multiplicity);
    for (std::size_t c = 0; c < configs.size(); ++c) {
      // Configuration admissible for this type: inside its width and
      // satisfying its inner rows.
      bool ok = true;
      for (i64 j = 0; j < t && ok; ++j)
        ok = configs[c][static_cast<std::size_t>(j)] <=
             ty.upper[static_cast<std::size_t>(j)] - ty.lower[static_cast<std::size_t>(j)];
      for (i64 row = 0; row < s && ok; ++row) {
        i64 lhs = 0, shift = 0;
        for (i64 j = 0; j < t; ++j) {
          lhs = checked_add(lhs, checked_mul(h.a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)],
                                             configs[c][static_cast<std::size_t>(j)]));
          shift = checked_add(shift,
                              checked_mul(h.a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)],
                                          ty.lower[static_cast<std::size_t>(j)]));
        }
        ok = lhs == checked_sub(ty.b_local[static_cast<std::size_t>(row)], shift);
      }
      if (!ok) continue;
      const std::size_t v = rel.base.flat(i, static_cast<i64>(c));
      rel.base.upper[v] = rhs_mag;
      i64 w = 0;
      for (i64 j = 0; j < t; ++j)
        w = checked_add(w, ty.objective[static_cast<std::size_t>(j)].eval(
                               checked_add(configs[c][static_cast<std::size_t>(j)],
                                           ty.lower[static_cast<std::size_t>(j)])));
      if (w != 0) rel.base.objective.terms[v] = UnivariateTerm::linear(w);
    }
  }

  Decoder dec;
  dec.payload = std::move(hd);
  return {std::move(rel), std::move(dec)};
}

Point HugeAnswer::expand(i64 t) const {
  Point p;
  for (const auto& e : entries)
    for (i64 c = 0; c < e.count; ++c) p.insert(p.end(), e.config.begin(), e.config.end());
  (void)t;
  return p;
}

namespace {

StringAnswer decode_multi_strings(const MultiStringsDecoder& dec, const RelationalInstance& rel,
                                  const Point& p) {
  const auto& ms = dec.source;
  const i64 sigma = static_cast<i64>(ms.alphabet.size());
  StringAnswer ans;
  ans.counts.assign(ms.columns.size(), std::vector<i64>(static_cast<std::size_t>(sigma), 0));
  for (std::size_t b = 0; b < ms.columns.size(); ++b) {
    const i64 pat = index_of_pattern(ms.columns[b].pattern, ms.alphabet);
    for (i64 f = 0; f < sigma; ++f)
      ans.counts[b][static_cast<std::size_t>(f)] =
          p[rel.base.flat(static_cast<i64>(b), pat * sigma + f)];
  }
  ans.distances.assign(static_cast<std::size_t>(ms.k), 0);
  for (std::size_t b = 0; b < ms.columns.size(); ++b)
    for (i64 f = 0; f < sigma; ++f) {
      const i64 cnt = ans.counts[b][static_cast<std::size_t>(f)];
      if (cnt == 0) continue;
      for (i64 i = 0; i < ms.k; ++i)
        ans.distances[static_cast<std::size_t>(i)] = checked_add(
            ans.distances[static_cast<std::size_t>(i)],
            checked_mul(cnt, char_distance(ms, f, ms.columns[b].pattern[static_cast<std::size_t>(i)])));
    }
  for (i64 dd : ans.distances) ans.total_distance = checked_add(ans.total_distance, dd);

  if (!ms.column_order.empty()) {
    // Assign output characters within each type in alphabet order; the
    // distances only depend on (type, character) counts, so any assignment
    // order is equivalent.
    std::vector<std::vector<i64>> remaining = ans.counts;
    for (i64 type : ms.column_order) {
      auto& rem = remaining[static_cast<std::size_t>(type)];
      for (i64 f = 0; f < sigma; ++f)
        if (rem[static_cast<std::size_t>(f)] > 0) {
          --rem[static_cast<std::size_t>(f)];
          ans.y.push_back(ms.alphabet[static_cast<std::size_t>(f)]);
          break;
        }
    }
  }
  return ans;
}

WsmAnswer decode_wsm(const WsmDecoder& dec, const RelationalInstance& rel, const Point& p) {
  const auto& w = dec.source;
  WsmAnswer ans;
  ans.counts.assign(w.types.size(), 0);
  for (std::size_t tau = 0; tau < w.types.size(); ++tau) {
    const auto& ty = w.types[tau];
    if (ty.weights.empty()) continue;
    i64 mask = 0;
    for (i64 m : ty.members) mask |= i64{1} << m;
    i64 cnt = p[rel.base.flat(static_cast<i64>(tau), mask)];
    ans.counts[tau] = cnt;
    for (i64 c = 0; c < cnt; ++c) {
      ans.chosen.emplace_back(static_cast<i64>(tau), ty.weights[static_cast<std::size_t>(c)]);
      ans.cost = checked_add(ans.cost, ty.weights[static_cast<std::size_t>(c)]);
    }
  }
  return ans;
}

BriberyAnswer decode_bribery(const BriberyDecoder& dec, const RelationalInstance& rel,
                             const Point& p) {
  BriberyAnswer ans;
  const i64 t = rel.base.t();
  ans.moved.assign(dec.type_orders.size(), std::vector<i64>(static_cast<std::size_t>(t), 0));
  for (std::size_t i = 0; i < dec.type_orders.size(); ++i)
    for (i64 j = 0; j < t; ++j) {
      i64 cnt = p[rel.base.flat(static_cast<i64>(i), j)];
      ans.moved[i][static_cast<std::size_t>(j)] = cnt;
      ans.cost = checked_add(ans.cost, checked_mul(cnt, dec.move_cost[i][static_cast<std::size_t>(j)]));
    }
  ans.scenario = dec.scenario;
  return ans;
}

HugeAnswer decode_huge(const HugeDecoder& dec, const RelationalInstance& rel, const Point& p) {
  HugeAnswer ans;
  const i64 t_cfg = dec.configs.empty() ? 0 : static_cast<i64>(dec.configs.front().size());
  for (std::size_t i = 0; i < dec.type_lower.size(); ++i) {
    for (std::size_t c = 0; c < dec.configs.size(); ++c) {
      i64 cnt = p[rel.base.flat(static_cast<i64>(i), static_cast<i64>(c))];
      if (cnt == 0) continue;
      HugeAnswer::Entry e;
      e.type = static_cast<i64>(i);
      e.count = cnt;
      e.config.resize(static_cast<std::size_t>(t_cfg));
      for (i64 j = 0; j < t_cfg; ++j)
        e.config[static_cast<std::size_t>(j)] =
            checked_add(dec.configs[c][static_cast<std::size_t>(j)],
                        dec.type_lower[i][static_cast<std::size_t>(j)]);
      ans.entries.push_back(std::move(e));
    }
  }
  ans.objective = evaluate_objective(rel.base, p);
  return ans;
}

}  // namespace

DecodedAnswer decode(const Decoder& dec, const RelationalInstance& encoded, const Point& p) {
  if (!is_feasible(encoded, p))
    throw solver_error("decode: point is not feasible for the encoded instance");
  if (auto* ms = std::get_if<MultiStringsDecoder>(&dec.payload))
    return decode_multi_strings(*ms, encoded, p);
  if (auto* w = std::get_if<WsmDecoder>(&dec.payload)) return decode_wsm(*w, encoded, p);
  if (auto* b = std::get_if<BriberyDecoder>(&dec.payload)) return decode_bribery(*b, encoded, p);
  return decode_huge(std::get<HugeDecoder>(dec.payload), encoded, p);
}

ScheduleAnswer solve_schedule(const MultiStringsSchedule& sched, const SolverConfig& cfg,
                              const EncodeCaps& caps) {
  struct MemberOutcome {
    bool feasible = false;
    i64 objective = 0;
    std::vector<StringAnswer> parts;
  };
  std::vector<MemberOutcome> outcomes(sched.members.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t m = 0; m < sched.members.size(); ++m) {
    MemberOutcome out;
    out.feasible = true;
    for (const auto& part : sched.members[m].parts) {
      auto [rel, dec] = encode_multi_strings(part, caps);
      SolveReport rep = solve(rel, cfg);
      if (rep.status != SolveStatus::Optimal) {
        out.feasible = false;
        break;
      }
      out.objective = checked_add(out.objective, *rep.objective_value);
      out.parts.push_back(std::get<StringAnswer>(decode(dec, rel, *rep.point)));
    }
    outcomes[m] = std::move(out);
  }

  ScheduleAnswer best;
  for (std::size_t m = 0; m < outcomes.size(); ++m) {
    if (!outcomes[m].feasible) continue;
    if (!best.feasible || outcomes[m].objective < best.objective) {
      best.feasible = true;
      best.objective = outcomes[m].objective;
      best.member = static_cast<i64>(m);
      best.parts = std::move(outcomes[m].parts);
    }
  }
  return best;
}

BriberyC1Answer solve_bribery_c1(const BriberyInstance& br, const SolverConfig& cfg,
                                 const EncodeCaps& caps) {
  BriberySchedule sched = encode_bribery_c1(br, caps);
  const auto orders = all_orders(br.num_candidates);
  std::vector<std::vector<i64>> move_cost;
  {
    RelationalInstance unused = bribery_skeleton(br, orders, move_cost);
    (void)unused;
  }

  struct Outcome {
    bool feasible = false;
    i64 cost = 0;
    Point point;
  };
  std::vector<Outcome> outcomes(sched.scenarios.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t s = 0; s < sched.scenarios.size(); ++s) {
    SolveReport rep = solve(sched.scenarios[s].instance, cfg);
    if (rep.status == SolveStatus::Optimal) {
      outcomes[s].feasible = true;
      outcomes[s].cost = *rep.objective_value;
      outcomes[s].point = std::move(*rep.point);
    }
  }

  BriberyC1Answer best;
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    if (!outcomes[s].feasible) continue;
    if (!best.feasible || outcomes[s].cost < best.cost) {
      best.feasible = true;
      best.cost = outcomes[s].cost;
      best.scenario = static_cast<i64>(s);
    }
  }
  if (best.feasible) {
    const std::size_t s = static_cast<std::size_t>(best.scenario);
    Decoder dec;
    dec.payload = bribery_decoder(br, move_cost, sched.scenarios[s].outcomes);
    best.answer = std::get<BriberyAnswer>(
        decode(dec, sched.scenarios[s].instance, outcomes[s].point));
  }
  return best;
}

}  // namespace nfold::encoders
