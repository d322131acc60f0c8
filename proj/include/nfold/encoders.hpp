#pragma once

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nfold/solver.hpp"
#include "nfold/transform.hpp"

namespace nfold::encoders {

struct EncodeCaps {
  i64 max_brick_width = 4096;
  i64 max_bricks = 4096;
  i64 max_scenarios = 30000;
  i64 max_configurations = 4096;
  i64 max_schedule = 100000;
};

// ---------------------------------------------------------------------------
// Multi-string problems: find y over the alphabet with per-string distance
// window d_i <= delta(y, s_i) <= D_i, optionally minimizing the total
// distance. Inputs are column types with multiplicities; '*' is a wildcard
// at distance zero from everything.

struct MultiStringsInstance {
  i64 k = 0;
  std::string alphabet;  // output symbols; '*' never appears here
  struct ColumnType {
    std::string pattern;  // length k over alphabet + '*'
    i64 multiplicity = 0;
    bool operator==(const ColumnType&) const = default;
  };
  std::vector<ColumnType> columns;
  std::vector<i64> d_lo;               // per string lower bounds
  std::vector<i64> d_hi;               // per string upper bounds
  std::vector<std::vector<i64>> dist;  // delta over alphabet x alphabet
  bool minimize_total = false;
  std::vector<i64> column_order;  // input position -> columns index; may be empty

  i64 length() const {
    i64 L = 0;
    for (const auto& c : columns) L += c.multiplicity;
    return L;
  }
  static std::vector<std::vector<i64>> hamming(std::size_t sigma);
};

struct StringAnswer {
  std::string y;  // reconstructed when the column order is known
  std::vector<std::vector<i64>> counts;  // per column type: output-char counts
  std::vector<i64> distances;            // delta(y, s_i) per string
  i64 total_distance = 0;
};

// Character ranks per column (first occurrence wins), identical columns
// merged into multiplicities. Hamming distances to any output string are
// unchanged. Wildcards survive as wildcards.
//
// The normalized alphabet has min(sigma, k+1) symbols, where sigma is the
// size of the source alphabet (0 means: count the distinct characters that
// appear). A column with c distinct characters can be mismatched entirely
// iff sigma > c, and k+1 normalized symbols are always enough to preserve
// that choice, which matters for farthest-type bounds.
MultiStringsInstance normalize_hamming(const std::vector<std::string>& strings, i64 sigma = 0);

enum class StringProblem {
  Closest,
  Farthest,
  Neighbor,
  OptimalConsensus,
  Dss,
  ClosestToMost,
  CHrc,
  DMismatch,
};

struct StringPresetArgs {
  std::vector<std::string> strings;
  std::vector<std::string> good_strings;  // DSS only
  i64 d = 0;
  i64 d2 = 0;                  // DSS second bound
  std::vector<i64> per_string_d;  // Neighbor
  i64 outliers = 0;            // ClosestToMost
  i64 clusters = 1;            // CHrc
  bool mismatch_farthest = false;  // DMismatch: use the >= d reading
  i64 alphabet_size = 0;       // source alphabet size; 0 = observed characters
};

// A schedule member is a conjunction of instances that must all be
// feasible; its objective is the sum over parts. The best feasible member
// answers the original problem.
struct MultiStringsSchedule {
  struct Member {
    std::vector<MultiStringsInstance> parts;
    std::string label;
  };
  std::vector<Member> members;
};

MultiStringsSchedule string_presets(StringProblem problem, const StringPresetArgs& args,
                                    const EncodeCaps& caps = {});

// ---------------------------------------------------------------------------
// Weighted Set Multicover: cover each universe element j at least demand[j]
// times by a minimum-weight multisubset of the given sets.

struct WsmInstance {
  i64 k = 0;  // universe size
  std::vector<i64> demands;
  struct SetType {
    std::vector<i64> members;  // universe elements, 0-based
    std::vector<i64> weights;  // one per copy, any order
    bool operator==(const SetType&) const = default;
  };
  std::vector<SetType> types;
};

struct WsmAnswer {
  std::vector<i64> counts;  // sets taken per type
  std::vector<std::pair<i64, i64>> chosen;  // (type, weight), lightest first
  i64 cost = 0;
};

// ---------------------------------------------------------------------------
// Swap bribery: minimum-cost swaps making candidate 0 win.

struct BriberyInstance {
  i64 num_candidates = 0;  // candidate 0 is the designated winner
  struct VoterType {
    std::vector<i64> order;  // preference order, most preferred first
    std::vector<std::vector<i64>> swap_cost;  // per candidate pair
    i64 multiplicity = 1;
    bool operator==(const VoterType&) const = default;
  };
  std::vector<VoterType> voter_types;
  std::vector<i64> scoring;  // natural scoring protocol, s1 <= |C|
  i64 copeland_num = 1, copeland_den = 2;  // Copeland^alpha tie credit
};

struct BriberyAnswer {
  std::vector<std::vector<i64>> moved;  // [type][target order index]
  i64 cost = 0;
  std::vector<i64> scenario;  // C1 only: outcome per candidate pair
};

// Outcome of one head-to-head pair: 0 first beats second, 1 second beats
// first, 2 tie. Pairs are ordered (a, b) with a < b, lexicographically.
using ScenarioPredicate = std::function<bool(const std::vector<i64>&)>;

ScenarioPredicate copeland_predicate(i64 num_candidates, i64 alpha_num, i64 alpha_den);

struct BriberySchedule {
  struct Scenario {
    RelationalInstance instance;
    std::vector<i64> outcomes;
  };
  std::vector<Scenario> scenarios;
};

// ---------------------------------------------------------------------------
// Huge n-fold programs: bricks given as types with multiplicities in
// binary; solved over one variable per brick configuration.

struct HugeNFoldInstance {
  std::vector<std::vector<i64>> d;  // r x t global block
  std::vector<std::vector<i64>> a;  // s x t inner block; s = 0 means none
  std::vector<i64> b0;
  struct TypeSpec {
    i64 multiplicity = 1;
    std::vector<i64> b_local;  // length s
    std::vector<i64> lower, upper;  // length t
    std::vector<UnivariateTerm> objective;  // length t
    bool operator==(const TypeSpec&) const = default;
  };
  std::vector<TypeSpec> types;

  i64 t() const { return d.empty() ? 0 : static_cast<i64>(d.front().size()); }
  i64 r() const { return static_cast<i64>(d.size()); }
};

struct HugeAnswer {
  struct Entry {
    i64 type;
    std::vector<i64> config;  // in original (unshifted) coordinates
    i64 count;
  };
  std::vector<Entry> entries;
  i64 objective = 0;

  // Standard-form point of the expansion, brick order = types in order,
  // configurations as listed.
  Point expand(i64 t) const;
};

// ---------------------------------------------------------------------------
// Decoders map solver points back to application answers. They are plain
// data so the CLI can write them as a sidecar and decode later.

struct MultiStringsDecoder {
  MultiStringsInstance source;
};
struct WsmDecoder {
  WsmInstance source;
};
struct BriberyDecoder {
  i64 num_candidates = 0;
  std::vector<std::vector<i64>> type_orders;  // source order per voter type
  std::vector<i64> multiplicities;
  std::vector<std::vector<i64>> move_cost;  // [type][target order index]
  std::vector<i64> scenario;  // C1 only
};
struct HugeDecoder {
  std::vector<std::vector<i64>> configs;  // shifted configurations, in brick order
  std::vector<std::vector<i64>> type_lower;
  std::vector<i64> multiplicities;
};

struct Decoder {
  std::variant<MultiStringsDecoder, WsmDecoder, BriberyDecoder, HugeDecoder> payload;
};

using DecodedAnswer = std::variant<StringAnswer, WsmAnswer, BriberyAnswer, HugeAnswer>;

// ---------------------------------------------------------------------------

std::pair<RelationalInstance, Decoder> encode_multi_strings(const MultiStringsInstance& ms,
                                                            const EncodeCaps& caps = {});
std::pair<RelationalInstance, Decoder> encode_wsm(const WsmInstance& w,
                                                  const EncodeCaps& caps = {});
std::pair<RelationalInstance, Decoder> encode_bribery_scoring(const BriberyInstance& br,
                                                              const EncodeCaps& caps = {});
BriberySchedule encode_bribery_c1(const BriberyInstance& br, const EncodeCaps& caps = {},
                                  ScenarioPredicate winner = nullptr);
std::pair<RelationalInstance, Decoder> encode_huge_nfold(const HugeNFoldInstance& h,
                                                         const EncodeCaps& caps = {});

// Maps a feasible point of the encoded instance back to an application
// answer; throws solver_error when the point is not feasible.
DecodedAnswer decode(const Decoder& dec, const RelationalInstance& encoded, const Point& p);

// ---------------------------------------------------------------------------
// Schedule drivers: members are independent, so they are solved in
// parallel and min-reduced deterministically (objective, then index).

struct ScheduleAnswer {
  bool feasible = false;
  i64 objective = 0;
  i64 member = -1;
  std::vector<StringAnswer> parts;
};

ScheduleAnswer solve_schedule(const MultiStringsSchedule& sched, const SolverConfig& cfg,
                              const EncodeCaps& caps = {});

struct BriberyC1Answer {
  bool feasible = false;
  i64 cost = 0;
  i64 scenario = -1;
  BriberyAnswer answer;
};

BriberyC1Answer solve_bribery_c1(const BriberyInstance& br, const SolverConfig& cfg,
                                 const EncodeCaps& caps = {});

}  // namespace nfold::encoders
