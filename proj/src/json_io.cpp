#include "nfold/json_io.hpp"

#include <json.hpp>

namespace nfold::io {

using json = nlohmann::ordered_json;

namespace {

constexpr i64 kStringThreshold = i64{1} << 53;

json enc_i64(i64 v) {
  if (v >= kStringThreshold || v <= -kStringThreshold) return json(std::to_string(v));
  return json(v);
}

i64 dec_i64(const json& j, const std::string& what) {
  if (j.is_number_integer()) return j.get<i64>();
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      i64 v = std::stoll(j.get<std::string>(), &used);
      if (used != j.get<std::string>().size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw io_error(what + ": not a decimal integer string");
    }
  }
  throw io_error(what + ": expected an integer");
}

json enc_vec(const std::vector<i64>& v) {
  json out = json::array();
  for (i64 x : v) out.push_back(enc_i64(x));
  return out;
}

std::vector<i64> dec_vec(const json& j, const std::string& what) {
  if (!j.is_array()) throw io_error(what + ": expected an array");
  std::vector<i64> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(dec_i64(e, what));
  return out;
}

json enc_mat(const std::vector<std::vector<i64>>& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(enc_vec(row));
  return out;
}

std::vector<std::vector<i64>> dec_mat(const json& j, const std::string& what) {
  if (!j.is_array()) throw io_error(what + ": expected an array of rows");
  std::vector<std::vector<i64>> out;
  out.reserve(j.size());
  for (const auto& row : j) out.push_back(dec_vec(row, what));
  return out;
}

json enc_term(const UnivariateTerm& term) {
  json out;
  switch (term.kind()) {
    case UnivariateTerm::Kind::Zero:
      out["kind"] = "zero";
      break;
    case UnivariateTerm::Kind::Linear:
      out["kind"] = "linear";
      out["coeff"] = enc_i64(term.coeff());
      break;
    case UnivariateTerm::Kind::Pwl: {
      out["kind"] = "pwl";
      json pts = json::array();
      for (const auto& p : term.points()) pts.push_back(json::array({enc_i64(p.x), enc_i64(p.y)}));
      out["points"] = std::move(pts);
      break;
    }
    case UnivariateTerm::Kind::Custom:
      throw io_error("custom objective terms cannot be serialized");
  }
  return out;
}

UnivariateTerm dec_term(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw io_error("objective term: expected an object with kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return UnivariateTerm::zero();
  if (kind == "linear") return UnivariateTerm::linear(dec_i64(j.at("coeff"), "linear coeff"));
  if (kind == "pwl") {
    std::vector<PwlPoint> pts;
    for (const auto& e : j.at("points")) {
      if (!e.is_array() || e.size() != 2) throw io_error("pwl point: expected [x, y]");
      pts.push_back({dec_i64(e[0], "pwl x"), dec_i64(e[1], "pwl y")});
    }
    return UnivariateTerm::pwl(std::move(pts));
  }
  throw io_error("objective term: unknown kind '" + kind + "'");
}

std::string rel_symbol(Rel r) {
  switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Eq: return "=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "=";
}

Rel rel_of_symbol(const std::string& s) {
  if (s == "<") return Rel::Lt;
  if (s == "<=") return Rel::Le;
  if (s == "=") return Rel::Eq;
  if (s == ">=") return Rel::Ge;
  if (s == ">") return Rel::Gt;
  throw io_error("unknown relation symbol '" + s + "'");
}

json parse_text(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw io_error(what + ": invalid JSON");
  return j;
}

json enc_multi_strings(const encoders::MultiStringsInstance& ms) {
  json j;
  j["k"] = ms.k;
  j["alphabet"] = ms.alphabet;
  json cols = json::array();
  for (const auto& c : ms.columns)
    cols.push_back(json{{"pattern", c.pattern}, {"multiplicity", enc_i64(c.multiplicity)}});
  j["columns"] = std::move(cols);
  j["d_lo"] = enc_vec(ms.d_lo);
  j["d_hi"] = enc_vec(ms.d_hi);
  j["dist"] = enc_mat(ms.dist);
  j["minimize_total"] = ms.minimize_total;
  if (!ms.column_order.empty()) j["column_order"] = enc_vec(ms.column_order);
  return j;
}

encoders::MultiStringsInstance dec_multi_strings(const json& j) {
  encoders::MultiStringsInstance ms;
  ms.k = dec_i64(j.at("k"), "k");
  ms.alphabet = j.at("alphabet").get<std::string>();
  for (const auto& c : j.at("columns"))
    ms.columns.push_back({c.at("pattern").get<std::string>(),
                          dec_i64(c.at("multiplicity"), "column multiplicity")});
  ms.d_lo = dec_vec(j.at("d_lo"), "d_lo");
  ms.d_hi = dec_vec(j.at("d_hi"), "d_hi");
  if (j.contains("dist"))
    ms.dist = dec_mat(j.at("dist"), "dist");
  else
    ms.dist = encoders::MultiStringsInstance::hamming(ms.alphabet.size());
  ms.minimize_total = j.value("minimize_total", false);
  if (j.contains("column_order")) ms.column_order = dec_vec(j.at("column_order"), "column_order");
  return ms;
}

json enc_wsm(const encoders::WsmInstance& w) {
  json j;
  j["k"] = w.k;
  j["demands"] = enc_vec(w.demands);
  json types = json::array();
  for (const auto& ty : w.types)
    types.push_back(json{{"members", enc_vec(ty.members)}, {"weights", enc_vec(ty.weights)}});
  j["types"] = std::move(types);
  return j;
}

encoders::WsmInstance dec_wsm(const json& j) {
  encoders::WsmInstance w;
  w.k = dec_i64(j.at("k"), "k");
  w.demands = dec_vec(j.at("demands"), "demands");
  for (const auto& ty : j.at("types"))
    w.types.push_back({dec_vec(ty.at("members"), "members"), dec_vec(ty.at("weights"), "weights")});
  return w;
}

json enc_bribery(const encoders::BriberyInstance& br) {
  json j;
  j["candidates"] = br.num_candidates;
  json types = json::array();
  for (const auto& vt : br.voter_types)
    types.push_back(json{{"order", enc_vec(vt.order)},
                         {"swap_cost", enc_mat(vt.swap_cost)},
                         {"multiplicity", enc_i64(vt.multiplicity)}});
  j["voter_types"] = std::move(types);
  if (!br.scoring.empty()) j["scoring"] = enc_vec(br.scoring);
  j["copeland_alpha"] = json{{"num", br.copeland_num}, {"den", br.copeland_den}};
  return j;
}

encoders::BriberyInstance dec_bribery(const json& j) {
  encoders::BriberyInstance br;
  br.num_candidates = dec_i64(j.at("candidates"), "candidates");
  for (const auto& vt : j.at("voter_types")) {
    encoders::BriberyInstance::VoterType v;
    v.order = dec_vec(vt.at("order"), "order");
    v.swap_cost = dec_mat(vt.at("swap_cost"), "swap_cost");
    v.multiplicity = vt.contains("multiplicity") ? dec_i64(vt.at("multiplicity"), "multiplicity") : 1;
    br.voter_types.push_back(std::move(v));
  }
  if (j.contains("scoring")) br.scoring = dec_vec(j.at("scoring"), "scoring");
  if (j.contains("copeland_alpha")) {
    br.copeland_num = dec_i64(j.at("copeland_alpha").at("num"), "copeland num");
    br.copeland_den = dec_i64(j.at("copeland_alpha").at("den"), "copeland den");
  }
  return br;
}

json enc_huge(const encoders::HugeNFoldInstance& h) {
  json j;
  j["D"] = enc_mat(h.d);
  if (!h.a.empty()) j["A"] = enc_mat(h.a);
  j["b0"] = enc_vec(h.b0);
  json types = json::array();
  for (const auto& ty : h.types) {
    json tj;
    tj["multiplicity"] = enc_i64(ty.multiplicity);
    if (!ty.b_local.empty()) tj["b_local"] = enc_vec(ty.b_local);
    tj["lower"] = enc_vec(ty.lower);
    tj["upper"] = enc_vec(ty.upper);
    json terms = json::array();
    for (const auto& term : ty.objective) terms.push_back(enc_term(term));
    tj["objective"] = std::move(terms);
    types.push_back(std::move(tj));
  }
  j["types"] = std::move(types);
  return j;
}

encoders::HugeNFoldInstance dec_huge(const json& j) {
  encoders::HugeNFoldInstance h;
  h.d = dec_mat(j.at("D"), "D");
  if (j.contains("A")) h.a = dec_mat(j.at("A"), "A");
  h.b0 = dec_vec(j.at("b0"), "b0");
  for (const auto& tj : j.at("types")) {
    encoders::HugeNFoldInstance::TypeSpec ty;
    ty.multiplicity = dec_i64(tj.at("multiplicity"), "multiplicity");
    if (tj.contains("b_local")) ty.b_local = dec_vec(tj.at("b_local"), "b_local");
    ty.lower = dec_vec(tj.at("lower"), "lower");
    ty.upper = dec_vec(tj.at("upper"), "upper");
    for (const auto& term : tj.at("objective")) ty.objective.push_back(dec_term(term));
    h.types.push_back(std::move(ty));
  }
  return h;
}

}  // namespace

RelationalInstance parse_instance(const std::string& text) {
  json j = parse_text(text, "instance");
  if (!j.is_object()) throw io_error("instance: expected a JSON object");
  for (const char* field : {"r", "t", "n", "D", "b0", "b_local", "lower", "upper", "objective"})
    if (!j.contains(field)) throw io_error(std::string("instance: missing field '") + field + "'");

  CombNFoldInstance inst;
  const i64 r = dec_i64(j.at("r"), "r");
  const i64 t = dec_i64(j.at("t"), "t");
  inst.n = dec_i64(j.at("n"), "n");
  inst.bimatrix.d = dec_mat(j.at("D"), "D");
  if (static_cast<i64>(inst.bimatrix.d.size()) != r) throw io_error("instance: D has r rows expected");
  for (const auto& row : inst.bimatrix.d)
    if (static_cast<i64>(row.size()) != t) throw io_error("instance: D has t columns expected");
  inst.b0 = dec_vec(j.at("b0"), "b0");
  inst.b_local = dec_vec(j.at("b_local"), "b_local");
  inst.lower = dec_vec(j.at("lower"), "lower");
  inst.upper = dec_vec(j.at("upper"), "upper");
  if (!j.at("objective").is_array()) throw io_error("instance: objective must be an array");
  for (const auto& term : j.at("objective")) inst.objective.terms.push_back(dec_term(term));

  RelationalInstance rel = RelationalInstance::equalities(std::move(inst));
  if (j.contains("relations")) {
    const auto& rj = j.at("relations");
    if (rj.contains("global")) {
      rel.global_rel.clear();
      for (const auto& s : rj.at("global")) rel.global_rel.push_back(rel_of_symbol(s.get<std::string>()));
    }
    if (rj.contains("local")) {
      rel.local_rel.clear();
      for (const auto& s : rj.at("local")) rel.local_rel.push_back(rel_of_symbol(s.get<std::string>()));
    }
    if (static_cast<i64>(rel.global_rel.size()) != r || static_cast<i64>(rel.local_rel.size()) != rel.base.n)
      throw io_error("instance: relation vector lengths must be r and n");
  }
  return rel;
}

std::string print_instance(const RelationalInstance& rel) {
  json j;
  j["r"] = rel.base.r();
  j["t"] = rel.base.t();
  j["n"] = rel.base.n;
  j["D"] = enc_mat(rel.base.bimatrix.d);
  j["b0"] = enc_vec(rel.base.b0);
  j["b_local"] = enc_vec(rel.base.b_local);
  j["lower"] = enc_vec(rel.base.lower);
  j["upper"] = enc_vec(rel.base.upper);
  json terms = json::array();
  for (const auto& term : rel.base.objective.terms) terms.push_back(enc_term(term));
  j["objective"] = std::move(terms);
  if (!rel.all_equalities()) {
    json rj;
    json g = json::array(), l = json::array();
    for (Rel x : rel.global_rel) g.push_back(rel_symbol(x));
    for (Rel x : rel.local_rel) l.push_back(rel_symbol(x));
    rj["global"] = std::move(g);
    rj["local"] = std::move(l);
    j["relations"] = std::move(rj);
  }
  return j.dump(2);
}

std::string report_json(const SolveReport& rep) {
  json j;
  switch (rep.status) {
    case SolveStatus::Optimal: j["status"] = "optimal"; break;
    case SolveStatus::Infeasible: j["status"] = "infeasible"; break;
    case SolveStatus::Error: j["status"] = "error"; break;
  }
  if (rep.objective_value) j["objective"] = enc_i64(*rep.objective_value);
  if (rep.point) j["point"] = enc_vec(*rep.point);
  j["heuristic"] = rep.heuristic;
  j["iterations"] = static_cast<i64>(rep.trace.size());
  if (!rep.trace.empty()) {
    json tr = json::array();
    for (const auto& e : rep.trace)
      tr.push_back(json{{"iteration", e.iteration}, {"alpha", enc_i64(e.alpha)}, {"drop", enc_i64(e.drop)}});
    j["trace"] = std::move(tr);
  }
  if (!rep.error.empty()) j["error"] = rep.error;
  return j.dump(2);
}

std::string report_text(const SolveReport& rep) {
  std::string out;
  switch (rep.status) {
    case SolveStatus::Optimal:
      out += rep.heuristic ? "status: optimal (heuristic local optimum)\n" : "status: optimal\n";
      break;
    case SolveStatus::Infeasible: out += "status: infeasible\n"; break;
    case SolveStatus::Error: out += "status: error\n"; break;
  }
  if (rep.objective_value) out += "objective: " + std::to_string(*rep.objective_value) + "\n";
  if (rep.point) {
    out += "point:";
    for (i64 v : *rep.point) out += " " + std::to_string(v);
    out += "\n";
  }
  out += "iterations: " + std::to_string(rep.trace.size()) + "\n";
  for (const auto& e : rep.trace)
    out += "  step " + std::to_string(e.iteration) + ": alpha=" + std::to_string(e.alpha) +
           " drop=" + std::to_string(e.drop) + "\n";
  if (!rep.error.empty()) out += "error: " + rep.error + "\n";
  return out;
}

encoders::Decoder parse_decoder(const std::string& text) {
  json j = parse_text(text, "decoder");
  const std::string kind = j.at("kind").get<std::string>();
  encoders::Decoder dec;
  if (kind == "multi-strings") {
    dec.payload = encoders::MultiStringsDecoder{dec_multi_strings(j.at("source"))};
  } else if (kind == "wsm") {
    dec.payload = encoders::WsmDecoder{dec_wsm(j.at("source"))};
  } else if (kind == "bribery") {
    encoders::BriberyDecoder b;
    b.num_candidates = dec_i64(j.at("candidates"), "candidates");
    b.type_orders = dec_mat(j.at("type_orders"), "type_orders");
    b.multiplicities = dec_vec(j.at("multiplicities"), "multiplicities");
    b.move_cost = dec_mat(j.at("move_cost"), "move_cost");
    if (j.contains("scenario")) b.scenario = dec_vec(j.at("scenario"), "scenario");
    dec.payload = std::move(b);
  } else if (kind == "huge") {
    encoders::HugeDecoder h;
    h.configs = dec_mat(j.at("configs"), "configs");
    h.type_lower = dec_mat(j.at("type_lower"), "type_lower");
    h.multiplicities = dec_vec(j.at("multiplicities"), "multiplicities");
    dec.payload = std::move(h);
  } else {
    throw io_error("decoder: unknown kind '" + kind + "'");
  }
  return dec;
}

std::string print_decoder(const encoders::Decoder& dec) {
  json j;
  if (const auto* ms = std::get_if<encoders::MultiStringsDecoder>(&dec.payload)) {
    j["kind"] = "multi-strings";
    j["source"] = enc_multi_strings(ms->source);
  } else if (const auto* w = std::get_if<encoders::WsmDecoder>(&dec.payload)) {
    j["kind"] = "wsm";
    j["source"] = enc_wsm(w->source);
  } else if (const auto* b = std::get_if<encoders::BriberyDecoder>(&dec.payload)) {
    j["kind"] = "bribery";
    j["candidates"] = b->num_candidates;
    j["type_orders"] = enc_mat(b->type_orders);
    j["multiplicities"] = enc_vec(b->multiplicities);
    j["move_cost"] = enc_mat(b->move_cost);
    if (!b->scenario.empty()) j["scenario"] = enc_vec(b->scenario);
  } else {
    const auto& h = std::get<encoders::HugeDecoder>(dec.payload);
    j["kind"] = "huge";
    j["configs"] = enc_mat(h.configs);
    j["type_lower"] = enc_mat(h.type_lower);
    j["multiplicities"] = enc_vec(h.multiplicities);
  }
  return j.dump(2);
}

encoders::MultiStringsInstance parse_multi_strings(const std::string& text) {
  return dec_multi_strings(parse_text(text, "multi strings input"));
}

std::vector<std::string> parse_string_lines(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

encoders::WsmInstance parse_wsm(const std::string& text) {
  return dec_wsm(parse_text(text, "wsm input"));
}

encoders::BriberyInstance parse_bribery(const std::string& text) {
  return dec_bribery(parse_text(text, "bribery input"));
}

encoders::HugeNFoldInstance parse_huge(const std::string& text) {
  return dec_huge(parse_text(text, "huge input"));
}

std::string answer_json(const encoders::DecodedAnswer& ans) {
  json j;
  if (const auto* s = std::get_if<encoders::StringAnswer>(&ans)) {
    j["kind"] = "string";
    if (!s->y.empty()) j["y"] = s->y;
    j["counts"] = enc_mat(s->counts);
    j["distances"] = enc_vec(s->distances);
    j["total_distance"] = enc_i64(s->total_distance);
  } else if (const auto* w = std::get_if<encoders::WsmAnswer>(&ans)) {
    j["kind"] = "wsm";
    j["counts"] = enc_vec(w->counts);
    json ch = json::array();
    for (const auto& [type, weight] : w->chosen)
      ch.push_back(json{{"type", type}, {"weight", enc_i64(weight)}});
    j["chosen"] = std::move(ch);
    j["cost"] = enc_i64(w->cost);
  } else if (const auto* b = std::get_if<encoders::BriberyAnswer>(&ans)) {
    j["kind"] = "bribery";
    j["moved"] = enc_mat(b->moved);
    j["cost"] = enc_i64(b->cost);
    if (!b->scenario.empty()) j["scenario"] = enc_vec(b->scenario);
  } else {
    const auto& h = std::get<encoders::HugeAnswer>(ans);
    j["kind"] = "huge";
    json es = json::array();
    for (const auto& e : h.entries)
      es.push_back(json{{"type", e.type}, {"config", enc_vec(e.config)}, {"count", enc_i64(e.count)}});
    j["bricks"] = std::move(es);
    j["objective"] = enc_i64(h.objective);
  }
  return j.dump(2);
}

std::string answer_text(const encoders::DecodedAnswer& ans) {
  std::string out;
  if (const auto* s = std::get_if<encoders::StringAnswer>(&ans)) {
    if (!s->y.empty()) out += "y: " + s->y + "\n";
    out += "total distance: " + std::to_string(s->total_distance) + "\n";
    out += "per-string distances:";
    for (i64 d : s->distances) out += " " + std::to_string(d);
    out += "\n";
  } else if (const auto* w = std::get_if<encoders::WsmAnswer>(&ans)) {
    out += "cost: " + std::to_string(w->cost) + "\n";
    out += "sets taken:";
    for (const auto& [type, weight] : w->chosen)
      out += " (type " + std::to_string(type) + ", weight " + std::to_string(weight) + ")";
    out += "\n";
  } else if (const auto* b = std::get_if<encoders::BriberyAnswer>(&ans)) {
    out += "cost: " + std::to_string(b->cost) + "\n";
    for (std::size_t i = 0; i < b->moved.size(); ++i) {
      out += "type " + std::to_string(i) + " ->";
      for (std::size_t j = 0; j < b->moved[i].size(); ++j)
        if (b->moved[i][j] != 0)
          out += " order" + std::to_string(j) + " x" + std::to_string(b->moved[i][j]);
      out += "\n";
    }
  } else {
    const auto& h = std::get<encoders::HugeAnswer>(ans);
    out += "objective: " + std::to_string(h.objective) + "\n";
    for (const auto& e : h.entries) {
      out += "type " + std::to_string(e.type) + " config [";
      for (std::size_t j = 0; j < e.config.size(); ++j)
        out += (j ? " " : "") + std::to_string(e.config[j]);
      out += "] x" + std::to_string(e.count) + "\n";
    }
  }
  return out;
}

}  // namespace nfold::io
