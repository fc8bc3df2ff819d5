#include "splitkit/json_io.hpp"

#include "splitkit/error.hpp"

namespace splitkit {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ContractViolation(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

unsigned as_unsigned(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ContractViolation(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<unsigned>();
}

std::vector<unsigned> as_elements(const json& j, const char* what) {
  if (!j.is_array()) throw ContractViolation(std::string(what) + " must be an array of elements");
  std::vector<unsigned> out;
  for (const auto& e : j) out.push_back(as_unsigned(e, what));
  return out;
}

json elements_json(SubsetMask s) { return s.elements(); }

}  // namespace

json board_to_json(const Family& board) { return {{"k", board.k()}, {"sets", board.to_sets()}}; }

Family board_from_json(const json& j) {
  if (!j.is_object()) throw ContractViolation("board must be a JSON object");
  if (j.contains("preset")) {
    const json& preset = j.at("preset");
    if (!preset.is_string()) throw ContractViolation("preset must be a string");
    const auto name = preset.get<std::string>();
    if (name == "grid") {
      const json& dims = field(j, "dims");
      if (!dims.is_array()) throw ContractViolation("dims must be an array");
      std::vector<unsigned> d;
      for (const auto& x : dims) d.push_back(as_unsigned(x, "grid dimension"));
      bool diagonals = false;
      if (j.contains("diagonals")) {
        if (!j.at("diagonals").is_boolean()) throw ContractViolation("diagonals must be a boolean");
        diagonals = j.at("diagonals").get<bool>();
      }
      return grid_board(d, diagonals);
    }
    if (name == "cyclic") return cyclic_board(as_unsigned(field(j, "k"), "k"), as_unsigned(field(j, "width"), "width"));
    throw ContractViolation("unknown preset \"" + name + "\"");
  }
  const unsigned k = as_unsigned(field(j, "k"), "k");
  if (k > kMaxGround) throw ContractViolation("k must be at most 64");
  const json& sets = field(j, "sets");
  if (!sets.is_array()) throw ContractViolation("sets must be an array");
  std::vector<std::vector<unsigned>> members;
  for (const auto& s : sets) members.push_back(as_elements(s, "set element"));
  return Family::from_sets(k, members);
}

json state_to_json(const GameState& state) {
  json j;
  j["board"] = board_to_json(state.board());
  j["first"] = std::string(to_string(state.first()));
  j["splitClaimed"] = elements_json(state.split_claimed());
  j["skewClaimed"] = elements_json(state.skew_claimed());
  j["over"] = state.over();
  j["toMove"] = state.over() ? json(nullptr) : json(std::string(to_string(state.to_move())));
  const auto winner = state.outcome();
  j["winner"] = winner ? json(std::string(to_string(*winner))) : json(nullptr);
  if (const auto i = state.unsplit_member()) {
    j["unsplitSet"] = {{"index", *i + 1}, {"set", state.board()[*i].elements()}};
  } else {
    j["unsplitSet"] = nullptr;
  }
  return j;
}

GameState state_from_json(const json& j) {
  Family board = board_from_json(field(j, "board"));
  const json& first = field(j, "first");
  const auto player = first.is_string() ? parse_player(first.get<std::string>()) : std::nullopt;
  if (!player) throw ContractViolation("first must be \"Split\" or \"Skew\"");
  const unsigned k = board.k();
  const auto split = SubsetMask::of(k, as_elements(field(j, "splitClaimed"), "claimed element"));
  const auto skew = SubsetMask::of(k, as_elements(field(j, "skewClaimed"), "claimed element"));
  return GameState::from_claims(std::move(board), *player, split, skew);
}

json regions_to_json(const RegionVector& r) {
  return {{"n", r.n()}, {"sizes", std::vector<std::uint64_t>(r.sizes().begin(), r.sizes().end())}};
}

RegionVector regions_from_json(const json& j) {
  if (j.is_array()) {
    std::vector<std::uint64_t> sizes;
    for (const auto& x : j) sizes.push_back(as_unsigned(x, "region size"));
    const auto n = static_cast<unsigned>(std::countr_zero(sizes.size()));
    if (sizes.empty() || (std::size_t{1} << n) != sizes.size()) {
      throw ContractViolation("a region vector needs 2^n entries");
    }
    return RegionVector(n, std::move(sizes));
  }
  const unsigned n = as_unsigned(field(j, "n"), "n");
  std::vector<std::uint64_t> sizes;
  for (const auto& x : field(j, "sizes")) sizes.push_back(as_unsigned(x, "region size"));
  return RegionVector(n, std::move(sizes));
}

json arrangement_to_json(const Arrangement2& a) {
  return {{"a1", a.a1}, {"b", a.b}, {"a2", a.a2}, {"d", a.d}};
}

json pairing_to_json(const Pairing& p) {
  json pairs = json::array();
  for (const auto& [x, y] : p.pairs) pairs.push_back({x, y});
  return {{"player", std::string(to_string(p.player))}, {"pairs", pairs}};
}

}  // namespace splitkit
