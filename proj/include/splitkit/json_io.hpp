#pragma once

// JSON forms of boards, game states, region vectors and pairings. Elements are
// 1-indexed; counts are decimal strings.

#include <json.hpp>

#include "splitkit/counting.hpp"
#include "splitkit/game.hpp"
#include "splitkit/setcore.hpp"

namespace splitkit {

/// {"k": int, "sets": [[int, ...], ...]}
nlohmann::json board_to_json(const Family& board);

/// Accepts {"k", "sets"}, {"preset": "grid", "dims": [...], "diagonals": bool}
/// or {"preset": "cyclic", "k": int, "width": int}. Throws ContractViolation on
/// malformed input.
Family board_from_json(const nlohmann::json& j);

/// Board, first mover, both claimed sets, toMove, over, winner, and the first
/// unsplit member after a Skew win.
nlohmann::json state_to_json(const GameState& state);
GameState state_from_json(const nlohmann::json& j);

nlohmann::json regions_to_json(const RegionVector& r);
RegionVector regions_from_json(const nlohmann::json& j);

nlohmann::json arrangement_to_json(const Arrangement2& a);

nlohmann::json pairing_to_json(const Pairing& p);

inline std::string count_string(const BigCount& c) { return c.get_str(); }

}  // namespace splitkit
