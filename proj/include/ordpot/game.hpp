#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ordpot {

/// A finite normal-form game: n players, a finite action set per player,
/// and one flat utility tensor per player.
///
/// Utility tensors are stored flat in mixed-radix order with player 0 most
/// significant, so utilities[i][profile_index(a, action_counts)] is player
/// i's utility at the joint action a. The same layout is used by the JSON
/// file format and by every module downstream.
struct Game {
  int num_players = 0;
  std::vector<int> action_counts;
  std::vector<std::vector<double>> utilities;  // [player][flat profile index]

  int num_profiles() const;
  bool same_shape(const Game& other) const;
};

/// One action choice per player; actions[i] < action_counts[i].
using Profile = std::vector<int>;

// Mixed-radix codec between profiles and flat indices,
// index = sum_i actions[i] * prod_{j>i} action_counts[j].
int profile_index(const Profile& profile, const std::vector<int>& action_counts);
Profile profile_from_index(int index, const std::vector<int>& action_counts);

// Number of joint action profiles; throws if the product overflows int.
int num_profiles(const std::vector<int>& action_counts);

/// Validates shapes and finiteness and returns the assembled game.
/// Utilities are stored untouched.
Game make_game(int num_players, std::vector<int> action_counts,
               std::vector<std::vector<double>> utilities);

/// Each utility entry is drawn independently and uniformly from the integer
/// set {1, ..., |A|} where |A| is the number of profiles. Deterministic per
/// seed (mt19937_64).
Game random_game(const std::vector<int>& action_counts, std::uint64_t seed);

/// Jointly rescales all rewards to [0,1]:
/// u'_i(a) = (u_i(a) - m) / (M - m) with m, M the min/max over all players
/// and profiles. A constant game maps to the all-zero game.
Game normalize_rewards(const Game& game);

// JSON file format: {"num_players": n, "action_counts": [...],
// "utilities": [[...], ...]} with each tensor flat in canonical index order.
std::string game_to_json(const Game& game);
Game game_from_json(const std::string& text);
Game load_game(const std::string& path);
void save_game(const Game& game, const std::string& path);

}  // namespace ordpot
