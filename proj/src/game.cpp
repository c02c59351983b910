#include "ordpot/game.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ordpot {

int num_profiles(const std::vector<int>& action_counts) {
  if (action_counts.empty()) {
    throw std::invalid_argument("action_counts must be nonempty");
  }
  std::int64_t product = 1;
  for (std::size_t i = 0; i < action_counts.size(); ++i) {
    if (action_counts[i] < 1) {
      throw std::invalid_argument("action_counts[" + std::to_string(i) +
                                  "] must be >= 1, got " +
                                  std::to_string(action_counts[i]));
    }
    product *= action_counts[i];
    if (product > std::numeric_limits<int>::max()) {
      throw std::invalid_argument("profile space too large");
    }
  }
  return static_cast<int>(product);
}

int Game::num_profiles() const { return ordpot::num_profiles(action_counts); }

bool Game::same_shape(const Game& other) const {
  return action_counts == other.action_counts;
}

int profile_index(const Profile& profile, const std::vector<int>& action_counts) {
  if (profile.size() != action_counts.size()) {
    throw std::invalid_argument("profile has " + std::to_string(profile.size()) +
                                " coordinates, expected " +
                                std::to_string(action_counts.size()));
  }
  std::int64_t index = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] < 0 || profile[i] >= action_counts[i]) {
      throw std::invalid_argument("action " + std::to_string(profile[i]) +
                                  " out of range for player " + std::to_string(i));
    }
    index = index * action_counts[i] + profile[i];
  }
  return static_cast<int>(index);
}

Profile profile_from_index(int index, const std::vector<int>& action_counts) {
  const int total = num_profiles(action_counts);
  if (index < 0 || index >= total) {
    throw std::invalid_argument("profile index " + std::to_string(index) +
                                " out of range [0," + std::to_string(total) + ")");
  }
  Profile profile(action_counts.size());
  for (std::size_t i = action_counts.size(); i-- > 0;) {
    profile[i] = index % action_counts[i];
    index /= action_counts[i];
  }
  return profile;
}

Game make_game(int num_players, std::vector<int> action_counts,
               std::vector<std::vector<double>> utilities) {
  if (num_players < 1) {
    throw std::invalid_argument("num_players must be >= 1");
  }
  if (static_cast<int>(action_counts.size()) != num_players) {
    throw std::invalid_argument("action_counts has " +
                                std::to_string(action_counts.size()) +
                                " entries, expected " + std::to_string(num_players));
  }
  const int total = num_profiles(action_counts);
  if (static_cast<int>(utilities.size()) != num_players) {
    throw std::invalid_argument("expected " + std::to_string(num_players) +
                                " utility tensors, got " +
                                std::to_string(utilities.size()));
  }
  for (int i = 0; i < num_players; ++i) {
    if (static_cast<int>(utilities[i].size()) != total) {
      throw std::invalid_argument(
          "utility tensor for player " + std::to_string(i) + " has length " +
          std::to_string(utilities[i].size()) + ", expected " +
          std::to_string(total));
    }
    for (int a = 0; a < total; ++a) {
      if (!std::isfinite(utilities[i][a])) {
        throw std::invalid_argument("non-finite utility for player " +
                                    std::to_string(i) + " at profile index " +
                                    std::to_string(a));
      }
    }
  }
  Game game;
  game.num_players = num_players;
  game.action_counts = std::move(action_counts);
  game.utilities = std::move(utilities);
  return game;
}

Game random_game(const std::vector<int>& action_counts, std::uint64_t seed) {
  const int total = num_profiles(action_counts);
  const int n = static_cast<int>(action_counts.size());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> uniform(1, total);
  std::vector<std::vector<double>> utilities(n, std::vector<double>(total));
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < total; ++a) {
      utilities[i][a] = static_cast<double>(uniform(rng));
    }
  }
  return make_game(n, action_counts, std::move(utilities));
}

Game normalize_rewards(const Game& game) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& tensor : game.utilities) {
    for (double u : tensor) {
      lo = std::min(lo, u);
      hi = std::max(hi, u);
    }
  }
  Game out = game;
  if (lo == hi) {
    for (auto& tensor : out.utilities) {
      std::fill(tensor.begin(), tensor.end(), 0.0);
    }
    return out;
  }
  const double span = hi - lo;
  for (auto& tensor : out.utilities) {
    for (double& u : tensor) {
      u = (u - lo) / span;
    }
  }
  return out;
}

std::string game_to_json(const Game& game) {
  nlohmann::json j;
  j["num_players"] = game.num_players;
  j["action_counts"] = game.action_counts;
  j["utilities"] = game.utilities;
  return j.dump(2);
}

Game game_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid game JSON: ") + e.what());
  }
  try {
    return make_game(j.at("num_players").get<int>(),
                     j.at("action_counts").get<std::vector<int>>(),
                     j.at("utilities").get<std::vector<std::vector<double>>>());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed game JSON: ") + e.what());
  }
}

Game load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open game file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return game_from_json(buffer.str());
}

void save_game(const Game& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot write game file: " + path);
  }
  out << game_to_json(game) << '\n';
}

}  // namespace ordpot
