#include <doctest.h>

#include <numeric>

#include "share/foraging.hpp"
#include "share/metrics.hpp"

using namespace share;

namespace {

ChannelAssignment select_with(int channels, const std::vector<int>& budgets,
                              const StrategyAssignment& strategies, std::uint64_t seed) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < budgets.size(); ++i) ids.push_back("net" + std::to_string(i + 1));
  Mediator mediator(channels);
  for (const auto& id : ids) mediator.register_network(id);
  std::mt19937_64 rng(seed);
  return run_selection(ids, budgets, strategies, mediator, rng);
}

}  // namespace

TEST_CASE("greedy_pick prefers unoccupied channels, then argmax, then low index") {
  CHECK(greedy_pick({std::nullopt, std::nullopt, std::nullopt}, {}) == 0);
  CHECK(greedy_pick({Selectivity{1.0}, std::nullopt, Selectivity{0.5}}, {}) == 1);
  CHECK(greedy_pick({Selectivity{1.0}, Selectivity{1.0}, Selectivity{0.5}}, {0}) == 1);
  CHECK_THROWS_WITH_AS(greedy_pick({Selectivity{1.0}}, {0}), "budget exceeds channels", Error);
}

TEST_CASE("random_pick is uniform over the network's free channels") {
  std::mt19937_64 rng(123);

  SUBCASE("forced choice") {
    for (int i = 0; i < 20; ++i) CHECK(random_pick(2, {0}, rng) == 1);
  }
  SUBCASE("empirical uniformity at N = 2") {
    int zeros = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i)
      if (random_pick(2, {}, rng) == 0) ++zeros;
    // 3 sigma around p = 1/2
    const double sigma = std::sqrt(0.25 * draws);
    CHECK(std::abs(zeros - draws / 2.0) < 3 * sigma);
  }
  SUBCASE("same seed, same sequence") {
    std::mt19937_64 a(9), b(9);
    for (int i = 0; i < 50; ++i) CHECK(random_pick(10, {3, 4}, a) == random_pick(10, {3, 4}, b));
  }
}

TEST_CASE("run_selection under the greedy strategy") {
  SUBCASE("two single-agent networks split two channels with no collision") {
    const auto result = select_with(2, {1, 1}, StrategyAssignment::all_share(2), 1);
    CHECK(result.channels[0] == std::vector<int>{0});
    CHECK(result.channels[1] == std::vector<int>{1});
    CHECK(!collision_occurred(result));
  }
  SUBCASE("a lone network takes the lowest-index channels") {
    const auto result = select_with(5, {3}, StrategyAssignment::all_share(1), 1);
    CHECK(result.channels[0] == std::vector<int>{0, 1, 2});
  }
  SUBCASE("budgets are filled exactly") {
    const auto result = select_with(12, {3, 2, 4}, StrategyAssignment::all_share(3), 1);
    for (std::size_t i = 0; i < result.channels.size(); ++i)
      CHECK(static_cast<int>(result.channels[i].size()) == std::vector<int>{3, 2, 4}[i]);
  }
  SUBCASE("over-budget request is rejected before any selection") {
    Mediator mediator(2);
    mediator.register_network("net1");
    mediator.register_network("net2");
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(
        run_selection({"net1", "net2"}, {2, 1}, StrategyAssignment::all_share(2), mediator, rng),
        Error);
    CHECK(mediator.occupancy() == std::vector<int>{0, 0});
  }
}

TEST_CASE("two random single-agent networks on two channels collide half the time") {
  int collisions = 0;
  const int runs = 10000;
  for (int k = 0; k < runs; ++k) {
    const auto result =
        select_with(2, {1, 1}, StrategyAssignment::all_random(2), static_cast<std::uint64_t>(k));
    if (collision_occurred(result)) ++collisions;
  }
  CHECK(std::abs(collisions / static_cast<double>(runs) - 0.5) < 0.02);
}

TEST_CASE("random strategies are reproducible from the seed") {
  const auto a = select_with(10, {2, 3}, StrategyAssignment::all_random(2), 77);
  const auto b = select_with(10, {2, 3}, StrategyAssignment::all_random(2), 77);
  CHECK(a.channels == b.channels);
}

TEST_CASE("within one network the selected channels are distinct") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto result = select_with(8, {4, 3}, StrategyAssignment::all_random(2), seed);
    for (const auto& set : result.channels) {
      std::set<int> unique(set.begin(), set.end());
      CHECK(unique.size() == set.size());
    }
  }
}

TEST_CASE("system_fitness is the minimum agent fitness") {
  ChannelAssignment a;
  a.num_channels = 4;
  a.network_ids = {"x", "y", "z"};

  SUBCASE("all distinct") {
    a.channels = {{0}, {1}, {2}};
    CHECK(system_fitness(a) == doctest::Approx(1.0));
  }
  SUBCASE("one shared channel") {
    a.channels = {{0}, {0}, {2}};
    CHECK(system_fitness(a) == doctest::Approx(0.5));
  }
  SUBCASE("three networks on one channel") {
    a.channels = {{3}, {3}, {3}};
    CHECK(system_fitness(a) == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("no agents") {
    a.channels = {{}, {}, {}};
    CHECK_THROWS_AS(system_fitness(a), Error);
  }
}

TEST_CASE("ess_deviation_check") {
  SUBCASE("greedy outcomes admit no profitable deviation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<int> count(1, 4);
      const int n = 2 + static_cast<int>(seed % 4);
      std::vector<int> budgets;
      int total = 0;
      for (int i = 0; i < n; ++i) {
        budgets.push_back(count(rng));
        total += budgets.back();
      }
      const int channels = total + static_cast<int>(seed % 3);
      const auto result =
          select_with(channels, budgets, StrategyAssignment::all_share(n), seed);
      CHECK(system_fitness(result) == doctest::Approx(1.0));
      CHECK(ess_deviation_check(result));
    }
  }
  SUBCASE("a crowded channel beside an empty one invites deviation") {
    ChannelAssignment a;
    a.num_channels = 3;
    a.network_ids = {"x", "y"};
    a.channels = {{0}, {0}};  // channel 1 and 2 free
    CHECK(!ess_deviation_check(a));
  }
  SUBCASE("a single agent with one channel has nowhere to go") {
    ChannelAssignment a;
    a.num_channels = 1;
    a.network_ids = {"x"};
    a.channels = {{0}};
    CHECK(ess_deviation_check(a));
  }
}

TEST_CASE("greedy occupancy satisfies the degenerate input-matching form") {
  // No channel may hold two agents while another is empty.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    std::vector<int> budgets(static_cast<std::size_t>(n), 1 + static_cast<int>(seed % 3));
    const int total = std::accumulate(budgets.begin(), budgets.end(), 0);
    const auto result = select_with(total + 2, budgets, StrategyAssignment::all_share(n), seed);
    const auto occupancy = result.occupancy();
    for (int y : occupancy) CHECK(y <= 1);
  }
}

TEST_CASE("hybrid presets assign the documented number of random networks") {
  for (int n = 2; n <= 9; ++n) {
    const auto h1 = StrategyAssignment::hybrid1(n);
    const auto h2 = StrategyAssignment::hybrid2(n);
    const auto count = [](const StrategyAssignment& a) {
      int random = 0;
      for (Strategy s : a.per_network)
        if (s == Strategy::UniformRandom) ++random;
      return random;
    };
    CHECK(count(h1) == 1);
    CHECK(h1.per_network[0] == Strategy::UniformRandom);
    CHECK(count(h2) == n / 2);
  }
  CHECK_THROWS_AS(StrategyAssignment::preset("bogus", 3), Error);
}
