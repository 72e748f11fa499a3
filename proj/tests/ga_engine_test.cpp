#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "tspga/ga_engine.hpp"

namespace tspga {
namespace {

using testing::tour;

void expect_valid(const Population& pop, const Instance& inst) {
    ASSERT_EQ(pop.tours.size(), pop.costs.size());
    for (std::size_t k = 0; k < pop.size(); ++k) {
        ASSERT_EQ(validate_tour(pop.tours[k], inst.size()), std::nullopt);
        ASSERT_EQ(pop.costs[k], tour_cost(inst, pop.tours[k]));
    }
}

TEST(InitPopulation, RandomMethodProducesValidTours) {
    std::mt19937_64 gen(1);
    const Instance inst = testing::random_instance(12, gen);
    GaConfig cfg;
    cfg.pop_size = 30;
    RandomStream rng(4);
    const Population pop = init_population(inst, cfg, rng);
    EXPECT_EQ(pop.size(), 30u);
    expect_valid(pop, inst);
}

TEST(InitPopulation, AllMethodsAndOperatorsYieldValidPopulations) {
    std::mt19937_64 gen(2);
    const Instance inst = testing::random_instance(9, gen);
    for (InitMethod method : {InitMethod::Random, InitMethod::MutateFromRandom, InitMethod::MutateFromNearest}) {
        for (MutationKind kind : kAllMutations) {
            GaConfig cfg;
            cfg.pop_size = 17;
            cfg.init = method;
            cfg.mutation = kind;
            cfg.mutation_prob = 0.0; // forced mutation must not depend on P_m
            RandomStream rng(9);
            const Population pop = init_population(inst, cfg, rng);
            EXPECT_EQ(pop.size(), 17u);
            expect_valid(pop, inst);
        }
    }
}

TEST(InitPopulation, NearestNeighbourSeedOnCollinearCities) {
    const Instance inst = testing::collinear3();
    EXPECT_EQ(nearest_neighbor_tour(inst), tour({1, 2, 3}));
    GaConfig cfg;
    cfg.pop_size = 5;
    cfg.init = InitMethod::MutateFromNearest;
    RandomStream rng(1);
    EXPECT_EQ(init_population(inst, cfg, rng).tours.front(), tour({1, 2, 3}));
}

TEST(InitPopulation, NearestNeighbourBreaksTiesByLowestId) {
    // cities 2, 3 and 4 are all at distance 1 from city 1
    const Instance inst = Instance::from_points("tie", {{0, 0}, {0, 1}, {1, 0}, {-1, 0}});
    EXPECT_EQ(nearest_neighbor_tour(inst)[1], 2);
}

TEST(InitPopulation, SameSeedSamePopulation) {
    std::mt19937_64 gen(3);
    const Instance inst = testing::random_instance(15, gen);
    GaConfig cfg;
    cfg.pop_size = 20;
    RandomStream a(123);
    RandomStream b(123);
    EXPECT_EQ(init_population(inst, cfg, a), init_population(inst, cfg, b));
}

TEST(InitPopulation, TooFewCitiesIsDomainError) {
    const Instance inst = Instance::from_points("two", {{0, 0}, {1, 1}});
    GaConfig cfg;
    RandomStream rng(1);
    EXPECT_THROW(init_population(inst, cfg, rng), DomainError);
}

TEST(EvolveGeneration, NoVariationKeepsBestCost) {
    std::mt19937_64 gen(4);
    const Instance inst = testing::random_instance(10, gen);
    GaConfig cfg;
    cfg.pop_size = 20;
    cfg.crossover_prob = 0.0;
    cfg.mutation_prob = 0.0;
    RandomStream rng(8);
    const Population pop = init_population(inst, cfg, rng);
    const Population next = evolve_generation(pop, inst, cfg, rng);
    EXPECT_EQ(next.size(), pop.size());
    EXPECT_EQ(next.costs[next.best_index()], pop.costs[pop.best_index()]);
    // every survivor is a copy of some parent
    for (const Tour& t : next.tours) {
        EXPECT_NE(std::find(pop.tours.begin(), pop.tours.end(), t), pop.tours.end());
    }
    expect_valid(next, inst);
}

TEST(EvolveGeneration, ElitesLeadTheNextPopulation) {
    std::mt19937_64 gen(5);
    const Instance inst = testing::random_instance(12, gen);
    GaConfig cfg;
    cfg.pop_size = 10;
    cfg.elite_count = 3;
    RandomStream rng(2);
    const Population pop = init_population(inst, cfg, rng);
    const Population next = evolve_generation(pop, inst, cfg, rng);
    EXPECT_LE(next.costs[0], next.costs[1]);
    EXPECT_LE(next.costs[1], next.costs[2]);
    for (std::size_t k = 3; k < next.size(); ++k) {
        EXPECT_GE(next.costs[k], next.costs[2]);
    }
}

TEST(EvolveGeneration, OddPopulationSize) {
    std::mt19937_64 gen(6);
    const Instance inst = testing::random_instance(8, gen);
    GaConfig cfg;
    cfg.pop_size = 7;
    RandomStream rng(3);
    Population pop = init_population(inst, cfg, rng);
    for (int g = 0; g < 20; ++g) {
        pop = evolve_generation(pop, inst, cfg, rng);
        ASSERT_EQ(pop.size(), 7u);
    }
    expect_valid(pop, inst);
}

TEST(EvolveGeneration, RejectsMismatchedPopulation) {
    std::mt19937_64 gen(7);
    const Instance inst = testing::random_instance(8, gen);
    GaConfig cfg;
    cfg.pop_size = 6;
    RandomStream rng(3);
    const Population pop = init_population(inst, cfg, rng);
    cfg.pop_size = 8;
    EXPECT_THROW(evolve_generation(pop, inst, cfg, rng), DomainError);
}

TEST(RunGa, ZeroGenerationsReturnsBestOfInitialPopulation) {
    std::mt19937_64 gen(8);
    const Instance inst = testing::random_instance(10, gen);
    GaConfig cfg;
    cfg.pop_size = 25;
    cfg.generations = 0;
    cfg.seed = 42;
    RandomStream rng(42);
    const Population pop = init_population(inst, cfg, rng);
    const RunResult r = run_ga(inst, cfg);
    EXPECT_EQ(r.best_cost, pop.costs[pop.best_index()]);
    EXPECT_EQ(r.best_tour, pop.tours[pop.best_index()]);
    EXPECT_EQ(r.history.size(), 1u);
    EXPECT_EQ(r.evaluations, 25u);
}

TEST(RunGa, SameSeedIdenticalResult) {
    std::mt19937_64 gen(9);
    const Instance inst = testing::random_instance(20, gen);
    GaConfig cfg;
    cfg.pop_size = 30;
    cfg.generations = 50;
    cfg.seed = 7;
    const RunResult a = run_ga(inst, cfg);
    const RunResult b = run_ga(inst, cfg);
    EXPECT_EQ(a, b);
    EXPECT_EQ(to_string(a), to_string(b));
    EXPECT_EQ(a.evaluations, 30u + 50u * 30u);
    cfg.seed = 8;
    EXPECT_NE(to_string(run_ga(inst, cfg)), to_string(a));
}

TEST(RunGa, FindsFiveCityOptimum) {
    const Instance inst = Instance::from_points("five", {{0, 0}, {10, 3}, {4, 8}, {7, 1}, {2, 5}});
    const Length optimum = testing::enumerate_optimum(inst);
    GaConfig cfg;
    cfg.pop_size = 20;
    cfg.generations = 100;
    cfg.mutation = MutationKind::Rsm;
    cfg.crossover_prob = 0.9;
    cfg.mutation_prob = 0.2;
    cfg.seed = 1;
    const RunResult r = run_ga(inst, cfg);
    EXPECT_NEAR(r.best_cost, optimum, 1e-9);
    EXPECT_NEAR(tour_cost(inst, r.best_tour), r.best_cost, 1e-9);
}

// Random configurations: monotone history, fixed size, valid tours, and
// never better than the exhaustive optimum.
TEST(RunGa, ElitismInvariantsAcrossRandomConfigs) {
    std::mt19937_64 gen(10);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 4 + gen() % 5;
        const Instance inst = testing::random_instance(n, gen, trial % 2 ? Metric::EuclideanRounded : Metric::EuclideanReal);
        GaConfig cfg;
        cfg.pop_size = 2 + gen() % 20;
        cfg.elite_count = 1 + gen() % (cfg.pop_size - 1);
        cfg.generations = gen() % 30;
        cfg.crossover_prob = static_cast<double>(gen() % 11) / 10.0;
        cfg.mutation_prob = static_cast<double>(gen() % 11) / 10.0;
        cfg.mutation = kAllMutations[gen() % kAllMutations.size()];
        cfg.init = static_cast<InitMethod>(gen() % 3);
        cfg.seed = gen();

        RandomStream rng(cfg.seed);
        Population pop = init_population(inst, cfg, rng);
        Length best = pop.costs[pop.best_index()];
        for (std::size_t g = 0; g < cfg.generations; ++g) {
            pop = evolve_generation(pop, inst, cfg, rng);
            ASSERT_EQ(pop.size(), cfg.pop_size);
            expect_valid(pop, inst);
            const Length now = pop.costs[pop.best_index()];
            ASSERT_LE(now, best);
            best = now;
        }

        const RunResult r = run_ga(inst, cfg);
        ASSERT_EQ(r.history.size(), cfg.generations + 1);
        for (std::size_t g = 1; g < r.history.size(); ++g) {
            ASSERT_LE(r.history[g], r.history[g - 1]);
        }
        EXPECT_EQ(r.best_cost, r.history.back());
        EXPECT_GE(r.best_cost, testing::enumerate_optimum(inst) - 1e-9);
    }
}

TEST(GaConfig, KeyValueRoundTrip) {
    GaConfig cfg;
    cfg.pop_size = 64;
    cfg.generations = 10;
    cfg.crossover_prob = 0.7;
    cfg.mutation_prob = 0.3;
    cfg.mutation = MutationKind::Thrors;
    cfg.init = InitMethod::MutateFromNearest;
    cfg.elite_count = 2;
    cfg.seed = 18446744073709551615ULL;
    EXPECT_EQ(parse_ga_config(to_key_values(cfg)), cfg);
}

TEST(GaConfig, ParsingDefaultsCommentsAndErrors) {
    const GaConfig cfg = parse_ga_config("# comment\n\npop_size = 10\nmutation=psm\n");
    EXPECT_EQ(cfg.pop_size, 10u);
    EXPECT_EQ(cfg.mutation, MutationKind::Psm);
    EXPECT_EQ(cfg.generations, GaConfig{}.generations);
    EXPECT_THROW(parse_ga_config("bogus=1\n"), ConfigError);
    EXPECT_THROW(parse_ga_config("pop_size=ten\n"), ConfigError);
    EXPECT_THROW(parse_ga_config("pop_size\n"), ConfigError);
    EXPECT_THROW(parse_ga_config("mutation=pmx\n"), ConfigError);
    EXPECT_THROW(parse_ga_config("pop_size=1\n"), ConfigError);
    EXPECT_THROW(parse_ga_config("pop_size=4\nelite=4\n"), ConfigError);
    EXPECT_THROW(parse_ga_config("elite=0\n"), ConfigError);
    EXPECT_THROW(parse_ga_config("crossover_prob=1.5\n"), ConfigError);
}

} // namespace
} // namespace tspga
