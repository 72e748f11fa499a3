// Solves berlin52 once with each mutation operator and prints the best cost
// next to the known optimum.

#include <iostream>

#include "tspga/tspga.hpp"

int main() {
    using namespace tspga;
    const Instance inst = load_tsplib(TSPGA_DATA_DIR "/berlin52.tsp");
    std::cout << inst.name() << ": " << inst.size() << " cities, optimum 7542\n";

    GaConfig cfg;
    cfg.generations = 500;
    for (MutationKind kind : kAllMutations) {
        cfg.mutation = kind;
        const RunResult r = run_ga(inst, cfg);
        std::cout << to_string(kind) << "\t" << r.best_cost << "\n";
    }
    return 0;
}
