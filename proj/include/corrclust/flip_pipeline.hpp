#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "corrclust/clustering.hpp"
#include "corrclust/cost.hpp"
#include "corrclust/graph.hpp"
#include "corrclust/local_search.hpp"
#include "corrclust/pivot.hpp"
#include "corrclust/rational.hpp"
#include "corrclust/weights.hpp"

namespace corrclust {

// Parameters of the iterated flip pipeline. Weight increments restart from
// the base function every iteration, so any intermediate weight function
// carries at most two beta layers (max edge weight 1 + 2 beta = 2 at the
// default beta = 0.5).
//
// When a preclustered instance drives the searches, gamma must lie below
// epsilon^13 / 4 (the slack budget of an approximate local optimum), and the
// accuracy parameter must not exceed max_epsilon, the largest value the
// preclustering guarantees are stated for.
struct FlipSchedule {
    double beta = 0.5;
    int k = 1;
    double epsilon = 0.1;
    double gamma = 1e-3;
    double max_epsilon = 0.1;
    SearchEngine engine = SearchEngine::exhaustive();

    void validate(bool with_precluster) const {
        if (!(beta > 0)) throw std::invalid_argument("flip schedule: beta must be positive");
        if (k < 0) throw std::invalid_argument("flip schedule: k must be nonnegative");
        if (!(epsilon > 0)) throw std::invalid_argument("flip schedule: epsilon must be positive");
        if (with_precluster) {
            if (epsilon > max_epsilon)
                throw std::invalid_argument("flip schedule: epsilon above the accuracy threshold");
            double cap = std::pow(epsilon, 13) / 4.0;
            if (!(gamma > 0 && gamma < cap))
                throw std::invalid_argument(
                    "flip schedule: gamma must lie in (0, epsilon^13/4) with preclustering");
        }
    }
};

// Iteration count that targets a (2 - alpha)-approximation for alpha < 2/13.
inline int iterations_for_alpha(double alpha) {
    const double margin = 2.0 / 13.0 - alpha;
    if (!(margin > 0)) throw std::invalid_argument("iterations_for_alpha: alpha must be < 2/13");
    return 1 + static_cast<int>(std::ceil(2.0 / margin));
}

// Progress measure of a refined solution against a reference clustering:
// (|E- ∩ Int(c')| + 2 |E+ ∩ Ext(ref) ∩ Ext(c')|) / cost(ref), exact.
inline Rat b_value(const Clustering& c_prime, const Clustering& reference, const Graph& g) {
    PairCells cells = tally_pairs(g, WeightFn::unit(), c_prime, reference);
    std::int64_t minus_int2 = cells.minus(0, 0) + cells.minus(0, 1);
    std::int64_t cut_both2 = cells.plus(1, 1);
    std::int64_t ref_cost2 =
        cells.plus(0, 1) + cells.plus(1, 1) + cells.minus(0, 0) + cells.minus(1, 0);
    if (ref_cost2 == 0) throw std::domain_error("b_value: reference clustering has zero cost");
    // halves cancel between numerator and denominator
    return Rat(minus_int2 + 2 * cut_both2, ref_cost2);
}

// Every intermediate solution with its cost under the base weights; the best
// entry is the minimum original cost, ties resolved by earliest label.
struct PipelineTrace {
    struct Entry {
        std::string label;
        Clustering clustering;
        std::int64_t original_cost2 = 0;
    };
    std::vector<Entry> solutions;
    std::vector<Rat> b_values;  // diagnostics, present when a reference was supplied

    const Entry& best() const {
        if (solutions.empty()) throw std::logic_error("pipeline trace: empty");
        std::size_t arg = 0;
        for (std::size_t i = 1; i < solutions.size(); ++i)
            if (solutions[i].original_cost2 < solutions[arg].original_cost2) arg = i;
        return solutions[arg];
    }
};

// Two local searches around one flip: find a local optimum, double the weight
// of the edges it cuts, search again, and keep the cheaper of the two under
// the original weights.
inline PipelineTrace two_round(const Graph& g, const SearchEngine& engine, std::uint64_t seed) {
    WeightFn w0 = WeightFn::unit();
    PipelineTrace trace;

    Clustering ls1 =
        run_local_search(g, w0, Clustering::singletons(g.vertex_count()), engine, seed);
    trace.solutions.push_back({"Ls1", ls1, cost(g, w0, ls1).total2()});

    WeightFn w_flip = flip_weights(w0, ls1, 1.0);
    Clustering ls2 =
        run_local_search(g, w_flip, Clustering::singletons(g.vertex_count()), engine, seed + 1);
    trace.solutions.push_back({"Ls2", ls2, cost(g, w0, ls2).total2()});
    return trace;
}

// The iterated flip pipeline. Per iteration i: re-weight the base function by
// beta on the edges cut by the previous refined solution, search, flip once
// more on the new solution's cut edges, search again, then combine the three
// latest solutions with the 3-way pivot. Output is the best of everything
// produced, under the original cost.
inline PipelineTrace iterated_flipping(const Graph& g, const FlipSchedule& schedule,
                                       const PreclusteredInstance* pc, std::uint64_t seed,
                                       const Clustering* reference = nullptr) {
    schedule.validate(pc != nullptr);
    WeightFn w0 = WeightFn::unit();
    PipelineTrace trace;
    SearchEngine engine = schedule.engine;
    if (engine.mode == SearchEngine::Mode::Sampled) {
        if (!pc)
            throw std::invalid_argument("iterated_flipping: sampled engine needs preclustering");
        engine.precluster = pc;
        engine.sample.gamma = schedule.gamma;
    }
    Clustering start = pc ? atoms_plus_singletons(*pc) : Clustering::singletons(g.vertex_count());

    auto original2 = [&](const Clustering& c) { return cost(g, w0, c).total2(); };
    std::uint64_t stream = 0;
    auto next_seed = [&]() { return seed + (++stream); };

    Clustering prev_refined = run_local_search(g, w0, start, engine, next_seed());
    trace.solutions.push_back({"C0'", prev_refined, original2(prev_refined)});

    for (int i = 1; i <= schedule.k; ++i) {
        WeightFn wi = flip_weights(w0, prev_refined, schedule.beta);
        Clustering ci = run_local_search(g, wi, start, engine, next_seed());
        WeightFn wi_prime = flip_weights(wi, ci, schedule.beta);
        Clustering ci_prime = run_local_search(g, wi_prime, start, engine, next_seed());
        Clustering ci_pivot = pivot3(prev_refined, ci, ci_prime);

        std::string tag = std::to_string(i);
        trace.solutions.push_back({"C" + tag, ci, original2(ci)});
        trace.solutions.push_back({"C" + tag + "'", ci_prime, original2(ci_prime)});
        trace.solutions.push_back({"C" + tag + "''", ci_pivot, original2(ci_pivot)});
        prev_refined = std::move(ci_prime);
    }

    if (reference) {
        for (const auto& entry : trace.solutions) {
            bool refined = entry.label.size() >= 2 && entry.label.back() == '\'' &&
                           entry.label[entry.label.size() - 2] != '\'';
            if (refined) trace.b_values.push_back(b_value(entry.clustering, *reference, g));
        }
    }
    return trace;
}

}  // namespace corrclust
