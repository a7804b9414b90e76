// Command-line driver: instance generation, solver runs, side-by-side
// comparisons, invariant verification, and JSON result persistence.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "corrclust/corrclust.hpp"

namespace cc = corrclust;
using nlohmann::json;

namespace {

unsigned thread_cap() {
    if (const char* env = std::getenv("CC_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(i) for i in [0, count) on up to thread_cap() workers. Each item is
// independent, so results do not depend on scheduling. The first exception
// thrown by any item is rethrown on the calling thread after all workers
// finish.
void parallel_items(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned workers = std::min<std::size_t>(thread_cap(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct InstanceSpec {
    cc::Graph graph;
    std::string descriptor;
    std::optional<std::array<int, 3>> hamming_dims;
    std::optional<cc::Clustering> planted;
};

InstanceSpec make_instance(const std::string& gen, const std::string& input,
                           std::uint64_t seed) {
    if (!gen.empty() && !input.empty())
        throw CLI::ValidationError("instance", "use either --gen or --input, not both");
    InstanceSpec spec;
    if (!input.empty()) {
        std::ifstream in(input, std::ios::binary);
        if (!in) throw CLI::ValidationError("--input", "cannot open " + input);
        std::stringstream buf;
        buf << in.rdbuf();
        std::istringstream parse(buf.str());
        spec.graph = cc::Graph::read(parse);
        std::ostringstream d;
        d << "file:" << input << ":" << std::hex << fnv1a(buf.str());
        spec.descriptor = d.str();
        return spec;
    }
    if (gen.empty()) throw CLI::ValidationError("instance", "need --gen or --input");

    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, sep)) parts.push_back(item);
        return parts;
    };
    auto head = gen.substr(0, gen.find(':'));
    if (head == "hamming") {
        auto parts = split(gen, ':');
        if (parts.size() != 3) throw CLI::ValidationError("--gen", "expected hamming:D1,D2,D3:R");
        auto dims_s = split(parts[1], ',');
        if (dims_s.size() != 3) throw CLI::ValidationError("--gen", "expected three dims");
        std::array<int, 3> dims{std::stoi(dims_s[0]), std::stoi(dims_s[1]), std::stoi(dims_s[2])};
        int radius = std::stoi(parts[2]);
        spec.graph = cc::gen_hamming(dims, radius);
        spec.hamming_dims = dims;
        spec.descriptor = gen;
        return spec;
    }
    if (head == "planted") {
        auto parts = split(gen, ':');
        if (parts.size() != 2) throw CLI::ValidationError("--gen", "expected planted:K,SIZE,PIN,POUT");
        auto ps = split(parts[1], ',');
        if (ps.size() != 4) throw CLI::ValidationError("--gen", "expected four planted parameters");
        auto [g, truth] = cc::gen_planted(std::stoi(ps[0]), std::stoi(ps[1]), std::stod(ps[2]),
                                          std::stod(ps[3]), seed);
        spec.graph = std::move(g);
        spec.planted = std::move(truth);
        spec.descriptor = gen;
        return spec;
    }
    if (head == "gnp") {
        auto parts = split(gen, ':');
        if (parts.size() != 2) throw CLI::ValidationError("--gen", "expected gnp:N,P");
        auto ps = split(parts[1], ',');
        if (ps.size() != 2) throw CLI::ValidationError("--gen", "expected gnp:N,P");
        spec.graph = cc::gen_gnp(std::stoul(ps[0]), std::stod(ps[1]), seed);
        spec.descriptor = gen;
        return spec;
    }
    throw CLI::ValidationError("--gen", "unknown generator: " + head);
}

struct SolveParams {
    double epsilon = 0.1;
    double gamma = 1e-3;
    int eta = 2;
    double beta = 0.5;
    int k = 4;
    std::uint64_t seed = 1;
    std::string atoms_file;
    int trials = 100;
};

cc::SampleConfig sample_config(const SolveParams& p) {
    cc::SampleConfig cfg;
    cfg.eta = p.eta;
    cfg.gamma = p.gamma;
    cfg.seed = p.seed;
    return cfg;
}

cc::PreclusteredInstance build_precluster(const cc::Graph& g, const SolveParams& p) {
    if (!p.atoms_file.empty()) {
        std::ifstream in(p.atoms_file);
        if (!in) throw CLI::ValidationError("--atoms", "cannot open " + p.atoms_file);
        auto atoms = cc::PreclusteredInstance::read_atoms(in);
        return cc::precluster_with_atoms(g, p.epsilon, std::move(atoms));
    }
    return cc::precluster(g, p.epsilon);
}

cc::SearchEngine engine_for(const cc::Graph& g, const SolveParams& p,
                            const cc::PreclusteredInstance*& pc_out,
                            std::optional<cc::PreclusteredInstance>& pc_storage) {
    if (g.vertex_count() <= 16) return cc::SearchEngine::exhaustive();
    pc_storage = build_precluster(g, p);
    pc_out = &*pc_storage;
    return cc::SearchEngine::sampled(*pc_out, sample_config(p));
}

struct SolveOutcome {
    cc::RunReport report;
    cc::Clustering clustering;
};

SolveOutcome run_algorithm(const InstanceSpec& inst, const std::string& alg,
                           const SolveParams& p) {
    const cc::Graph& g = inst.graph;
    cc::WeightFn w0 = cc::WeightFn::unit();
    SolveOutcome out;
    out.report.algorithm = alg;
    out.report.seed = p.seed;
    out.report.instance = inst.descriptor;
    out.report.params = {{"epsilon", p.epsilon}, {"gamma", p.gamma}, {"eta", p.eta},
                         {"beta", p.beta},       {"k", p.k}};

    auto t0 = std::chrono::steady_clock::now();
    if (alg == "acn") {
        cc::SplitRng rng(p.seed);
        out.clustering = cc::acn_pivot(g, rng);
    } else if (alg == "two_round") {
        const cc::PreclusteredInstance* pc = nullptr;
        std::optional<cc::PreclusteredInstance> storage;
        auto engine = engine_for(g, p, pc, storage);
        out.clustering = cc::two_round(g, engine, p.seed).best().clustering;
    } else if (alg == "iterated") {
        const cc::PreclusteredInstance* pc = nullptr;
        std::optional<cc::PreclusteredInstance> storage;
        auto engine = engine_for(g, p, pc, storage);
        cc::FlipSchedule sched;
        sched.beta = p.beta;
        sched.k = p.k;
        sched.epsilon = p.epsilon;
        sched.gamma = p.gamma;
        if (pc)  // approximate local optima need gamma inside the slack budget
            sched.gamma = std::min(p.gamma, std::pow(p.epsilon, 13) / 8.0);
        sched.engine = engine;
        out.clustering = cc::iterated_flipping(g, sched, pc, p.seed).best().clustering;
    } else if (alg == "faster") {
        auto pc = build_precluster(g, p);
        cc::SplitRng rng(p.seed);
        out.clustering = cc::faster_local_search(g, pc, w0, sample_config(p), rng);
    } else if (alg == "exhaustive") {
        out.clustering = cc::run_local_search(
            g, w0, cc::Clustering::singletons(g.vertex_count()), cc::SearchEngine::exhaustive(),
            p.seed);
    } else if (alg == "bruteforce") {
        out.clustering = cc::brute_force_opt(g, w0).clustering;
    } else if (alg.rfind("fixed:", 0) == 0) {
        std::string which = alg.substr(6);
        if (which == "singletons") {
            out.clustering = cc::Clustering::singletons(g.vertex_count());
        } else if (which == "one") {
            out.clustering = cc::Clustering::single_cluster(g.vertex_count());
        } else if (which == "planted") {
            if (!inst.planted)
                throw CLI::ValidationError("--alg", "fixed:planted needs a planted instance");
            out.clustering = *inst.planted;
        } else if (which == "x-slices" || which == "y-slices" || which == "z-slices") {
            if (!inst.hamming_dims)
                throw CLI::ValidationError("--alg", "axis slices need a hamming instance");
            int axis = which[0] - 'x';
            out.clustering = cc::hamming_axis_clustering(*inst.hamming_dims, axis);
        } else {
            throw CLI::ValidationError("--alg", "unknown fixed clustering: " + which);
        }
    } else {
        throw CLI::ValidationError("--alg", "unknown algorithm: " + alg);
    }
    auto t1 = std::chrono::steady_clock::now();

    out.report.cost2 = cc::cost(g, w0, out.clustering).total2();
    out.report.num_clusters = out.clustering.cluster_count();
    out.report.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return out;
}

void print_report_line(const cc::RunReport& r) {
    std::ostringstream cost_text;
    cost_text << r.cost2 << "/2 = " << std::fixed << std::setprecision(1) << r.cost();
    std::cout << std::left << std::setw(14) << r.algorithm << std::right << std::setw(18)
              << cost_text.str() << std::setw(10) << r.num_clusters << std::setw(12)
              << std::fixed << std::setprecision(2) << r.runtime_ms << "  " << r.instance
              << " seed=" << r.seed << "\n";
}

void write_json_out(const std::string& path, const json& payload) {
    std::ofstream out(path);
    if (!out) throw CLI::ValidationError("--out", "cannot write " + path);
    out << payload.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"correlation clustering local-search toolkit"};
    app.require_subcommand(1);

    std::string gen, input, alg = "two_round", out_path, suite = "all";
    std::string clustering_out, atoms_out, adm_out;
    SolveParams params;

    auto add_instance_flags = [&](CLI::App* cmd) {
        cmd->add_option("--gen", gen, "instance descriptor (hamming:3,5,5:2 | planted:5,20,0.9,0.05 | gnp:30,0.3)");
        cmd->add_option("--input", input, "graph file (line 1: n m; then edges u v)");
        cmd->add_option("--seed", params.seed, "RNG seed");
    };
    auto add_param_flags = [&](CLI::App* cmd) {
        cmd->add_option("--epsilon", params.epsilon, "preclustering accuracy");
        cmd->add_option("--gamma", params.gamma, "sampled-search improvement slack");
        cmd->add_option("--eta", params.eta, "sampled-search batch parameter");
        cmd->add_option("--beta", params.beta, "flip increment");
        cmd->add_option("--k", params.k, "flip iterations");
        cmd->add_option("--atoms", params.atoms_file, "read atoms from file");
    };

    CLI::App* solve = app.add_subcommand("solve", "run one algorithm on one instance");
    add_instance_flags(solve);
    add_param_flags(solve);
    solve->add_option("--alg", alg,
                      "acn | two_round | iterated | faster | exhaustive | bruteforce | fixed:<what>");
    solve->add_option("--out", out_path, "write the run report as JSON");
    solve->add_option("--write-clustering", clustering_out, "write the clustering to a file");

    CLI::App* compare = app.add_subcommand("compare", "run the solver family on one instance");
    add_instance_flags(compare);
    add_param_flags(compare);
    compare->add_option("--out", out_path, "write all run reports as a JSON array");

    CLI::App* verify = app.add_subcommand("verify", "run invariant suites; nonzero exit on any violation");
    verify->add_option("--suite", suite,
                       "all | graph | local | pivot | flip | precluster | estimators | sampled | baselines | harness");
    verify->add_option("--trials", params.trials, "randomized trials per suite");
    verify->add_option("--seed", params.seed, "RNG seed");

    CLI::App* precl = app.add_subcommand("precluster", "compute atoms and admissible pairs");
    add_instance_flags(precl);
    add_param_flags(precl);
    precl->add_option("--atoms-out", atoms_out, "write atoms, one per line");
    precl->add_option("--adm-out", adm_out, "write admissible pairs as 'u v' lines");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            InstanceSpec inst = make_instance(gen, input, params.seed);
            SolveOutcome res = run_algorithm(inst, alg, params);
            print_report_line(res.report);
            if (!out_path.empty()) write_json_out(out_path, res.report.to_json());
            if (!clustering_out.empty()) res.clustering.save(clustering_out);
            return 0;
        }
        if (compare->parsed()) {
            InstanceSpec inst = make_instance(gen, input, params.seed);
            std::vector<std::string> algs{"acn", "two_round", "iterated", "faster"};
            std::vector<cc::RunReport> reports(algs.size());
            parallel_items(algs.size(), [&](std::size_t i) {
                reports[i] = run_algorithm(inst, algs[i], params).report;
            });
            std::cout << std::left << std::setw(14) << "algorithm" << std::right << std::setw(18)
                      << "cost" << std::setw(10) << "clusters" << std::setw(12) << "ms"
                      << "  instance\n";
            json arr = json::array();
            for (const auto& r : reports) {
                print_report_line(r);
                arr.push_back(r.to_json());
            }
            if (!out_path.empty()) write_json_out(out_path, arr);
            return 0;
        }
        if (verify->parsed()) {
            std::vector<cc::CheckResult> checks;
            if (suite == "all") {
                // independent suites run in parallel, aggregated in a fixed order
                const std::vector<std::string> names{"graph",      "local",   "pivot",
                                                     "flip",       "precluster", "estimators",
                                                     "sampled",    "baselines", "harness"};
                std::vector<std::vector<cc::CheckResult>> parts(names.size());
                parallel_items(names.size(), [&](std::size_t i) {
                    parts[i] = cc::run_verify_suite(names[i], params.trials, params.seed);
                });
                for (const auto& part : parts) checks.insert(checks.end(), part.begin(), part.end());
            } else {
                checks = cc::run_verify_suite(suite, params.trials, params.seed);
            }
            std::size_t passed = 0;
            for (const auto& c : checks) {
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
                if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
                std::cout << "\n";
                passed += c.pass;
            }
            std::cout << passed << "/" << checks.size() << " pass\n";
            return passed == checks.size() ? 0 : 1;
        }
        if (precl->parsed()) {
            InstanceSpec inst = make_instance(gen, input, params.seed);
            cc::PreclusteredInstance pc = build_precluster(inst.graph, params);
            std::cout << "atoms: " << pc.atoms.size()
                      << "  admissible pairs: " << pc.admissible_pairs << "\n";
            cc::GoodnessReport rep = cc::validate_good_instance(inst.graph, pc);
            std::cout << "goodness: adm-degree " << (rep.adm_degree_ok ? "ok" : "VIOLATED")
                      << ", degree-similarity " << (rep.degree_similarity_ok ? "ok" : "VIOLATED")
                      << ", atom-density " << (rep.atom_density_ok ? "ok" : "VIOLATED") << "\n";
            if (!atoms_out.empty()) {
                std::ofstream o(atoms_out);
                pc.write_atoms(o);
            }
            if (!adm_out.empty()) {
                std::ofstream o(adm_out);
                pc.write_admissible(o);
            }
            return rep.all_hold() ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
