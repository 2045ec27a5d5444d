#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ahasp/alns.hpp"
#include "ahasp/baselines.hpp"
#include "ahasp/deadlock.hpp"
#include "ahasp/decode.hpp"
#include "ahasp/io.hpp"
#include "ahasp/metrics.hpp"
#include "ahasp/parallel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSize = 3;

struct BudgetFlags {
    int64_t budget_ms = -1;
    int64_t iterations = -1;

    void apply(ahasp::AlnsConfig& cfg) const {
        if (iterations >= 0) {
            cfg.budget_mode = ahasp::AlnsConfig::Budget::Iterations;
            cfg.iterations = iterations;
        } else {
            cfg.budget_mode = ahasp::AlnsConfig::Budget::WallClockMs;
            cfg.budget_ms = budget_ms;
        }
    }
};

void add_budget_flags(CLI::App* cmd, BudgetFlags& b) {
    cmd->add_option("--budget-ms", b.budget_ms, "Wall-clock budget in ms (default: zeta * n^2 * (m+ + m-))");
    cmd->add_option("--iterations", b.iterations, "Fixed iteration budget (deterministic mode)")
        ->excludes(cmd->get_option("--budget-ms"));
}

ahasp::SolutionDoc make_doc(const std::string& instance_ref, const std::string& algo, uint64_t seed,
                            int64_t budget_ms, int64_t iterations, const ahasp::DualChain& chain,
                            const ahasp::Schedule& sched) {
    ahasp::SolutionDoc doc;
    doc.instance_ref = instance_ref;
    doc.algorithm = algo;
    doc.seed = seed;
    doc.budget_ms = budget_ms;
    doc.iterations = iterations;
    doc.chain = chain;
    doc.schedule = sched;
    return doc;
}

int cmd_generate(const ahasp::GenerateSpec& spec, const std::string& out) {
    ahasp::Instance inst = ahasp::generate_instance(spec);
    if (!out.empty()) {
        ahasp::save_instance(inst, out);
        std::cout << "wrote " << out << " (" << inst.task_count() << " tasks, " << inst.fleet.carriers() << "+"
                  << inst.fleet.shuttles() << " AGVs, " << inst.position_count() << " positions)\n";
    } else {
        std::cout << ahasp::instance_to_json(inst);
    }
    return kExitOk;
}

int cmd_solve(const std::string& instance_path, const std::string& algo, uint64_t seed, const BudgetFlags& budget,
              bool no_brs, const std::string& out, const std::string& log_path, const std::string& stats_path) {
    const ahasp::Instance inst = ahasp::load_instance(instance_path);
    if (algo == "eddbid") {
        const ahasp::EddbidResult res = ahasp::eddbid(inst);
        const auto doc = make_doc(instance_path, "eddbid", seed, 0, 0, res.chain, res.schedule);
        if (!out.empty()) ahasp::save_solution(doc, out);
        std::cout << "eddbid objective " << res.schedule.objective << "\n";
        return kExitOk;
    }
    ahasp::AlnsConfig cfg;
    cfg.seed = seed;
    cfg.use_brs = !no_brs;
    budget.apply(cfg);
    cfg.record_log = !log_path.empty();
    const ahasp::AlnsResult res = ahasp::solve(inst, cfg);
    const int64_t budget_ms =
        cfg.budget_mode == ahasp::AlnsConfig::Budget::WallClockMs
            ? (cfg.budget_ms >= 0 ? cfg.budget_ms : ahasp::default_budget_ms(inst, cfg.zeta))
            : 0;
    const auto doc = make_doc(instance_path, "alns", seed, budget_ms, res.iterations, res.best_chain, res.best_schedule);
    if (!out.empty()) ahasp::save_solution(doc, out);
    if (!log_path.empty()) ahasp::write_file(log_path, ahasp::run_log_csv(res.log));
    if (!stats_path.empty()) ahasp::write_file(stats_path, ahasp::operator_stats_csv(res.bank));
    std::cout << "alns objective " << res.best_schedule.objective << " after " << res.iterations << " iterations ("
              << res.elapsed_ms << " ms)\n";
    return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path) {
    const ahasp::Instance inst = ahasp::load_instance(instance_path);
    const ahasp::SolutionDoc doc = ahasp::load_solution(solution_path);
    ahasp::SolutionNet net(inst, doc.chain);
    const ahasp::Schedule redecoded = ahasp::fdd(inst, net);
    if (redecoded.feasible != doc.schedule.feasible) {
        std::cerr << "MISMATCH: stored feasible=" << doc.schedule.feasible << ", re-decode says " << redecoded.feasible
                  << "\n";
        return kExitData;
    }
    if (redecoded.feasible && redecoded.objective != doc.schedule.objective) {
        std::cerr << "MISMATCH: stored objective " << doc.schedule.objective << ", re-decoded " << redecoded.objective
                  << "\n";
        return kExitData;
    }
    for (const auto& [id, stored] : doc.schedule.per_task) {
        const auto it = redecoded.per_task.find(id);
        if (it == redecoded.per_task.end()) {
            std::cerr << "MISMATCH: stored timing for task " << id << " absent from re-decode\n";
            return kExitData;
        }
        const auto& r = it->second;
        if (stored.start != r.start || stored.attach != r.attach || stored.detach != r.detach ||
            stored.completion != r.completion || stored.wait != r.wait || stored.distance != r.distance ||
            stored.tardiness != r.tardiness) {
            std::cerr << "MISMATCH: task " << id << " timings differ\n";
            return kExitData;
        }
    }
    std::cout << "OK, objective matches (" << (doc.schedule.feasible ? "feasible" : "infeasible") << ", F="
              << doc.schedule.objective << ")\n";
    return kExitOk;
}

int cmd_oracle(const std::string& instance_path, int max_tasks, uint64_t max_candidates, const std::string& out) {
    const ahasp::Instance inst = ahasp::load_instance(instance_path);
    ahasp::OracleLimits limits;
    limits.max_tasks = max_tasks;
    limits.max_candidates = max_candidates;
    const ahasp::OracleResult res = ahasp::brute_force(inst, limits);
    std::cout << "optimal objective " << res.optimal_objective << " over " << res.enumerated
              << " feasible candidates\n";
    if (!out.empty()) {
        ahasp::SolutionNet net(inst, res.optimal_chain);
        const auto doc = make_doc(instance_path, "oracle", 0, 0, static_cast<int64_t>(res.enumerated),
                                  res.optimal_chain, ahasp::fdd(inst, net));
        ahasp::save_solution(doc, out);
    }
    return kExitOk;
}

int cmd_export_milp(const std::string& instance_path, double big_l, const std::string& out) {
    const ahasp::Instance inst = ahasp::load_instance(instance_path);
    const std::string text = ahasp::export_milp(inst, big_l);
    if (out.empty())
        std::cout << text;
    else {
        ahasp::write_file(out, text);
        std::cout << "wrote " << out << "\n";
    }
    return kExitOk;
}

struct BenchTask {
    size_t instance_idx;
    std::string algorithm;  // "alns" or "eddbid"
    uint64_t seed;
    bool with_brs;
};

int cmd_bench(const std::vector<std::string>& instance_paths, const std::vector<std::string>& algos, int seeds,
              const BudgetFlags& budget, bool paired_no_brs, unsigned jobs, const std::string& out,
              const std::string& accel_out) {
    std::vector<ahasp::Instance> instances;
    for (const auto& p : instance_paths) instances.push_back(ahasp::load_instance(p));

    std::vector<BenchTask> tasks;
    for (size_t i = 0; i < instances.size(); ++i)
        for (const auto& algo : algos) {
            if (algo == "eddbid") {
                tasks.push_back(BenchTask{i, "eddbid", 0, true});
                continue;
            }
            for (int s = 1; s <= seeds; ++s) {
                tasks.push_back(BenchTask{i, "alns", static_cast<uint64_t>(s), true});
                if (paired_no_brs) tasks.push_back(BenchTask{i, "alns-nobrs", static_cast<uint64_t>(s), false});
            }
        }

    std::vector<ahasp::RunRecord> records(tasks.size());
    ahasp::parallel_for_index(tasks.size(), jobs, [&](size_t k) {
        const BenchTask& t = tasks[k];
        const ahasp::Instance& inst = instances[t.instance_idx];
        ahasp::RunRecord rec;
        rec.instance_id = instance_paths[t.instance_idx];
        rec.algorithm = t.algorithm;
        rec.seed = t.seed;
        rec.with_brs = t.with_brs;
        if (t.algorithm == "eddbid") {
            const auto res = ahasp::eddbid(inst);
            rec.objective = res.schedule.objective;
            rec.iterations = 0;
        } else {
            ahasp::AlnsConfig cfg;
            cfg.seed = t.seed;
            cfg.use_brs = t.with_brs;
            cfg.record_log = false;
            budget.apply(cfg);
            const auto res = ahasp::solve(inst, cfg);
            rec.objective = res.best_schedule.objective;
            rec.iterations = res.iterations;
            rec.elapsed_ms = res.elapsed_ms;
        }
        records[k] = rec;
    });

    // best objective per instance across everything compared
    std::map<std::string, double> best;
    for (const auto& r : records) {
        auto [it, fresh] = best.emplace(r.instance_id, r.objective);
        if (!fresh) it->second = std::min(it->second, r.objective);
    }

    std::vector<ahasp::BenchRow> rows;
    for (const auto& r : records)
        rows.push_back(ahasp::BenchRow{r.instance_id, r.algorithm, r.seed, r.objective,
                                       ahasp::rpd(r.objective, best.at(r.instance_id)), r.iterations, r.elapsed_ms});
    std::sort(rows.begin(), rows.end(), [](const ahasp::BenchRow& a, const ahasp::BenchRow& b) {
        return std::tie(a.instance_id, a.algorithm, a.seed) < std::tie(b.instance_id, b.algorithm, b.seed);
    });
    ahasp::write_file(out, ahasp::bench_csv(rows));
    std::cout << "wrote " << out << " (" << rows.size() << " runs)\n";

    if (paired_no_brs && !accel_out.empty()) {
        std::vector<ahasp::AccelRow> accel;
        for (size_t i = 0; i < instances.size(); ++i) {
            const ahasp::Instance& inst = instances[i];
            double iters_with = 0, iters_without = 0, rpd_with = 0, rpd_without = 0;
            int n_with = 0, n_without = 0;
            for (size_t k = 0; k < tasks.size(); ++k) {
                if (tasks[k].instance_idx != i || records[k].algorithm == "eddbid") continue;
                const double r = ahasp::rpd(records[k].objective, best.at(records[k].instance_id));
                if (records[k].with_brs) {
                    iters_with += static_cast<double>(records[k].iterations);
                    rpd_with += r;
                    ++n_with;
                } else {
                    iters_without += static_cast<double>(records[k].iterations);
                    rpd_without += r;
                    ++n_without;
                }
            }
            if (n_with == 0 || n_without == 0) continue;
            ahasp::AccelRow row;
            row.instance_id = instance_paths[i];
            row.tasks = inst.task_count();
            row.carriers = inst.fleet.carriers();
            row.shuttles = inst.fleet.shuttles();
            row.iters_with = iters_with / n_with;
            row.iters_without = iters_without / n_without;
            row.acceleration_ratio = (row.iters_with - row.iters_without) / row.iters_without * 100.0;
            row.rpd_with = rpd_with / n_with;
            row.rpd_without = rpd_without / n_without;
            row.rpd_gap = row.rpd_without - row.rpd_with;
            // mean infeasible-position proportion over single-task removals
            ahasp::SolutionNet net(inst, ahasp::initial_solution(inst));
            double ipp_sum = 0.0;
            for (const auto& t : inst.tasks) {
                net.remove_task(t.id);
                ipp_sum += ahasp::ipp(net, t.id);
                std::vector<ahasp::RemovedTask> pool{{t.id, 0.0}};
                ahasp::Rng rng(1);
                ahasp::insert_greedy(net, pool, ahasp::InsertionOp::UrgencyGreedy, rng, true);
            }
            row.ipp = ipp_sum / inst.task_count();
            accel.push_back(row);
        }
        ahasp::write_file(accel_out, ahasp::accel_csv(accel));
        std::cout << "wrote " << accel_out << " (" << accel.size() << " instances)\n";
    }
    return kExitOk;
}

int cmd_sweep(const std::string& instance_path, std::vector<int> carrier_levels, std::vector<int> shuttle_levels,
              int seeds, const BudgetFlags& budget, unsigned jobs, const std::string& out) {
    const ahasp::Instance base = ahasp::load_instance(instance_path);
    if (carrier_levels.empty()) carrier_levels = {2, 3, 4, 5, 6};
    if (shuttle_levels.empty()) shuttle_levels = {4, 5, 6, 7, 8, 9, 10, 11, 12};

    struct Cell {
        int carriers, shuttles;
    };
    std::vector<Cell> cells;
    for (int c : carrier_levels)
        for (int s : shuttle_levels) cells.push_back(Cell{c, s});

    struct Run {
        size_t cell;
        uint64_t seed;
    };
    std::vector<Run> runs;
    for (size_t c = 0; c < cells.size(); ++c)
        for (int s = 1; s <= seeds; ++s) runs.push_back(Run{c, static_cast<uint64_t>(s)});

    std::vector<double> dist_sum(runs.size()), tard_sum(runs.size());
    ahasp::parallel_for_index(runs.size(), jobs, [&](size_t k) {
        const Cell& cell = cells[runs[k].cell];
        const ahasp::Instance inst = ahasp::refit_fleet(base, cell.carriers, cell.shuttles);
        ahasp::AlnsConfig cfg;
        cfg.seed = runs[k].seed;
        cfg.record_log = false;
        budget.apply(cfg);
        const auto res = ahasp::solve(inst, cfg);
        double d = 0, tard = 0;
        for (const auto& [id, t] : res.best_schedule.per_task) {
            d += t.distance;
            tard += t.tardiness;
        }
        dist_sum[k] = d;
        tard_sum[k] = tard;
    });

    std::vector<ahasp::SweepRow> rows;
    for (size_t c = 0; c < cells.size(); ++c) {
        ahasp::SweepRow row;
        row.carriers = cells[c].carriers;
        row.shuttles = cells[c].shuttles;
        for (size_t k = 0; k < runs.size(); ++k) {
            if (runs[k].cell != c) continue;
            row.mean_distance += dist_sum[k];
            row.mean_tardiness += tard_sum[k];
            ++row.runs;
        }
        row.mean_distance /= row.runs;
        row.mean_tardiness /= row.runs;
        rows.push_back(row);
    }
    ahasp::write_file(out, ahasp::sweep_csv(rows));
    std::cout << "wrote " << out << " (" << rows.size() << " cells x " << seeds << " seeds)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AHASP: carrier/shuttle AGV scheduling with Petri-net deadlock prevention"};
    app.require_subcommand(1);

    // generate
    ahasp::GenerateSpec gen;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "Generate a random instance file");
    generate->add_option("--n", gen.tasks, "Task count")->default_val(5);
    generate->add_option("--carriers", gen.carriers)->default_val(4);
    generate->add_option("--shuttles", gen.shuttles)->default_val(8);
    generate->add_option("--positions", gen.positions)->default_val(12);
    generate->add_option("--tightness", gen.tightness, "Fraction of tasks with binding due dates")->default_val(0.5);
    generate->add_option("--seed", gen.seed)->default_val(1);
    generate->add_option("--name", gen.name);
    generate->add_option("--out", gen_out, "Output path (stdout when omitted)");

    // solve
    std::string so_instance, so_algo = "alns", so_out, so_log, so_stats;
    uint64_t so_seed = 1;
    bool so_no_brs = false;
    BudgetFlags so_budget;
    auto* solve = app.add_subcommand("solve", "Solve an instance");
    solve->add_option("--instance", so_instance)->required();
    solve->add_option("--algo", so_algo)->check(CLI::IsMember({"alns", "eddbid"}));
    solve->add_option("--seed", so_seed);
    add_budget_flags(solve, so_budget);
    solve->add_flag("--no-brs", so_no_brs, "Disable reachability pruning (full-scan insertion)");
    solve->add_option("--out", so_out, "Solution file path");
    solve->add_option("--log", so_log, "Per-iteration CSV log path");
    solve->add_option("--stats", so_stats, "Operator statistics CSV path");

    // verify
    std::string ve_instance, ve_solution;
    auto* verify = app.add_subcommand("verify", "Re-decode a solution file and check it");
    verify->add_option("--instance", ve_instance)->required();
    verify->add_option("--solution", ve_solution)->required();

    // oracle
    std::string or_instance, or_out;
    int or_max_tasks = 5;
    uint64_t or_max_candidates = 5'000'000;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for tiny instances");
    oracle->add_option("--instance", or_instance)->required();
    oracle->add_option("--max-tasks", or_max_tasks);
    oracle->add_option("--max-candidates", or_max_candidates);
    oracle->add_option("--out", or_out, "Write the optimal solution file");

    // baseline
    std::string ba_instance, ba_out;
    auto* baseline = app.add_subcommand("baseline", "Run the dispatching baseline");
    baseline->add_option("--instance", ba_instance)->required();
    baseline->add_option("--out", ba_out);

    // export-milp
    std::string mi_instance, mi_out;
    double mi_big_l = -1.0;
    auto* milp = app.add_subcommand("export-milp", "Write the MILP model in LP format");
    milp->add_option("--instance", mi_instance)->required();
    milp->add_option("--big-l", mi_big_l, "Big-M constant (default: instance-derived)");
    milp->add_option("--out", mi_out, "Output path (stdout when omitted)");

    // bench
    std::vector<std::string> be_instances, be_algos{"alns", "eddbid"};
    int be_seeds = 20;
    bool be_paired = false;
    unsigned be_jobs = ahasp::hardware_threads();
    std::string be_out = "bench.csv", be_accel;
    BudgetFlags be_budget;
    auto* bench = app.add_subcommand("bench", "Seeded repetitions across algorithms, RPD table CSV");
    bench->add_option("--instance", be_instances, "Instance file (repeatable)")->required();
    bench->add_option("--algos", be_algos, "Algorithms to compare");
    bench->add_option("--seeds", be_seeds, "Repetitions per algorithm");
    add_budget_flags(bench, be_budget);
    bench->add_flag("--paired-no-brs", be_paired, "Also run without BRS for the acceleration table");
    bench->add_option("--jobs", be_jobs);
    bench->add_option("--out", be_out);
    bench->add_option("--accel-out", be_accel, "Acceleration table CSV (with --paired-no-brs)");

    // sweep
    std::string sw_instance, sw_out = "sweep.csv";
    std::vector<int> sw_carriers, sw_shuttles;
    int sw_seeds = 20;
    unsigned sw_jobs = ahasp::hardware_threads();
    BudgetFlags sw_budget;
    auto* sweep = app.add_subcommand("sweep", "Fleet-size sensitivity grid, CSV heatmap data");
    sweep->add_option("--instance", sw_instance)->required();
    sweep->add_option("--carriers", sw_carriers, "Carrier levels (default 2..6)");
    sweep->add_option("--shuttles", sw_shuttles, "Shuttle levels (default 4..12)");
    sweep->add_option("--seeds", sw_seeds);
    add_budget_flags(sweep, sw_budget);
    sweep->add_option("--jobs", sw_jobs);
    sweep->add_option("--out", sw_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(gen, gen_out);
        if (solve->parsed())
            return cmd_solve(so_instance, so_algo, so_seed, so_budget, so_no_brs, so_out, so_log, so_stats);
        if (verify->parsed()) return cmd_verify(ve_instance, ve_solution);
        if (oracle->parsed()) return cmd_oracle(or_instance, or_max_tasks, or_max_candidates, or_out);
        if (baseline->parsed()) return cmd_solve(ba_instance, "eddbid", 0, BudgetFlags{}, false, ba_out, "", "");
        if (milp->parsed()) return cmd_export_milp(mi_instance, mi_big_l, mi_out);
        if (bench->parsed())
            return cmd_bench(be_instances, be_algos, be_seeds, be_budget, be_paired, be_jobs, be_out, be_accel);
        if (sweep->parsed())
            return cmd_sweep(sw_instance, sw_carriers, sw_shuttles, sw_seeds, sw_budget, sw_jobs, sw_out);
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSize;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
