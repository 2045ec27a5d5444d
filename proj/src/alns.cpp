#include "ahasp/alns.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ahasp {

std::string name_of(RemovalOp op) {
    switch (op) {
        case RemovalOp::Random: return "RR";
        case RemovalOp::HighestCost: return "HCR";
        case RemovalOp::LongestDistance: return "LDR";
        case RemovalOp::LargestTardiness: return "LTR";
        case RemovalOp::Shaw: return "SR";
    }
    return "?";
}

std::string name_of(InsertionOp op) {
    switch (op) {
        case InsertionOp::Greedy: return "GI";
        case InsertionOp::UrgencyGreedy: return "UGI";
        case InsertionOp::CostGreedy: return "CGI";
    }
    return "?";
}

void validate_config(const AlnsConfig& cfg) {
    auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!(cfg.mu > 0.0)) throw std::invalid_argument("mu must be > 0");
    if (!in01(cfg.phi)) throw std::invalid_argument("phi must be in [0,1]");
    if (!in01(cfg.rho)) throw std::invalid_argument("rho must be in [0,1]");
    if (!in01(cfg.psi)) throw std::invalid_argument("psi must be in [0,1]");
    if (cfg.kappa < 1) throw std::invalid_argument("kappa must be >= 1");
    if (!(cfg.zeta > 0.0)) throw std::invalid_argument("zeta must be > 0");
    if (cfg.sigma_best < 0.0 || cfg.sigma_improving < 0.0 || cfg.sigma_accepted < 0.0)
        throw std::invalid_argument("score values must be >= 0");
    if (cfg.budget_mode == AlnsConfig::Budget::Iterations && cfg.iterations < 0)
        throw std::invalid_argument("iterations must be >= 0");
}

int64_t default_budget_ms(const Instance& inst, double zeta) {
    const double n = inst.task_count();
    return static_cast<int64_t>(zeta * n * n * (inst.fleet.carriers() + inst.fleet.shuttles()));
}

double fixed_temperature(const Instance& inst, double mu) {
    double sum = 0.0;
    for (const auto& t : inst.tasks) sum += inst.distance(t.source, t.dest);
    const double denom = static_cast<double>(inst.task_count()) *
                         static_cast<double>(inst.fleet.carriers() + inst.fleet.shuttles());
    return denom > 0.0 ? mu * sum / denom : 1.0;
}

bool accept(double current_cost, double candidate_cost, double temperature, Rng& rng) {
    if (candidate_cost <= current_cost) return true;
    if (!(temperature > 0.0)) return false;
    return rng.uniform() < std::exp(-(candidate_cost - current_cost) / temperature);
}

namespace {

template <size_t N>
int roulette(std::array<OperatorStats, N>& ops, Rng& rng) {
    double total = 0.0;
    for (const auto& o : ops) total += o.weight;
    const double draw = rng.uniform() * total;
    double acc = 0.0;
    for (size_t i = 0; i < N; ++i) {
        acc += ops[i].weight;
        if (draw < acc || i + 1 == N) {
            ++ops[i].uses;
            ++ops[i].total_uses;
            return static_cast<int>(i);
        }
    }
    return 0;  // unreachable
}

}  // namespace

int select_operator(std::array<OperatorStats, kRemovalOps>& ops, Rng& rng) { return roulette(ops, rng); }
int select_operator(std::array<OperatorStats, kInsertionOps>& ops, Rng& rng) { return roulette(ops, rng); }

void update_weights(OperatorBank& bank, double rho) {
    auto apply = [rho](OperatorStats& o) {
        if (o.uses > 0) o.weight = (1.0 - rho) * o.weight + rho * o.score / o.uses;
        o.score = 0.0;
        o.uses = 0;
    };
    for (auto& o : bank.removal) apply(o);
    for (auto& o : bank.insertion) apply(o);
}

int removal_count(double phi, int n) {
    if (n <= 0) return 0;
    return std::max(1, static_cast<int>(std::lround(phi * n)));
}

namespace {

std::vector<int> placed_tasks(const SolutionNet& net) {
    std::vector<int> ids;
    for (const auto& route : net.routes(Side::Carrier)) ids.insert(ids.end(), route.begin(), route.end());
    std::sort(ids.begin(), ids.end());
    return ids;
}

double task_cost(const Instance& inst, const Schedule& sched, int id) {
    const auto it = sched.per_task.find(id);
    if (it == sched.per_task.end()) return 0.0;
    return inst.timing.lambda * it->second.distance + (1.0 - inst.timing.lambda) * it->second.tardiness;
}

std::vector<RemovedTask> splice_out(SolutionNet& net, const Schedule& sched, std::vector<int> ids) {
    std::vector<RemovedTask> out;
    out.reserve(ids.size());
    for (int id : ids) {
        out.push_back(RemovedTask{id, task_cost(net.instance(), sched, id)});
        net.remove_task(id);
    }
    return out;
}

// Removes the `count` placed tasks with the largest key, ties broken toward
// the lowest id.
template <typename KeyFn>
std::vector<RemovedTask> remove_by_key(SolutionNet& net, const Schedule& sched, int count, KeyFn key) {
    std::vector<int> ids = placed_tasks(net);
    count = std::min<int>(count, static_cast<int>(ids.size()));
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return key(a) > key(b); });
    ids.resize(static_cast<size_t>(count));
    return splice_out(net, sched, std::move(ids));
}

}  // namespace

std::vector<RemovedTask> remove_random(SolutionNet& net, const Schedule& sched, int count, Rng& rng) {
    std::vector<int> ids = placed_tasks(net);
    if (count > static_cast<int>(ids.size())) count = static_cast<int>(ids.size());
    // Partial Fisher-Yates: the first `count` entries form the sample.
    for (int i = 0; i < count; ++i) {
        const size_t j = static_cast<size_t>(i) + static_cast<size_t>(rng.uniform_int(ids.size() - static_cast<size_t>(i)));
        std::swap(ids[static_cast<size_t>(i)], ids[j]);
    }
    ids.resize(static_cast<size_t>(count));
    return splice_out(net, sched, std::move(ids));
}

std::vector<RemovedTask> remove_highest_cost(SolutionNet& net, const Schedule& sched, int count) {
    return remove_by_key(net, sched, count,
                         [&](int id) { return task_cost(net.instance(), sched, id); });
}

std::vector<RemovedTask> remove_longest_distance(SolutionNet& net, const Schedule& sched, int count) {
    return remove_by_key(net, sched, count, [&](int id) {
        const auto it = sched.per_task.find(id);
        return it == sched.per_task.end() ? 0.0 : it->second.distance;
    });
}

std::vector<RemovedTask> remove_largest_tardiness(SolutionNet& net, const Schedule& sched, int count) {
    return remove_by_key(net, sched, count, [&](int id) {
        const auto it = sched.per_task.find(id);
        return it == sched.per_task.end() ? 0.0 : it->second.tardiness;
    });
}

double shaw_relatedness(const Instance& inst, const TaskSpec& a, const TaskSpec& b, double psi) {
    return psi * (inst.distance(a.source, b.source) + inst.distance(a.dest, b.dest)) +
           (1.0 - psi) * std::abs(a.due - b.due);
}

std::vector<RemovedTask> remove_shaw(SolutionNet& net, const Schedule& sched, int count, double psi, Rng& rng) {
    std::vector<int> ids = placed_tasks(net);
    if (ids.empty() || count < 1) return {};
    count = std::min<int>(count, static_cast<int>(ids.size()));
    const int ref = ids[static_cast<size_t>(rng.uniform_int(ids.size()))];
    const TaskSpec& ref_task = net.instance().task(ref);
    std::vector<int> rest;
    for (int id : ids)
        if (id != ref) rest.push_back(id);
    std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
        return shaw_relatedness(net.instance(), net.instance().task(a), ref_task, psi) <
               shaw_relatedness(net.instance(), net.instance().task(b), ref_task, psi);
    });
    std::vector<int> chosen{ref};
    for (int i = 0; i + 1 < count; ++i) chosen.push_back(rest[static_cast<size_t>(i)]);
    return splice_out(net, sched, std::move(chosen));
}

namespace {

size_t pick_task(const std::vector<RemovedTask>& pool, InsertionOp op, const Instance& inst, Rng& rng) {
    switch (op) {
        case InsertionOp::Greedy: return static_cast<size_t>(rng.uniform_int(pool.size()));
        case InsertionOp::UrgencyGreedy: {
            size_t best = 0;
            for (size_t i = 1; i < pool.size(); ++i) {
                const double d = inst.task(pool[i].id).due, bd = inst.task(pool[best].id).due;
                if (d < bd || (d == bd && pool[i].id < pool[best].id)) best = i;
            }
            return best;
        }
        case InsertionOp::CostGreedy: {
            size_t best = 0;
            for (size_t i = 1; i < pool.size(); ++i) {
                if (pool[i].cost > pool[best].cost ||
                    (pool[i].cost == pool[best].cost && pool[i].id < pool[best].id))
                    best = i;
            }
            return best;
        }
    }
    return 0;
}

struct BestSlotPair {
    double objective = kInfiniteCost;
    Slot carrier;
    Slot shuttle;
    bool found = false;
};

// Scans carrier x shuttle slots in lexicographic order and keeps the first
// strict minimum, which realizes the (carrier, gap, shuttle, gap) tie rule.
// With pruning on, shuttle slots flagged by the reachability search are
// skipped; without it every pair is decoded and deadlocks score +infinity.
BestSlotPair best_insertion(SolutionNet& net, int task, bool use_brs, uint64_t* evaluations) {
    const Instance& inst = net.instance();
    BestSlotPair best;
    const auto& shuttle_routes = net.routes(Side::Shuttle);
    for (int ca = 0; ca < static_cast<int>(net.routes(Side::Carrier).size()); ++ca) {
        const int cgaps = static_cast<int>(net.routes(Side::Carrier)[static_cast<size_t>(ca)].size()) + 1;
        for (int cg = 0; cg < cgaps; ++cg) {
            const Slot cslot{Side::Carrier, ca, cg};
            InfeasibleSlots pruned;
            if (use_brs) pruned = brs_tentative(net, cslot);
            net.insert_side(task, cslot);
            for (int sa = 0; sa < static_cast<int>(shuttle_routes.size()); ++sa) {
                const int sgaps = static_cast<int>(shuttle_routes[static_cast<size_t>(sa)].size()) + 1;
                for (int sg = 0; sg < sgaps; ++sg) {
                    const Slot sslot{Side::Shuttle, sa, sg};
                    if (use_brs && pruned.contains(sslot)) continue;
                    net.insert_side(task, sslot);
                    const double trial = fdd_objective(inst, net);
                    if (evaluations) ++*evaluations;
                    net.remove_side(task, Side::Shuttle);
                    if (trial < best.objective) {
                        best.objective = trial;
                        best.carrier = cslot;
                        best.shuttle = sslot;
                        best.found = true;
                    }
                }
            }
            net.remove_side(task, Side::Carrier);
        }
    }
    return best;
}

}  // namespace

double insert_greedy(SolutionNet& net, std::vector<RemovedTask>& pool, InsertionOp op, Rng& rng, bool use_brs,
                     uint64_t* evaluations, InsertAudit* audit) {
    const Instance& inst = net.instance();
    double objective = 0.0;
    while (!pool.empty()) {
        const size_t at = pick_task(pool, op, inst, rng);
        const int task = pool[at].id;
        pool.erase(pool.begin() + static_cast<long>(at));

        const BestSlotPair best = best_insertion(net, task, use_brs, evaluations);
        if (!best.found || best.objective == kInfiniteCost)
            throw std::logic_error("no feasible insertion for task " + std::to_string(task));
        if (audit) {
            ++audit->insertions;
            const BestSlotPair full = best_insertion(net, task, false, nullptr);
            if (full.carrier != best.carrier || full.shuttle != best.shuttle || full.objective != best.objective)
                ++audit->mismatches;
        }
        net.insert_task(task, best.carrier, best.shuttle);
        objective = best.objective;
    }
    return objective;
}

DualChain initial_solution(const Instance& inst) {
    SolutionNet net(inst);
    std::vector<RemovedTask> pool;
    for (const auto& t : inst.tasks) pool.push_back(RemovedTask{t.id, 0.0});
    Rng rng(0);  // UrgencyGreedy picks deterministically; the rng is unused
    insert_greedy(net, pool, InsertionOp::UrgencyGreedy, rng, true);
    return net.chain();
}

AlnsResult solve(const Instance& inst, const AlnsConfig& cfg) {
    validate_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const int64_t budget_ms = cfg.budget_ms >= 0 ? cfg.budget_ms : default_budget_ms(inst, cfg.zeta);
    auto elapsed_ms = [&t0]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    };

    Rng rng(cfg.seed);
    AlnsResult result;

    SolutionNet current(inst, initial_solution(inst));
    Schedule current_sched = fdd(inst, current);
    result.initial_objective = current_sched.objective;
    result.best_chain = current.chain();
    result.best_schedule = current_sched;

    const double temperature = fixed_temperature(inst, cfg.mu);
    const int n_remove = removal_count(cfg.phi, inst.task_count());

    while (true) {
        if (cfg.budget_mode == AlnsConfig::Budget::Iterations) {
            if (result.iterations >= cfg.iterations) break;
        } else if (result.iterations > 0 && elapsed_ms() >= static_cast<double>(budget_ms)) {
            break;
        }

        const int r_idx = select_operator(result.bank.removal, rng);
        const int i_idx = select_operator(result.bank.insertion, rng);
        const auto removal = static_cast<RemovalOp>(r_idx);
        const auto insertion = static_cast<InsertionOp>(i_idx);

        SolutionNet candidate = current;
        std::vector<RemovedTask> pool;
        switch (removal) {
            case RemovalOp::Random: pool = remove_random(candidate, current_sched, n_remove, rng); break;
            case RemovalOp::HighestCost: pool = remove_highest_cost(candidate, current_sched, n_remove); break;
            case RemovalOp::LongestDistance: pool = remove_longest_distance(candidate, current_sched, n_remove); break;
            case RemovalOp::LargestTardiness: pool = remove_largest_tardiness(candidate, current_sched, n_remove); break;
            case RemovalOp::Shaw: pool = remove_shaw(candidate, current_sched, n_remove, cfg.psi, rng); break;
        }
        insert_greedy(candidate, pool, insertion, rng, cfg.use_brs, &result.evaluations);
        const Schedule cand_sched = fdd(inst, candidate);

        double score = 0.0;
        bool accepted;
        if (cand_sched.objective < result.best_schedule.objective) {
            score = cfg.sigma_best;
            accepted = true;
        } else if (cand_sched.objective < current_sched.objective) {
            score = cfg.sigma_improving;
            accepted = true;
        } else {
            accepted = accept(current_sched.objective, cand_sched.objective, temperature, rng);
            if (accepted) score = cfg.sigma_accepted;
        }
        result.bank.removal[static_cast<size_t>(r_idx)].score += score;
        result.bank.insertion[static_cast<size_t>(i_idx)].score += score;

        if (cand_sched.objective < result.best_schedule.objective) {
            result.best_chain = candidate.chain();
            result.best_schedule = cand_sched;
        }
        if (accepted) {
            current = std::move(candidate);
            current_sched = cand_sched;
        }

        ++result.iterations;
        if (result.iterations % cfg.kappa == 0) update_weights(result.bank, cfg.rho);
        if (cfg.record_log)
            result.log.push_back(IterationRow{result.iterations, elapsed_ms(), removal, insertion,
                                              current_sched.objective, result.best_schedule.objective, accepted});
    }

    result.elapsed_ms = elapsed_ms();
    return result;
}

}  // namespace ahasp
