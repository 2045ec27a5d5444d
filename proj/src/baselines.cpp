#include "ahasp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ahasp/deadlock.hpp"

namespace ahasp {

EddbidResult eddbid(const Instance& inst) {
    std::vector<int> order;
    for (const auto& t : inst.tasks) order.push_back(t.id);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double da = inst.task(a).due, db = inst.task(b).due;
        return da != db ? da < db : a < b;
    });

    SolutionNet net(inst);
    double current = 0.0;
    for (int id : order) {
        double best_bid = kInfiniteCost;
        Slot best_c, best_s;
        for (int c = 0; c < inst.fleet.carriers(); ++c) {
            const Slot cslot{Side::Carrier, c, static_cast<int>(net.routes(Side::Carrier)[static_cast<size_t>(c)].size())};
            for (int s = 0; s < inst.fleet.shuttles(); ++s) {
                const Slot sslot{Side::Shuttle, s,
                                 static_cast<int>(net.routes(Side::Shuttle)[static_cast<size_t>(s)].size())};
                net.insert_task(id, cslot, sslot);
                const double bid = fdd_objective(inst, net) - current;
                net.remove_task(id);
                if (bid < best_bid) {
                    best_bid = bid;
                    best_c = cslot;
                    best_s = sslot;
                }
            }
        }
        net.insert_task(id, best_c, best_s);
        current += best_bid;
    }

    EddbidResult out;
    out.schedule = fdd(inst, net);
    out.chain = net.chain();
    return out;
}

namespace {

// All ways to deal the (sorted) ids into `m` ordered routes: every
// permutation combined with every composition of the count into m parts.
std::vector<std::vector<std::vector<int>>> ordered_splits(std::vector<int> ids, int m) {
    std::vector<std::vector<std::vector<int>>> out;
    std::sort(ids.begin(), ids.end());
    const int n = static_cast<int>(ids.size());
    std::vector<int> cuts(static_cast<size_t>(m), 0);  // route lengths
    do {
        // enumerate compositions: cuts sum to n
        std::fill(cuts.begin(), cuts.end(), 0);
        cuts[0] = n;
        while (true) {
            std::vector<std::vector<int>> routes(static_cast<size_t>(m));
            int at = 0;
            for (int r = 0; r < m; ++r)
                for (int k = 0; k < cuts[static_cast<size_t>(r)]; ++k) routes[static_cast<size_t>(r)].push_back(ids[static_cast<size_t>(at++)]);
            out.push_back(std::move(routes));
            // next composition in colex order: move one unit from the first
            // positive entry to its successor, resetting what precedes it
            int i = 0;
            while (i < m && cuts[static_cast<size_t>(i)] == 0) ++i;
            if (i >= m - 1) break;
            const int v = cuts[static_cast<size_t>(i)];
            cuts[static_cast<size_t>(i)] = 0;
            cuts[0] = v - 1;
            ++cuts[static_cast<size_t>(i) + 1];
        }
    } while (std::next_permutation(ids.begin(), ids.end()));
    return out;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double split_count(int n, int m) {
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return fact * binomial(n + m - 1, m - 1);
}

}  // namespace

OracleResult brute_force(const Instance& inst, const OracleLimits& limits) {
    const int n = inst.task_count();
    if (n > limits.max_tasks)
        throw std::length_error("brute_force: instance has " + std::to_string(n) + " tasks, limit is " +
                                std::to_string(limits.max_tasks));
    const double combos = split_count(n, inst.fleet.carriers()) * split_count(n, inst.fleet.shuttles());
    if (combos > static_cast<double>(limits.max_candidates))
        throw std::length_error("brute_force: " + std::to_string(combos) + " candidate chains exceed the limit of " +
                                std::to_string(limits.max_candidates));

    std::vector<int> ids;
    for (const auto& t : inst.tasks) ids.push_back(t.id);
    const auto carrier_side = ordered_splits(ids, inst.fleet.carriers());
    const auto shuttle_side = ordered_splits(ids, inst.fleet.shuttles());

    OracleResult best;
    for (const auto& cr : carrier_side) {
        for (const auto& sr : shuttle_side) {
            DualChain chain{cr, sr};
            SolutionNet candidate(inst, chain);
            const double obj = fdd_objective(inst, candidate);
            if (obj == kInfiniteCost) continue;  // deadlocked ordering
            ++best.enumerated;
            if (obj < best.optimal_objective ||
                (obj == best.optimal_objective && chain < best.optimal_chain)) {
                best.optimal_objective = obj;
                best.optimal_chain = std::move(chain);
            }
        }
    }
    return best;
}

double default_big_l(const Instance& inst) {
    double travel = 0.0;
    for (int a = 0; a < inst.position_count(); ++a)
        for (int b = 0; b < inst.position_count(); ++b)
            if (a != b) travel += travel_time(inst, a, b);
    double handling = 0.0;
    for (const auto& t : inst.tasks) handling += t.handling;
    const auto& tp = inst.timing;
    return travel + handling + inst.task_count() * (tp.attach + tp.pickup + tp.detach);
}

namespace {

// In-memory linear model shared by the text exporter and the substitution
// checker, so both views of the constraint set stay identical.
struct Model {
    enum class Sense { Le, Ge, Eq };
    struct Row {
        std::string name;
        std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
        Sense sense = Sense::Ge;
        double rhs = 0.0;
    };

    std::vector<std::string> var_names;
    std::vector<bool> is_binary;
    std::vector<bool> fixed_zero;  // virtual-task clocks
    std::vector<std::pair<int, double>> objective;
    std::vector<Row> rows;
    std::map<std::string, int> index;

    int var(const std::string& name, bool binary = false, bool fixed = false) {
        const auto it = index.find(name);
        if (it != index.end()) return it->second;
        const int id = static_cast<int>(var_names.size());
        index.emplace(name, id);
        var_names.push_back(name);
        is_binary.push_back(binary);
        fixed_zero.push_back(fixed);
        return id;
    }
};

// AGV numbering follows the formulation: carriers 1..m+, shuttles m+ + 1 ..
// m+ + m-. Node names are task ids, the virtual origin of AGV r is "o<r>".
struct MilpNames {
    static std::string node(int task_id, int agv_1based) {
        return task_id == 0 ? "o" + std::to_string(agv_1based) : std::to_string(task_id);
    }
    static std::string x(int agv_1based, const std::string& i, const std::string& j) {
        return "x_" + std::to_string(agv_1based) + "_" + i + "_" + j;
    }
};

Model build_milp(const Instance& inst, double big_l) {
    Model m;
    const int mc = inst.fleet.carriers();
    const int ms = inst.fleet.shuttles();
    const double L = big_l;

    std::vector<int> tasks;
    for (const auto& t : inst.tasks) tasks.push_back(t.id);
    std::sort(tasks.begin(), tasks.end());

    // node lists per AGV: 0 is the virtual origin sentinel
    auto nodes_of = [&](int /*agv*/) {
        std::vector<int> nodes{0};
        nodes.insert(nodes.end(), tasks.begin(), tasks.end());
        return nodes;
    };
    auto start_of = [&](int agv_1based) {
        return agv_1based <= mc ? inst.fleet.carrier_starts[static_cast<size_t>(agv_1based - 1)]
                                : inst.fleet.shuttle_starts[static_cast<size_t>(agv_1based - mc - 1)];
    };
    auto dest_of = [&](int node, int agv_1based) { return node == 0 ? start_of(agv_1based) : inst.task(node).dest; };

    // decision variables
    for (int r = 1; r <= mc + ms; ++r) {
        for (int i : nodes_of(r))
            for (int j : nodes_of(r)) {
                if (i == j && i != 0) continue;  // no task self-visits; o_r -> o_r models an idle AGV
                m.var(MilpNames::x(r, MilpNames::node(i, r), MilpNames::node(j, r)), true);
            }
        m.var("Td_o" + std::to_string(r), false, true);
        m.var("Te_o" + std::to_string(r), false, true);
    }
    for (int i : tasks) {
        m.var("Td_" + std::to_string(i));
        m.var("Te_" + std::to_string(i));
        m.var("wt_" + std::to_string(i));
        m.var("delta_" + std::to_string(i));
        m.var("tau_" + std::to_string(i));
    }

    const double lambda = inst.timing.lambda;
    for (int i : tasks) {
        m.objective.emplace_back(m.var("delta_" + std::to_string(i)), lambda);
        m.objective.emplace_back(m.var("tau_" + std::to_string(i)), 1.0 - lambda);
    }

    auto x_of = [&](int r, int i, int j) {
        return m.var(MilpNames::x(r, MilpNames::node(i, r), MilpNames::node(j, r)), true);
    };
    auto td_of = [&](int i, int r) {
        return i == 0 ? m.var("Td_o" + std::to_string(r), false, true) : m.var("Td_" + std::to_string(i));
    };
    auto te_of = [&](int i, int r) {
        return i == 0 ? m.var("Te_o" + std::to_string(r), false, true) : m.var("Te_" + std::to_string(i));
    };

    // one carrier-side and one shuttle-side predecessor and successor per task
    for (int j : tasks) {
        Model::Row pre_c{"asg_cpre_" + std::to_string(j), {}, Model::Sense::Eq, 1.0};
        Model::Row pre_s{"asg_spre_" + std::to_string(j), {}, Model::Sense::Eq, 1.0};
        Model::Row suc_c{"asg_csuc_" + std::to_string(j), {}, Model::Sense::Eq, 1.0};
        Model::Row suc_s{"asg_ssuc_" + std::to_string(j), {}, Model::Sense::Eq, 1.0};
        for (int r = 1; r <= mc + ms; ++r) {
            auto& pre = r <= mc ? pre_c : pre_s;
            auto& suc = r <= mc ? suc_c : suc_s;
            for (int i : nodes_of(r)) {
                if (i == j) continue;
                pre.terms.emplace_back(x_of(r, i, j), 1.0);
                suc.terms.emplace_back(x_of(r, j, i), 1.0);
            }
        }
        m.rows.push_back(std::move(pre_c));
        m.rows.push_back(std::move(pre_s));
        m.rows.push_back(std::move(suc_c));
        m.rows.push_back(std::move(suc_s));
    }

    // flow conservation per task and AGV
    for (int j : tasks)
        for (int r = 1; r <= mc + ms; ++r) {
            Model::Row row{"flow_" + std::to_string(j) + "_r" + std::to_string(r), {}, Model::Sense::Eq, 0.0};
            for (int i : nodes_of(r)) {
                if (i == j) continue;
                row.terms.emplace_back(x_of(r, i, j), 1.0);
                row.terms.emplace_back(x_of(r, j, i), -1.0);
            }
            m.rows.push_back(std::move(row));
        }

    // every AGV route starts and ends at its virtual origin
    for (int r = 1; r <= mc + ms; ++r) {
        Model::Row in{"ends_in_r" + std::to_string(r), {}, Model::Sense::Eq, 1.0};
        Model::Row out{"ends_out_r" + std::to_string(r), {}, Model::Sense::Eq, 1.0};
        for (int i : nodes_of(r)) {
            in.terms.emplace_back(x_of(r, i, 0), 1.0);
            if (i != 0) out.terms.emplace_back(x_of(r, 0, i), 1.0);
        }
        out.terms.emplace_back(x_of(r, 0, 0), 1.0);
        m.rows.push_back(std::move(in));
        m.rows.push_back(std::move(out));
    }

    // big-M linking rows over (carrier predecessor p, shuttle predecessor q)
    for (int j : tasks) {
        const TaskSpec& tj = inst.task(j);
        for (int rc = 1; rc <= mc; ++rc)
            for (int rs = mc + 1; rs <= mc + ms; ++rs)
                for (int p : nodes_of(rc)) {
                    if (p == j) continue;
                    for (int q : nodes_of(rs)) {
                        if (q == j) continue;
                        const int ep = dest_of(p, rc), eq = dest_of(q, rs);
                        const std::string tag = std::to_string(j) + "_p" + MilpNames::node(p, rc) + "_q" +
                                                MilpNames::node(q, rs) + "_r" + std::to_string(rc) + "_r" +
                                                std::to_string(rs);
                        const int a = x_of(rc, p, j), b = x_of(rs, q, j);

                        const double dsum = inst.distance(ep, eq) + inst.distance(eq, tj.source) +
                                            inst.distance(tj.source, tj.dest);
                        Model::Row dist{"dist_" + tag,
                                        {{m.var("delta_" + std::to_string(j)), 1.0}, {a, -L}, {b, -L}},
                                        Model::Sense::Ge,
                                        dsum - 2.0 * L};
                        m.rows.push_back(std::move(dist));

                        const double tpq = travel_time(inst, ep, eq);
                        Model::Row wait{"wait_" + tag,
                                        {{m.var("wt_" + std::to_string(j)), 1.0},
                                         {te_of(q, rs), -1.0},
                                         {td_of(p, rc), 1.0},
                                         {a, -L},
                                         {b, -L}},
                                        Model::Sense::Ge,
                                        -tpq - 2.0 * L};
                        m.rows.push_back(std::move(wait));

                        const auto& tp = inst.timing;
                        const double chain_time = tpq + tp.attach + travel_time(inst, eq, tj.source) + tp.pickup +
                                                  travel_time(inst, tj.source, tj.dest) + tp.detach;
                        Model::Row det{"det_" + tag,
                                       {{m.var("Td_" + std::to_string(j)), 1.0},
                                        {td_of(p, rc), -1.0},
                                        {m.var("wt_" + std::to_string(j)), -1.0},
                                        {a, -L},
                                        {b, -L}},
                                       Model::Sense::Ge,
                                       chain_time - 2.0 * L};
                        m.rows.push_back(std::move(det));
                    }
                }
    }

    for (int i : tasks) {
        const TaskSpec& t = inst.task(i);
        m.rows.push_back(Model::Row{"comp_" + std::to_string(i),
                                    {{m.var("Te_" + std::to_string(i)), 1.0}, {m.var("Td_" + std::to_string(i)), -1.0}},
                                    Model::Sense::Ge,
                                    t.handling});
        m.rows.push_back(Model::Row{"tard_" + std::to_string(i),
                                    {{m.var("tau_" + std::to_string(i)), 1.0}, {m.var("Te_" + std::to_string(i)), -1.0}},
                                    Model::Sense::Ge,
                                    -t.due});
    }

    return m;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string serialize_lp(const Instance& inst, const Model& m) {
    std::ostringstream os;
    os << "\\ AHASP model";
    if (!inst.name.empty()) os << ": " << inst.name;
    os << "\n\\ tasks=" << inst.task_count() << " carriers=" << inst.fleet.carriers()
       << " shuttles=" << inst.fleet.shuttles() << "\n";

    auto write_terms = [&os, &m](const std::vector<std::pair<int, double>>& terms) {
        int on_line = 0;
        for (const auto& [v, c] : terms) {
            os << (c < 0 ? " - " : " + ") << num(std::abs(c)) << ' ' << m.var_names[static_cast<size_t>(v)];
            if (++on_line % 8 == 0) os << "\n   ";
        }
    };

    os << "Minimize\n obj:";
    write_terms(m.objective);
    os << "\nSubject To\n";
    for (const auto& row : m.rows) {
        os << ' ' << row.name << ':';
        write_terms(row.terms);
        switch (row.sense) {
            case Model::Sense::Le: os << " <= "; break;
            case Model::Sense::Ge: os << " >= "; break;
            case Model::Sense::Eq: os << " = "; break;
        }
        os << num(row.rhs) << "\n";
    }
    os << "Bounds\n";
    for (size_t v = 0; v < m.var_names.size(); ++v)
        if (m.fixed_zero[v]) os << ' ' << m.var_names[v] << " = 0\n";
    os << "Binary\n";
    for (size_t v = 0; v < m.var_names.size(); ++v)
        if (m.is_binary[v]) os << ' ' << m.var_names[v] << "\n";
    os << "End\n";
    return os.str();
}

}  // namespace

std::string export_milp(const Instance& inst, double big_l) {
    const double L = big_l < 0.0 ? default_big_l(inst) : big_l;
    return serialize_lp(inst, build_milp(inst, L));
}

std::vector<std::string> check_schedule_against_milp(const Instance& inst, const DualChain& chain,
                                                     const Schedule& schedule, double big_l) {
    const double L = big_l < 0.0 ? default_big_l(inst) : big_l;
    const Model m = build_milp(inst, L);
    const int mc = inst.fleet.carriers();

    std::vector<double> value(m.var_names.size(), 0.0);
    auto set_if_present = [&](const std::string& name, double v) {
        const auto it = m.index.find(name);
        if (it != m.index.end()) value[static_cast<size_t>(it->second)] = v;
    };

    auto assign_route = [&](const std::vector<int>& route, int r_1based) {
        if (route.empty()) {
            set_if_present(MilpNames::x(r_1based, MilpNames::node(0, r_1based), MilpNames::node(0, r_1based)), 1.0);
            return;
        }
        int prev = 0;
        for (int id : route) {
            set_if_present(MilpNames::x(r_1based, MilpNames::node(prev, r_1based), MilpNames::node(id, r_1based)), 1.0);
            prev = id;
        }
        set_if_present(MilpNames::x(r_1based, MilpNames::node(prev, r_1based), MilpNames::node(0, r_1based)), 1.0);
    };
    for (size_t c = 0; c < chain.carrier_routes.size(); ++c)
        assign_route(chain.carrier_routes[c], static_cast<int>(c) + 1);
    for (size_t s = 0; s < chain.shuttle_routes.size(); ++s)
        assign_route(chain.shuttle_routes[s], mc + static_cast<int>(s) + 1);

    for (const auto& [id, t] : schedule.per_task) {
        set_if_present("Td_" + std::to_string(id), t.detach);
        set_if_present("Te_" + std::to_string(id), t.completion);
        set_if_present("wt_" + std::to_string(id), t.wait);
        set_if_present("delta_" + std::to_string(id), t.distance);
        set_if_present("tau_" + std::to_string(id), t.tardiness);
    }

    std::vector<std::string> violations;
    constexpr double kTol = 1e-6;
    for (const auto& row : m.rows) {
        double lhs = 0.0;
        for (const auto& [v, c] : row.terms) lhs += c * value[static_cast<size_t>(v)];
        const double slack = lhs - row.rhs;
        const bool ok = row.sense == Model::Sense::Ge   ? slack >= -kTol
                        : row.sense == Model::Sense::Le ? slack <= kTol
                                                        : std::abs(slack) <= kTol;
        if (!ok) violations.push_back(row.name + ": lhs=" + num(lhs) + " rhs=" + num(row.rhs));
    }
    return violations;
}

}  // namespace ahasp
