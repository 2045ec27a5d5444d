#include "ahasp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ahasp {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
}

namespace {

// json::at with the field path folded into the error message.
template <typename T>
T field(const json& j, const std::string& key, const std::string& origin) {
    if (!j.contains(key)) throw ParseError(origin + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(origin + ": field '" + key + "': " + e.what());
    }
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Instance parse_instance(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }

    Instance inst;
    inst.name = j.value("name", "");

    if (j.contains("distances")) {
        inst.dist = field<std::vector<std::vector<double>>>(j, "distances", origin);
    } else if (j.contains("positions") && j.at("positions").contains("coordinates")) {
        const auto coords =
            field<std::vector<std::vector<double>>>(j.at("positions"), "coordinates", origin + ".positions");
        for (const auto& c : coords)
            if (c.size() != 2) throw ParseError(origin + ": coordinates must be [x, y] pairs");
        const size_t p = coords.size();
        inst.dist.assign(p, std::vector<double>(p, 0.0));
        for (size_t a = 0; a < p; ++a)
            for (size_t b = 0; b < p; ++b)
                inst.dist[a][b] = std::abs(coords[a][0] - coords[b][0]) + std::abs(coords[a][1] - coords[b][1]);
    } else {
        throw ParseError(origin + ": needs either 'distances' or 'positions.coordinates'");
    }

    for (const auto& tj : field<json>(j, "tasks", origin)) {
        TaskSpec t;
        t.id = field<int>(tj, "id", origin + ".tasks");
        t.source = field<int>(tj, "source", origin + ".tasks");
        t.dest = field<int>(tj, "dest", origin + ".tasks");
        t.due = field<double>(tj, "due", origin + ".tasks");
        t.handling = field<double>(tj, "handling", origin + ".tasks");
        inst.tasks.push_back(t);
    }

    const json fleet = field<json>(j, "fleet", origin);
    inst.fleet.carrier_starts = field<std::vector<int>>(fleet, "carrier_starts", origin + ".fleet");
    inst.fleet.shuttle_starts = field<std::vector<int>>(fleet, "shuttle_starts", origin + ".fleet");

    const json params = field<json>(j, "params", origin);
    inst.timing.velocity = field<double>(params, "velocity", origin + ".params");
    inst.timing.attach = field<double>(params, "attach", origin + ".params");
    inst.timing.detach = field<double>(params, "detach", origin + ".params");
    inst.timing.pickup = field<double>(params, "pickup", origin + ".params");
    inst.timing.lambda = field<double>(params, "lambda", origin + ".params");

    const auto violations = validate_instance(inst);
    if (!violations.empty()) {
        std::string msg = origin + ": invalid instance:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw ParseError(msg);
    }
    return inst;
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path), path); }

std::string instance_to_json(const Instance& inst) {
    json j;
    if (!inst.name.empty()) j["name"] = inst.name;
    j["distances"] = inst.dist;
    json tasks = json::array();
    for (const auto& t : inst.tasks)
        tasks.push_back(json{{"id", t.id}, {"source", t.source}, {"dest", t.dest}, {"due", t.due}, {"handling", t.handling}});
    j["tasks"] = tasks;
    j["fleet"] = json{{"carrier_starts", inst.fleet.carrier_starts}, {"shuttle_starts", inst.fleet.shuttle_starts}};
    j["params"] = json{{"velocity", inst.timing.velocity},
                       {"attach", inst.timing.attach},
                       {"detach", inst.timing.detach},
                       {"pickup", inst.timing.pickup},
                       {"lambda", inst.timing.lambda}};
    return j.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) { write_file(path, instance_to_json(inst)); }

std::string solution_to_json(const SolutionDoc& doc) {
    json j;
    j["instance"] = doc.instance_ref;
    j["algorithm"] = doc.algorithm;
    j["seed"] = doc.seed;
    j["budget_ms"] = doc.budget_ms;
    j["iterations"] = doc.iterations;
    j["feasible"] = doc.schedule.feasible;
    j["objective"] = doc.schedule.feasible ? json(doc.schedule.objective) : json("infinity");
    j["carrier_routes"] = doc.chain.carrier_routes;
    j["shuttle_routes"] = doc.chain.shuttle_routes;
    json tasks = json::object();
    for (const auto& [id, t] : doc.schedule.per_task)
        tasks[std::to_string(id)] = json{{"start", t.start},     {"attach", t.attach},       {"detach", t.detach},
                                         {"completion", t.completion}, {"wait", t.wait},     {"distance", t.distance},
                                         {"tardiness", t.tardiness}};
    j["tasks"] = tasks;
    return j.dump(2) + "\n";
}

SolutionDoc parse_solution(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    SolutionDoc doc;
    doc.instance_ref = field<std::string>(j, "instance", origin);
    doc.algorithm = j.value("algorithm", "");
    doc.seed = j.value("seed", uint64_t{0});
    doc.budget_ms = j.value("budget_ms", int64_t{0});
    doc.iterations = j.value("iterations", int64_t{0});
    doc.chain.carrier_routes = field<std::vector<std::vector<int>>>(j, "carrier_routes", origin);
    doc.chain.shuttle_routes = field<std::vector<std::vector<int>>>(j, "shuttle_routes", origin);
    doc.schedule.feasible = field<bool>(j, "feasible", origin);
    doc.schedule.objective = doc.schedule.feasible ? field<double>(j, "objective", origin) : kInfiniteCost;
    for (const auto& [key, tj] : field<json>(j, "tasks", origin).items()) {
        TaskTiming t;
        t.start = field<double>(tj, "start", origin + ".tasks");
        t.attach = field<double>(tj, "attach", origin + ".tasks");
        t.detach = field<double>(tj, "detach", origin + ".tasks");
        t.completion = field<double>(tj, "completion", origin + ".tasks");
        t.wait = field<double>(tj, "wait", origin + ".tasks");
        t.distance = field<double>(tj, "distance", origin + ".tasks");
        t.tardiness = field<double>(tj, "tardiness", origin + ".tasks");
        doc.schedule.per_task.emplace(std::stoi(key), t);
    }
    return doc;
}

SolutionDoc load_solution(const std::string& path) { return parse_solution(read_file(path), path); }

void save_solution(const SolutionDoc& doc, const std::string& path) { write_file(path, solution_to_json(doc)); }

Instance generate_instance(const GenerateSpec& spec) {
    if (spec.tasks < 1) throw std::invalid_argument("generate: tasks must be >= 1");
    if (spec.carriers < 1 || spec.shuttles < 1) throw std::invalid_argument("generate: fleets must be >= 1");
    if (spec.positions < 2) throw std::invalid_argument("generate: need at least 2 positions");
    if (spec.tightness < 0.0 || spec.tightness > 1.0)
        throw std::invalid_argument("generate: tightness must be in [0,1]");

    Rng rng(spec.seed);
    Instance inst;
    inst.name = spec.name;

    // Two-row corridor: pasting chambers at y=0, curing chambers across the
    // aisle, uneven spacing along x. Distances are rectilinear.
    const int pasting = std::max(1, spec.positions / 2);
    const int curing = std::max(1, spec.positions - pasting);
    const double aisle = 10.0;
    std::vector<std::pair<double, double>> coords;
    double x = 0.0;
    for (int i = 0; i < pasting; ++i) {
        coords.emplace_back(x, 0.0);
        x += 4.0 + rng.uniform() * 8.0;
    }
    x = 2.0;
    for (int i = 0; i < curing; ++i) {
        coords.emplace_back(x, aisle);
        x += 4.0 + rng.uniform() * 8.0;
    }
    const int total = pasting + curing;
    inst.dist.assign(static_cast<size_t>(total), std::vector<double>(static_cast<size_t>(total), 0.0));
    for (int a = 0; a < total; ++a)
        for (int b = 0; b < total; ++b)
            inst.dist[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                std::abs(coords[static_cast<size_t>(a)].first - coords[static_cast<size_t>(b)].first) +
                std::abs(coords[static_cast<size_t>(a)].second - coords[static_cast<size_t>(b)].second);

    for (int r = 0; r < spec.carriers; ++r)
        inst.fleet.carrier_starts.push_back(static_cast<int>(rng.uniform_int(static_cast<uint64_t>(total))));
    for (int r = 0; r < spec.shuttles; ++r)
        inst.fleet.shuttle_starts.push_back(pasting + static_cast<int>(rng.uniform_int(static_cast<uint64_t>(curing))));

    const auto& tp = inst.timing;  // defaults match the reference setting
    for (int i = 1; i <= spec.tasks; ++i) {
        TaskSpec t;
        t.id = i;
        t.source = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(pasting)));
        t.dest = pasting + static_cast<int>(rng.uniform_int(static_cast<uint64_t>(curing)));
        t.handling = 20.0 + rng.uniform() * 40.0;
        inst.tasks.push_back(t);
    }

    // Upper bound on any completion under the tight decode: every task adds
    // at most three longest hops plus the fixed segment.
    double dmax = 0.0;
    for (const auto& row : inst.dist)
        for (double d : row) dmax = std::max(dmax, d);
    double handling_sum = 0.0;
    for (const auto& t : inst.tasks) handling_sum += t.handling;
    const double horizon =
        spec.tasks * (3.0 * dmax / tp.velocity + tp.attach + tp.pickup + tp.detach) + handling_sum + 1.0;

    const int tight = static_cast<int>(std::lround(spec.tightness * spec.tasks));
    std::vector<int> idx(static_cast<size_t>(spec.tasks));
    for (int i = 0; i < spec.tasks; ++i) idx[static_cast<size_t>(i)] = i;
    for (int i = 0; i < spec.tasks; ++i) {
        const size_t j = static_cast<size_t>(i) + static_cast<size_t>(rng.uniform_int(idx.size() - static_cast<size_t>(i)));
        std::swap(idx[static_cast<size_t>(i)], idx[j]);
    }
    for (int k = 0; k < spec.tasks; ++k) {
        TaskSpec& t = inst.tasks[static_cast<size_t>(idx[static_cast<size_t>(k)])];
        const double lb = travel_time(inst, t.source, t.dest) + tp.attach + tp.pickup + tp.detach + t.handling;
        if (k < tight)
            t.due = lb * (1.0 + 2.0 * rng.uniform());
        else
            t.due = horizon;
    }
    return inst;
}

Instance refit_fleet(const Instance& base, int carriers, int shuttles) {
    if (carriers < 1 || shuttles < 1) throw std::invalid_argument("refit_fleet: fleets must be >= 1");
    if (base.fleet.carriers() == 0 || base.fleet.shuttles() == 0)
        throw std::invalid_argument("refit_fleet: base instance has an empty fleet");
    Instance inst = base;
    inst.fleet.carrier_starts.clear();
    inst.fleet.shuttle_starts.clear();
    for (int r = 0; r < carriers; ++r)
        inst.fleet.carrier_starts.push_back(
            base.fleet.carrier_starts[static_cast<size_t>(r) % base.fleet.carrier_starts.size()]);
    for (int r = 0; r < shuttles; ++r)
        inst.fleet.shuttle_starts.push_back(
            base.fleet.shuttle_starts[static_cast<size_t>(r) % base.fleet.shuttle_starts.size()]);
    return inst;
}

std::string run_log_csv(const std::vector<IterationRow>& log) {
    std::ostringstream os;
    os << "iteration,elapsed_ms,removal,insertion,current_objective,best_objective,accepted\n";
    for (const auto& r : log)
        os << r.iteration << ',' << csv_num(r.elapsed_ms) << ',' << name_of(r.removal) << ',' << name_of(r.insertion)
           << ',' << csv_num(r.current_objective) << ',' << csv_num(r.best_objective) << ',' << (r.accepted ? 1 : 0)
           << "\n";
    return os.str();
}

std::string operator_stats_csv(const OperatorBank& bank) {
    std::ostringstream os;
    os << "category,operator,weight,total_uses\n";
    for (int i = 0; i < kRemovalOps; ++i)
        os << "removal," << name_of(static_cast<RemovalOp>(i)) << ',' << csv_num(bank.removal[static_cast<size_t>(i)].weight)
           << ',' << bank.removal[static_cast<size_t>(i)].total_uses << "\n";
    for (int i = 0; i < kInsertionOps; ++i)
        os << "insertion," << name_of(static_cast<InsertionOp>(i)) << ','
           << csv_num(bank.insertion[static_cast<size_t>(i)].weight) << ',' << bank.insertion[static_cast<size_t>(i)].total_uses
           << "\n";
    return os.str();
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "instance,algorithm,seed,objective,rpd,iterations,elapsed_ms\n";
    for (const auto& r : rows)
        os << r.instance_id << ',' << r.algorithm << ',' << r.seed << ',' << csv_num(r.objective) << ','
           << csv_num(r.rpd) << ',' << r.iterations << ',' << csv_num(r.elapsed_ms) << "\n";
    return os.str();
}

std::string accel_csv(const std::vector<AccelRow>& rows) {
    std::ostringstream os;
    os << "instance,tasks,carriers,shuttles,ipp,iters_with_brs,iters_without_brs,acceleration_ratio,rpd_with,"
          "rpd_without,rpd_gap\n";
    for (const auto& r : rows)
        os << r.instance_id << ',' << r.tasks << ',' << r.carriers << ',' << r.shuttles << ',' << csv_num(r.ipp) << ','
           << csv_num(r.iters_with) << ',' << csv_num(r.iters_without) << ',' << csv_num(r.acceleration_ratio) << ','
           << csv_num(r.rpd_with) << ',' << csv_num(r.rpd_without) << ',' << csv_num(r.rpd_gap) << "\n";
    return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "carriers,shuttles,mean_distance,mean_tardiness,runs\n";
    for (const auto& r : rows)
        os << r.carriers << ',' << r.shuttles << ',' << csv_num(r.mean_distance) << ',' << csv_num(r.mean_tardiness)
           << ',' << r.runs << "\n";
    return os.str();
}

}  // namespace ahasp
