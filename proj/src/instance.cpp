#include "ahasp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ahasp {

int Instance::max_task_id() const {
    int m = 0;
    for (const auto& t : tasks) m = std::max(m, t.id);
    return m;
}

bool Instance::has_task(int id) const {
    return std::any_of(tasks.begin(), tasks.end(), [id](const TaskSpec& t) { return t.id == id; });
}

const TaskSpec& Instance::task(int id) const {
    for (const auto& t : tasks)
        if (t.id == id) return t;
    throw std::out_of_range("unknown task id " + std::to_string(id));
}

double Instance::distance(int a, int b) const {
    const int p = position_count();
    if (a < 0 || a >= p || b < 0 || b >= p)
        throw std::out_of_range("position index out of range: " + std::to_string(a < 0 || a >= p ? a : b));
    return dist[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

double travel_time(const Instance& inst, int a, int b) {
    return inst.distance(a, b) / inst.timing.velocity;
}

namespace {

std::string fmt(const char* what, const std::string& detail) {
    std::ostringstream os;
    os << what << ": " << detail;
    return os.str();
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> out;
    const int p = inst.position_count();

    for (size_t r = 0; r < inst.dist.size(); ++r)
        if (inst.dist[r].size() != inst.dist.size())
            out.push_back(fmt("dist: non-square matrix", "row " + std::to_string(r) + " has " +
                                                             std::to_string(inst.dist[r].size()) + " entries, expected " +
                                                             std::to_string(inst.dist.size())));
    if (!out.empty()) return out;  // shape errors make index checks meaningless

    for (int a = 0; a < p; ++a) {
        if (inst.dist[a][a] != 0.0)
            out.push_back(fmt("dist: nonzero diagonal", "dist[" + std::to_string(a) + "][" + std::to_string(a) + "]"));
        for (int b = 0; b < p; ++b) {
            const double d = inst.dist[a][b];
            if (!(d >= 0.0) || std::isnan(d))
                out.push_back(fmt("dist: negative or NaN entry",
                                  "dist[" + std::to_string(a) + "][" + std::to_string(b) + "]"));
            if (b > a && inst.dist[a][b] != inst.dist[b][a])
                out.push_back(fmt("dist: asymmetric distance",
                                  "dist[" + std::to_string(a) + "][" + std::to_string(b) + "] != dist[" +
                                      std::to_string(b) + "][" + std::to_string(a) + "]"));
        }
    }

    if (inst.fleet.carriers() == 0) out.push_back(fmt("fleet: empty carrier fleet", "at least one carrier required"));
    if (inst.fleet.shuttles() == 0) out.push_back(fmt("fleet: empty shuttle fleet", "at least one shuttle required"));

    auto check_pos = [&](int pos, const std::string& where) {
        if (pos < 0 || pos >= p) out.push_back(fmt("position out of range", where + " = " + std::to_string(pos)));
    };
    for (int r = 0; r < inst.fleet.carriers(); ++r)
        check_pos(inst.fleet.carrier_starts[static_cast<size_t>(r)], "carrier_starts[" + std::to_string(r) + "]");
    for (int r = 0; r < inst.fleet.shuttles(); ++r)
        check_pos(inst.fleet.shuttle_starts[static_cast<size_t>(r)], "shuttle_starts[" + std::to_string(r) + "]");

    std::set<int> ids;
    for (const auto& t : inst.tasks) {
        const std::string tag = "task " + std::to_string(t.id);
        if (t.id < 1) out.push_back(fmt("task id must be >= 1", tag));
        if (!ids.insert(t.id).second) out.push_back(fmt("duplicate task id", tag));
        check_pos(t.source, tag + " source");
        check_pos(t.dest, tag + " dest");
        if (!(t.due >= 0.0)) out.push_back(fmt("task due must be >= 0", tag));
        if (!(t.handling >= 0.0)) out.push_back(fmt("task handling must be >= 0", tag));
    }

    const auto& tp = inst.timing;
    if (!(tp.velocity > 0.0)) out.push_back(fmt("params: velocity must be > 0", std::to_string(tp.velocity)));
    if (!(tp.attach >= 0.0)) out.push_back(fmt("params: attach must be >= 0", std::to_string(tp.attach)));
    if (!(tp.detach >= 0.0)) out.push_back(fmt("params: detach must be >= 0", std::to_string(tp.detach)));
    if (!(tp.pickup >= 0.0)) out.push_back(fmt("params: pickup must be >= 0", std::to_string(tp.pickup)));
    if (!(tp.lambda >= 0.0 && tp.lambda <= 1.0))
        out.push_back(fmt("params: lambda must be in [0,1]", std::to_string(tp.lambda)));

    return out;
}

}  // namespace ahasp
