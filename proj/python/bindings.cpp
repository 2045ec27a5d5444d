#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ahasp/alns.hpp"
#include "ahasp/baselines.hpp"
#include "ahasp/deadlock.hpp"
#include "ahasp/decode.hpp"
#include "ahasp/instance.hpp"
#include "ahasp/io.hpp"
#include "ahasp/metrics.hpp"
#include "ahasp/net.hpp"

namespace py = pybind11;
using namespace ahasp;

PYBIND11_MODULE(_ahasp, m) {
    m.doc() = "Carrier/shuttle AGV scheduling: Petri-net decoding, deadlock-free ALNS";

    py::class_<TaskSpec>(m, "TaskSpec")
        .def(py::init<>())
        .def(py::init([](int id, int source, int dest, double due, double handling) {
                 return TaskSpec{id, source, dest, due, handling};
             }),
             py::arg("id"), py::arg("source"), py::arg("dest"), py::arg("due"), py::arg("handling"))
        .def_readwrite("id", &TaskSpec::id)
        .def_readwrite("source", &TaskSpec::source)
        .def_readwrite("dest", &TaskSpec::dest)
        .def_readwrite("due", &TaskSpec::due)
        .def_readwrite("handling", &TaskSpec::handling);

    py::class_<Fleet>(m, "Fleet")
        .def(py::init<>())
        .def_readwrite("carrier_starts", &Fleet::carrier_starts)
        .def_readwrite("shuttle_starts", &Fleet::shuttle_starts)
        .def_property_readonly("carriers", &Fleet::carriers)
        .def_property_readonly("shuttles", &Fleet::shuttles);

    py::class_<TimingParams>(m, "TimingParams")
        .def(py::init<>())
        .def_readwrite("velocity", &TimingParams::velocity)
        .def_readwrite("attach", &TimingParams::attach)
        .def_readwrite("detach", &TimingParams::detach)
        .def_readwrite("pickup", &TimingParams::pickup)
        .def_readwrite("lambda_", &TimingParams::lambda);

    py::class_<Instance>(m, "Instance")
        .def(py::init<>())
        .def_readwrite("name", &Instance::name)
        .def_readwrite("tasks", &Instance::tasks)
        .def_readwrite("fleet", &Instance::fleet)
        .def_readwrite("dist", &Instance::dist)
        .def_readwrite("timing", &Instance::timing)
        .def_property_readonly("task_count", &Instance::task_count)
        .def_property_readonly("position_count", &Instance::position_count)
        .def("task", &Instance::task, py::return_value_policy::copy)
        .def("distance", &Instance::distance);

    m.def("validate_instance", &validate_instance);
    m.def("travel_time", &travel_time);

    py::class_<DualChain>(m, "DualChain")
        .def(py::init<>())
        .def(py::init([](std::vector<std::vector<int>> c, std::vector<std::vector<int>> s) {
                 return DualChain{std::move(c), std::move(s)};
             }),
             py::arg("carrier_routes"), py::arg("shuttle_routes"))
        .def_readwrite("carrier_routes", &DualChain::carrier_routes)
        .def_readwrite("shuttle_routes", &DualChain::shuttle_routes)
        .def("__eq__", [](const DualChain& a, const DualChain& b) { return a == b; });

    py::enum_<Side>(m, "Side").value("Carrier", Side::Carrier).value("Shuttle", Side::Shuttle);

    py::class_<Slot>(m, "Slot")
        .def(py::init([](Side side, int agv, int gap) { return Slot{side, agv, gap}; }), py::arg("side"),
             py::arg("agv"), py::arg("gap"))
        .def_readwrite("side", &Slot::side)
        .def_readwrite("agv", &Slot::agv)
        .def_readwrite("gap", &Slot::gap)
        .def("__eq__", [](const Slot& a, const Slot& b) { return a == b; })
        .def("__lt__", [](const Slot& a, const Slot& b) { return a < b; })
        .def("__hash__", [](const Slot& s) { return std::hash<int>()(static_cast<int>(s.side) * 1000003 + s.agv * 1009 + s.gap); })
        .def("__repr__", [](const Slot& s) {
            return "Slot(" + std::string(s.side == Side::Carrier ? "carrier" : "shuttle") + ", agv=" +
                   std::to_string(s.agv) + ", gap=" + std::to_string(s.gap) + ")";
        });

    py::class_<Marking>(m, "Marking")
        .def_readonly("carrier_tasks", &Marking::carrier_tasks)
        .def_readonly("shuttle_tasks", &Marking::shuttle_tasks)
        .def_readonly("carrier_terminals", &Marking::carrier_terminals)
        .def_readonly("shuttle_terminals", &Marking::shuttle_terminals)
        .def("__eq__", [](const Marking& a, const Marking& b) { return a == b; });

    py::class_<SolutionNet>(m, "SolutionNet")
        .def(py::init<const Instance&>(), py::keep_alive<1, 2>())
        .def(py::init<const Instance&, const DualChain&>(), py::keep_alive<1, 2>())
        .def("chain", &SolutionNet::chain)
        .def_property_readonly("placed_count", &SolutionNet::placed_count)
        .def("is_placed", &SolutionNet::is_placed)
        .def("reset_marking", &SolutionNet::reset_marking)
        .def("is_enabled", &SolutionNet::is_enabled)
        .def("enabled_transitions", &SolutionNet::enabled_transitions)
        .def("fire", &SolutionNet::fire)
        .def("is_fired", &SolutionNet::is_fired)
        .def("is_final", &SolutionNet::is_final)
        .def("marking", &SolutionNet::marking)
        .def("insert_task", &SolutionNet::insert_task)
        .def("remove_task", &SolutionNet::remove_task)
        .def("slot_count", &SolutionNet::slot_count);

    py::class_<TaskTiming>(m, "TaskTiming")
        .def_readonly("start", &TaskTiming::start)
        .def_readonly("attach", &TaskTiming::attach)
        .def_readonly("detach", &TaskTiming::detach)
        .def_readonly("completion", &TaskTiming::completion)
        .def_readonly("wait", &TaskTiming::wait)
        .def_readonly("distance", &TaskTiming::distance)
        .def_readonly("tardiness", &TaskTiming::tardiness);

    py::class_<Schedule>(m, "Schedule")
        .def_readonly("per_task", &Schedule::per_task)
        .def_readonly("objective", &Schedule::objective)
        .def_readonly("feasible", &Schedule::feasible)
        .def_readonly("firing_order", &Schedule::firing_order);

    m.def(
        "fdd", [](const Instance& inst, const DualChain& chain) { return fdd(inst, chain); },
        "Firing-driven decode of a dual chain", py::arg("instance"), py::arg("chain"));
    m.def(
        "is_feasible",
        [](const Instance& inst, const DualChain& chain) {
            SolutionNet net(inst, chain);
            return is_feasible(net);
        },
        py::arg("instance"), py::arg("chain"));

    py::class_<InfeasibleSlots>(m, "InfeasibleSlots")
        .def_readonly("backward", &InfeasibleSlots::backward)
        .def_readonly("forward", &InfeasibleSlots::forward)
        .def_readonly("visited", &InfeasibleSlots::visited)
        .def("all", &InfeasibleSlots::all);

    m.def("brs", &brs, py::arg("net"), py::arg("task"), py::arg("placed_slot"));
    m.def("brs_tentative", &brs_tentative, py::arg("net"), py::arg("slot"));
    m.def("ipp", &ipp, py::arg("net"), py::arg("task"));
    m.def("rpd", &rpd, py::arg("objective"), py::arg("best"));

    py::class_<AlnsConfig> cfg(m, "AlnsConfig");
    cfg.def(py::init<>())
        .def_readwrite("mu", &AlnsConfig::mu)
        .def_readwrite("phi", &AlnsConfig::phi)
        .def_readwrite("rho", &AlnsConfig::rho)
        .def_readwrite("kappa", &AlnsConfig::kappa)
        .def_readwrite("psi", &AlnsConfig::psi)
        .def_readwrite("zeta", &AlnsConfig::zeta)
        .def_readwrite("seed", &AlnsConfig::seed)
        .def_readwrite("budget_mode", &AlnsConfig::budget_mode)
        .def_readwrite("budget_ms", &AlnsConfig::budget_ms)
        .def_readwrite("iterations", &AlnsConfig::iterations)
        .def_readwrite("use_brs", &AlnsConfig::use_brs)
        .def_readwrite("record_log", &AlnsConfig::record_log);
    py::enum_<AlnsConfig::Budget>(cfg, "Budget")
        .value("WallClockMs", AlnsConfig::Budget::WallClockMs)
        .value("Iterations", AlnsConfig::Budget::Iterations);

    py::class_<AlnsResult>(m, "AlnsResult")
        .def_readonly("best_chain", &AlnsResult::best_chain)
        .def_readonly("best_schedule", &AlnsResult::best_schedule)
        .def_readonly("iterations", &AlnsResult::iterations)
        .def_readonly("elapsed_ms", &AlnsResult::elapsed_ms)
        .def_readonly("initial_objective", &AlnsResult::initial_objective);

    m.def("solve", &solve, py::arg("instance"), py::arg("config") = AlnsConfig{},
          py::call_guard<py::gil_scoped_release>());
    m.def("initial_solution", &initial_solution);
    m.def("default_budget_ms", &default_budget_ms);

    py::class_<EddbidResult>(m, "EddbidResult")
        .def_readonly("chain", &EddbidResult::chain)
        .def_readonly("schedule", &EddbidResult::schedule);
    m.def("eddbid", &eddbid, py::call_guard<py::gil_scoped_release>());

    py::class_<OracleLimits>(m, "OracleLimits")
        .def(py::init<>())
        .def_readwrite("max_tasks", &OracleLimits::max_tasks)
        .def_readwrite("max_candidates", &OracleLimits::max_candidates);
    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("optimal_objective", &OracleResult::optimal_objective)
        .def_readonly("optimal_chain", &OracleResult::optimal_chain)
        .def_readonly("enumerated", &OracleResult::enumerated);
    m.def("brute_force", &brute_force, py::arg("instance"), py::arg("limits") = OracleLimits{},
          py::call_guard<py::gil_scoped_release>());

    m.def("export_milp", &export_milp, py::arg("instance"), py::arg("big_l") = -1.0);
    m.def("default_big_l", &default_big_l);
    m.def("check_schedule_against_milp", &check_schedule_against_milp, py::arg("instance"), py::arg("chain"),
          py::arg("schedule"), py::arg("big_l") = -1.0);

    py::class_<GenerateSpec>(m, "GenerateSpec")
        .def(py::init<>())
        .def_readwrite("tasks", &GenerateSpec::tasks)
        .def_readwrite("carriers", &GenerateSpec::carriers)
        .def_readwrite("shuttles", &GenerateSpec::shuttles)
        .def_readwrite("positions", &GenerateSpec::positions)
        .def_readwrite("tightness", &GenerateSpec::tightness)
        .def_readwrite("seed", &GenerateSpec::seed)
        .def_readwrite("name", &GenerateSpec::name);
    m.def("generate_instance", &generate_instance);
    m.def("load_instance", &load_instance);
    m.def("save_instance", &save_instance);
    m.def("parse_instance", &parse_instance, py::arg("text"), py::arg("origin") = "<string>");
    m.def("instance_to_json", &instance_to_json);
}
