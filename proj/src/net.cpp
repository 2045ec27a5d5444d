#include "ahasp/net.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ahasp {

namespace {

std::string side_name(Side s) { return s == Side::Carrier ? "carrier" : "shuttle"; }

}  // namespace

SolutionNet::SolutionNet(const Instance& inst) : inst_(&inst) {
    carrier_routes_.resize(static_cast<size_t>(inst.fleet.carriers()));
    shuttle_routes_.resize(static_cast<size_t>(inst.fleet.shuttles()));
    const size_t cap = static_cast<size_t>(inst.max_task_id()) + 1;
    carrier_links_.resize(cap);
    shuttle_links_.resize(cap);
    token_carrier_.resize(cap, 0);
    token_shuttle_.resize(cap, 0);
    fired_.resize(cap, 0);
    terminal_carrier_.resize(static_cast<size_t>(inst.fleet.carriers()), 0);
    terminal_shuttle_.resize(static_cast<size_t>(inst.fleet.shuttles()), 0);
    reset_marking();
}

SolutionNet::SolutionNet(const Instance& inst, const DualChain& chain) : SolutionNet(inst) {
    if (static_cast<int>(chain.carrier_routes.size()) != inst.fleet.carriers() ||
        static_cast<int>(chain.shuttle_routes.size()) != inst.fleet.shuttles())
        throw std::invalid_argument("chain route count does not match fleet size");

    auto place_side = [&](Side side, const std::vector<std::vector<int>>& routes) {
        for (size_t a = 0; a < routes.size(); ++a) {
            for (size_t p = 0; p < routes[a].size(); ++p) {
                const int id = routes[a][p];
                if (!inst.has_task(id))
                    throw std::invalid_argument("chain references unknown task " + std::to_string(id));
                Links& l = links(side, id);
                if (l.agv >= 0)
                    throw std::invalid_argument("task " + std::to_string(id) + " appears twice on the " +
                                                side_name(side) + " side");
                l.agv = static_cast<int>(a);
                l.pos = static_cast<int>(p);
            }
        }
    };
    carrier_routes_ = chain.carrier_routes;
    shuttle_routes_ = chain.shuttle_routes;
    place_side(Side::Carrier, carrier_routes_);
    place_side(Side::Shuttle, shuttle_routes_);

    int carrier_placed = 0;
    for (const auto& r : carrier_routes_) carrier_placed += static_cast<int>(r.size());
    for (const auto& r : shuttle_routes_)
        for (int id : r)
            if (links(Side::Carrier, id).agv < 0)
                throw std::invalid_argument("task " + std::to_string(id) + " placed on the shuttle side only");
    int shuttle_placed = 0;
    for (const auto& r : shuttle_routes_) shuttle_placed += static_cast<int>(r.size());
    if (carrier_placed != shuttle_placed)
        throw std::invalid_argument("a task is placed on the carrier side only");

    placed_count_ = carrier_placed;
    reset_marking();
}

SolutionNet build_net(const Instance& inst, const DualChain& chain) { return SolutionNet(inst, chain); }

DualChain SolutionNet::chain() const { return DualChain{carrier_routes_, shuttle_routes_}; }

bool SolutionNet::is_placed(int task) const { return is_placed_on(Side::Carrier, task) || is_placed_on(Side::Shuttle, task); }

bool SolutionNet::is_placed_on(Side side, int task) const {
    if (task < 1 || task >= static_cast<int>(carrier_links_.size())) return false;
    return links(side, task).agv >= 0;
}

int SolutionNet::agv_of(Side side, int task) const {
    return is_placed_on(side, task) ? links(side, task).agv : -1;
}

int SolutionNet::position_of(Side side, int task) const {
    return is_placed_on(side, task) ? links(side, task).pos : -1;
}

int SolutionNet::pred(Side side, int task) const {
    const Links& l = links(side, task);
    if (l.agv < 0) throw std::invalid_argument("task " + std::to_string(task) + " not placed on " + side_name(side));
    return l.pos > 0 ? routes(side)[static_cast<size_t>(l.agv)][static_cast<size_t>(l.pos - 1)] : 0;
}

int SolutionNet::succ(Side side, int task) const {
    const Links& l = links(side, task);
    if (l.agv < 0) throw std::invalid_argument("task " + std::to_string(task) + " not placed on " + side_name(side));
    const auto& route = routes(side)[static_cast<size_t>(l.agv)];
    return l.pos + 1 < static_cast<int>(route.size()) ? route[static_cast<size_t>(l.pos + 1)] : 0;
}

int SolutionNet::slot_count(Side side) const {
    int placed = 0;
    for (const auto& r : routes(side)) placed += static_cast<int>(r.size());
    return placed + static_cast<int>(routes(side).size());
}

void SolutionNet::reset_marking() {
    std::fill(token_carrier_.begin(), token_carrier_.end(), uint8_t{0});
    std::fill(token_shuttle_.begin(), token_shuttle_.end(), uint8_t{0});
    std::fill(fired_.begin(), fired_.end(), uint8_t{0});
    fired_count_ = 0;
    for (size_t a = 0; a < carrier_routes_.size(); ++a) {
        if (carrier_routes_[a].empty())
            terminal_carrier_[a] = 1;  // pre-marked: an idle AGV is already done
        else {
            terminal_carrier_[a] = 0;
            token_carrier_[static_cast<size_t>(carrier_routes_[a].front())] = 1;
        }
    }
    for (size_t a = 0; a < shuttle_routes_.size(); ++a) {
        if (shuttle_routes_[a].empty())
            terminal_shuttle_[a] = 1;
        else {
            terminal_shuttle_[a] = 0;
            token_shuttle_[static_cast<size_t>(shuttle_routes_[a].front())] = 1;
        }
    }
}

bool SolutionNet::is_enabled(int task) const {
    if (task < 1 || task >= static_cast<int>(token_carrier_.size())) return false;
    return token_carrier_[static_cast<size_t>(task)] != 0 && token_shuttle_[static_cast<size_t>(task)] != 0;
}

std::vector<int> SolutionNet::enabled_transitions() const {
    std::vector<int> out;
    for (int id = 1; id < static_cast<int>(token_carrier_.size()); ++id)
        if (is_enabled(id)) out.push_back(id);
    return out;
}

bool SolutionNet::is_fired(int task) const {
    return task >= 1 && task < static_cast<int>(fired_.size()) && fired_[static_cast<size_t>(task)] != 0;
}

void SolutionNet::fire(int task) {
    if (is_fired(task)) throw std::logic_error("transition " + std::to_string(task) + " already fired");
    if (!is_enabled(task)) throw std::logic_error("transition " + std::to_string(task) + " is not enabled");
    token_carrier_[static_cast<size_t>(task)] = 0;
    token_shuttle_[static_cast<size_t>(task)] = 0;
    const int cs = succ(Side::Carrier, task);
    if (cs != 0)
        token_carrier_[static_cast<size_t>(cs)] = 1;
    else
        terminal_carrier_[static_cast<size_t>(links(Side::Carrier, task).agv)] += 1;
    const int ss = succ(Side::Shuttle, task);
    if (ss != 0)
        token_shuttle_[static_cast<size_t>(ss)] = 1;
    else
        terminal_shuttle_[static_cast<size_t>(links(Side::Shuttle, task).agv)] += 1;
    fired_[static_cast<size_t>(task)] = 1;
    ++fired_count_;
}

bool SolutionNet::is_final() const {
    for (uint8_t t : terminal_carrier_)
        if (t != 1) return false;
    for (uint8_t t : terminal_shuttle_)
        if (t != 1) return false;
    for (const auto& route : carrier_routes_)
        for (int id : route)
            if (token_carrier_[static_cast<size_t>(id)] != 0) return false;
    for (const auto& route : shuttle_routes_)
        for (int id : route)
            if (token_shuttle_[static_cast<size_t>(id)] != 0) return false;
    return true;
}

Marking SolutionNet::marking() const {
    Marking m;
    for (int id = 1; id < static_cast<int>(token_carrier_.size()); ++id) {
        if (token_carrier_[static_cast<size_t>(id)]) m.carrier_tasks.push_back(id);
        if (token_shuttle_[static_cast<size_t>(id)]) m.shuttle_tasks.push_back(id);
    }
    for (size_t a = 0; a < terminal_carrier_.size(); ++a)
        if (terminal_carrier_[a]) m.carrier_terminals.push_back(static_cast<int>(a));
    for (size_t a = 0; a < terminal_shuttle_.size(); ++a)
        if (terminal_shuttle_[a]) m.shuttle_terminals.push_back(static_cast<int>(a));
    return m;
}

void SolutionNet::ensure_capacity(int task) {
    if (task < 1) throw std::invalid_argument("task id must be >= 1");
    const size_t need = static_cast<size_t>(task) + 1;
    if (need <= carrier_links_.size()) return;
    carrier_links_.resize(need);
    shuttle_links_.resize(need);
    token_carrier_.resize(need, 0);
    token_shuttle_.resize(need, 0);
    fired_.resize(need, 0);
}

void SolutionNet::reindex_from(Side side, int agv, int from_pos) {
    const auto& route = routes(side)[static_cast<size_t>(agv)];
    for (size_t p = static_cast<size_t>(from_pos); p < route.size(); ++p)
        links(side, route[p]).pos = static_cast<int>(p);
}

void SolutionNet::check_slot(const Slot& slot, Side expected) const {
    if (slot.side != expected)
        throw std::invalid_argument("slot side mismatch: expected " + side_name(expected));
    const auto& rs = routes(expected);
    if (slot.agv < 0 || slot.agv >= static_cast<int>(rs.size()))
        throw std::invalid_argument(side_name(expected) + " index out of range: " + std::to_string(slot.agv));
    if (slot.gap < 0 || slot.gap > static_cast<int>(rs[static_cast<size_t>(slot.agv)].size()))
        throw std::invalid_argument("gap out of range: " + std::to_string(slot.gap));
}

void SolutionNet::insert_side(int task, const Slot& slot) {
    ensure_capacity(task);
    if (!inst_->has_task(task)) throw std::invalid_argument("unknown task " + std::to_string(task));
    if (is_placed_on(slot.side, task))
        throw std::invalid_argument("task " + std::to_string(task) + " already placed on " + side_name(slot.side));
    check_slot(slot, slot.side);
    auto& route = routes_mut(slot.side)[static_cast<size_t>(slot.agv)];
    route.insert(route.begin() + slot.gap, task);
    links(slot.side, task) = Links{slot.agv, slot.gap};
    reindex_from(slot.side, slot.agv, slot.gap + 1);
    if (is_placed_on(opposite(slot.side), task)) {
        ++placed_count_;
        reset_marking();
    }
}

void SolutionNet::remove_side(int task, Side side) {
    if (!is_placed_on(side, task))
        throw std::invalid_argument("task " + std::to_string(task) + " not placed on " + side_name(side));
    const Links l = links(side, task);
    auto& route = routes_mut(side)[static_cast<size_t>(l.agv)];
    route.erase(route.begin() + l.pos);
    links(side, task) = Links{};
    reindex_from(side, l.agv, l.pos);
    if (is_placed_on(opposite(side), task)) {
        --placed_count_;
        reset_marking();
    }
}

void SolutionNet::insert_task(int task, const Slot& carrier_slot, const Slot& shuttle_slot) {
    if (is_placed(task)) throw std::invalid_argument("task " + std::to_string(task) + " already placed");
    check_slot(carrier_slot, Side::Carrier);
    check_slot(shuttle_slot, Side::Shuttle);
    insert_side(task, carrier_slot);
    insert_side(task, shuttle_slot);
}

void SolutionNet::remove_task(int task) {
    if (!is_placed_on(Side::Carrier, task) || !is_placed_on(Side::Shuttle, task))
        throw std::invalid_argument("task " + std::to_string(task) + " is not placed");
    remove_side(task, Side::Shuttle);
    remove_side(task, Side::Carrier);
}

}  // namespace ahasp
