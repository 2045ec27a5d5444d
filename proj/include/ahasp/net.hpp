#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "ahasp/instance.hpp"

namespace ahasp {

// Permutation genotype: one ordered task-id sequence per AGV, carriers and
// shuttles separately. Every placed task appears exactly once on each side.
struct DualChain {
    std::vector<std::vector<int>> carrier_routes;
    std::vector<std::vector<int>> shuttle_routes;

    auto operator<=>(const DualChain&) const = default;
};

enum class Side : uint8_t { Carrier = 0, Shuttle = 1 };

inline Side opposite(Side s) { return s == Side::Carrier ? Side::Shuttle : Side::Carrier; }

// A physical insertion gap on one side: gap g of AGV `agv` (0-based per side)
// sits between route[g-1] and route[g].
struct Slot {
    Side side = Side::Carrier;
    int agv = 0;
    int gap = 0;

    auto operator<=>(const Slot&) const = default;
};

// Snapshot of a marking: which task places hold a token on each side and
// which terminal places are filled. Used by tests and trace output.
struct Marking {
    std::vector<int> carrier_tasks;      // task ids with a token in their carrier place
    std::vector<int> shuttle_tasks;      // mirror, shuttle side
    std::vector<int> carrier_terminals;  // carrier indices whose terminal place is marked
    std::vector<int> shuttle_terminals;

    bool operator==(const Marking&) const = default;
};

// The conflict-free Petri net modeling a dual-chain schedule: one transition
// per placed task with two input places (carrier-ready, shuttle-ready) chained
// along route adjacency, plus one terminal place per AGV. Tokens are AGVs.
//
// The net is maintained incrementally: inserting or removing a task splices
// the adjacency arcs of its route neighbours instead of rebuilding. Structure
// edits reset the marking to the initial one; the token game (fire/is_final)
// runs on top of the frozen structure.
//
// An AGV with an empty route has its terminal place pre-marked at the initial
// marking, so the final marking stays reachable for partial chains.
class SolutionNet {
public:
    explicit SolutionNet(const Instance& inst);
    SolutionNet(const Instance& inst, const DualChain& chain);

    const Instance& instance() const { return *inst_; }
    DualChain chain() const;
    const std::vector<std::vector<int>>& routes(Side side) const {
        return side == Side::Carrier ? carrier_routes_ : shuttle_routes_;
    }

    int placed_count() const { return placed_count_; }
    bool is_placed(int task) const;
    bool is_placed_on(Side side, int task) const;
    // 0-based AGV index of the task on the given side; -1 if not placed there.
    int agv_of(Side side, int task) const;
    // Position within its route; -1 if not placed on that side.
    int position_of(Side side, int task) const;
    // Adjacent task ids along the route; 0 means virtual origin / route tail.
    int pred(Side side, int task) const;
    int succ(Side side, int task) const;
    // Number of insertion gaps on a side: placed tasks + fleet size.
    int slot_count(Side side) const;

    // --- token game ------------------------------------------------------
    void reset_marking();
    bool is_enabled(int task) const;
    std::vector<int> enabled_transitions() const;  // ascending task id
    // Fires an enabled transition: consumes the two input tokens, forwards
    // them to the successor places (or terminal places at a route tail).
    // Throws std::logic_error when disabled or already fired.
    void fire(int task);
    bool is_fired(int task) const;
    int fired_count() const { return fired_count_; }
    // Final marking: every terminal place holds exactly one token and every
    // task place holds zero.
    bool is_final() const;
    Marking marking() const;

    // --- structure edits (reset the marking) ------------------------------
    // Inserts the task at one slot per side. Throws std::invalid_argument if
    // the task is already placed or a slot is out of range.
    void insert_task(int task, const Slot& carrier_slot, const Slot& shuttle_slot);
    // Removes the task from both sides. Throws if not placed.
    void remove_task(int task);
    // Half insertion used while repairing: places the task on one side only.
    // The net is not decodable in this state; the other side must follow.
    void insert_side(int task, const Slot& slot);
    void remove_side(int task, Side side);

private:
    struct Links {
        int agv = -1;  // -1: not placed on this side
        int pos = -1;
    };

    std::vector<std::vector<int>>& routes_mut(Side side) {
        return side == Side::Carrier ? carrier_routes_ : shuttle_routes_;
    }
    Links& links(Side side, int task) {
        return side == Side::Carrier ? carrier_links_[static_cast<size_t>(task)]
                                     : shuttle_links_[static_cast<size_t>(task)];
    }
    const Links& links(Side side, int task) const {
        return side == Side::Carrier ? carrier_links_[static_cast<size_t>(task)]
                                     : shuttle_links_[static_cast<size_t>(task)];
    }
    void ensure_capacity(int task);
    void reindex_from(Side side, int agv, int from_pos);
    void check_slot(const Slot& slot, Side expected) const;

    const Instance* inst_;
    std::vector<std::vector<int>> carrier_routes_;
    std::vector<std::vector<int>> shuttle_routes_;
    std::vector<Links> carrier_links_;  // indexed by task id
    std::vector<Links> shuttle_links_;
    std::vector<uint8_t> token_carrier_;  // marking of p_i^+ per task id
    std::vector<uint8_t> token_shuttle_;
    std::vector<uint8_t> terminal_carrier_;  // terminal place per carrier
    std::vector<uint8_t> terminal_shuttle_;
    std::vector<uint8_t> fired_;
    int placed_count_ = 0;
    int fired_count_ = 0;
};

// Builds the net for a full or partial chain. Throws std::invalid_argument
// when the chain violates the dual-chain invariants (unknown ids, a task
// duplicated on a side, or placed on one side only).
SolutionNet build_net(const Instance& inst, const DualChain& chain);

}  // namespace ahasp
