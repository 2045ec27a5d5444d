#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace ahasp;
using testutil::example_chain;
using testutil::example_instance;

namespace {

Marking make_marking(std::vector<int> ct, std::vector<int> st, std::vector<int> cterm, std::vector<int> sterm) {
    return Marking{std::move(ct), std::move(st), std::move(cterm), std::move(sterm)};
}

}  // namespace

TEST_CASE("worked example net: shape and initial marking") {
    const Instance inst = example_instance();
    SolutionNet net(inst, example_chain());
    CHECK(net.placed_count() == 7);
    CHECK(net.slot_count(Side::Carrier) == 9);   // 7 tasks + 2 carriers
    CHECK(net.slot_count(Side::Shuttle) == 9);
    // tokens at the route heads on both sides
    CHECK(net.marking() == make_marking({5, 6}, {5, 6}, {}, {}));
    CHECK(net.enabled_transitions() == std::vector<int>{5, 6});
    CHECK_FALSE(net.is_final());
}

TEST_CASE("firing trace of the worked example") {
    const Instance inst = example_instance();
    SolutionNet net(inst, example_chain());

    net.fire(5);
    CHECK(net.marking() == make_marking({4, 6}, {1, 6}, {}, {}));

    net.fire(6);
    CHECK(net.marking() == make_marking({1, 4}, {1, 3}, {}, {}));

    net.fire(1);
    CHECK(net.marking() == make_marking({3, 4}, {3, 4}, {}, {}));

    net.fire(4);
    CHECK(net.marking() == make_marking({2, 3}, {3, 7}, {}, {}));

    net.fire(3);
    CHECK(net.marking() == make_marking({2, 7}, {2, 7}, {}, {}));

    net.fire(7);
    CHECK(net.marking() == make_marking({2}, {2}, {1}, {0}));

    net.fire(2);
    CHECK(net.marking() == make_marking({}, {}, {0, 1}, {0, 1}));
    CHECK(net.is_final());
    CHECK(net.enabled_transitions().empty());
}

TEST_CASE("firing a disabled or fired transition throws") {
    const Instance inst = example_instance();
    SolutionNet net(inst, example_chain());
    CHECK_THROWS_AS(net.fire(1), std::logic_error);  // not enabled at M0
    net.fire(5);
    CHECK_THROWS_AS(net.fire(5), std::logic_error);  // fire-once
}

TEST_CASE("single-task net") {
    const Instance inst = testutil::random_instance(1, 1, 1, 3);
    SolutionNet net(inst, DualChain{{{1}}, {{1}}});
    CHECK(net.placed_count() == 1);
    CHECK(net.enabled_transitions() == std::vector<int>{1});
    net.fire(1);
    CHECK(net.is_final());
}

TEST_CASE("cross-ordered pair deadlocks: no transition enabled") {
    const Instance inst = testutil::random_instance(2, 1, 1, 5);
    SolutionNet net(inst, DualChain{{{1, 2}}, {{2, 1}}});
    CHECK(net.enabled_transitions().empty());
    CHECK_FALSE(net.is_final());
}

TEST_CASE("empty route pre-marks its terminal place") {
    const Instance inst = testutil::random_instance(2, 2, 1, 8);
    SolutionNet net(inst, DualChain{{{1, 2}, {}}, {{1, 2}}});
    const Marking m0 = net.marking();
    CHECK(m0.carrier_terminals == std::vector<int>{1});
    net.fire(1);
    net.fire(2);
    CHECK(net.is_final());
}

TEST_CASE("chain invariants are enforced at build") {
    const Instance inst = testutil::random_instance(3, 2, 2, 11);
    CHECK_THROWS_AS(SolutionNet(inst, DualChain{{{1, 2, 1}, {}}, {{1, 2}, {}}}), std::invalid_argument);
    CHECK_THROWS_AS(SolutionNet(inst, DualChain{{{1, 2}, {}}, {{1}, {}}}), std::invalid_argument);
    CHECK_THROWS_AS(SolutionNet(inst, DualChain{{{1, 9}, {}}, {{1, 9}, {}}}), std::invalid_argument);
    CHECK_THROWS_AS(SolutionNet(inst, DualChain{{{1}}, {{1}, {}}}), std::invalid_argument);
}

TEST_CASE("insert task 8 after 1 and before 3") {
    Instance inst = testutil::random_instance(8, 2, 2, 21);
    SolutionNet net(inst, example_chain());
    // carrier 1 gap 2 lands between tasks 1 and 3; shuttle 0 gap 2 between 1 and 4
    net.insert_task(8, Slot{Side::Carrier, 1, 2}, Slot{Side::Shuttle, 0, 2});
    CHECK(net.routes(Side::Carrier)[1] == std::vector<int>{6, 1, 8, 3, 7});
    CHECK(net.routes(Side::Shuttle)[0] == std::vector<int>{5, 1, 8, 4, 7});
    CHECK(net.placed_count() == 8);
    CHECK(net.pred(Side::Carrier, 8) == 1);
    CHECK(net.succ(Side::Carrier, 8) == 3);

    net.remove_task(8);
    CHECK(net.chain() == example_chain());
}

TEST_CASE("insert into an empty route at gap 0") {
    const Instance inst = testutil::random_instance(1, 1, 1, 2);
    SolutionNet net(inst);
    net.insert_task(1, Slot{Side::Carrier, 0, 0}, Slot{Side::Shuttle, 0, 0});
    CHECK(net.routes(Side::Carrier)[0] == std::vector<int>{1});
    CHECK(net.routes(Side::Shuttle)[0] == std::vector<int>{1});
}

TEST_CASE("remove splices the adjacency") {
    const Instance inst = example_instance();
    SolutionNet net(inst, example_chain());
    net.remove_task(4);
    CHECK(net.routes(Side::Carrier)[0] == std::vector<int>{5, 2});
    CHECK(net.succ(Side::Carrier, 5) == 2);
    CHECK(net.pred(Side::Carrier, 2) == 5);
    CHECK(net.routes(Side::Shuttle)[0] == std::vector<int>{5, 1, 7});

    SUBCASE("remove the only task of a route") {
        SolutionNet single(testutil::random_instance(1, 1, 1, 2), DualChain{{{1}}, {{1}}});
        single.remove_task(1);
        CHECK(single.routes(Side::Carrier)[0].empty());
        CHECK(single.is_final());  // empty chain: initial marking is final
    }
}

TEST_CASE("insert/remove error paths") {
    const Instance inst = example_instance();
    SolutionNet net(inst, example_chain());
    CHECK_THROWS_AS(net.insert_task(5, Slot{Side::Carrier, 0, 0}, Slot{Side::Shuttle, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(net.remove_task(99), std::invalid_argument);
    net.remove_task(5);
    CHECK_THROWS_AS(net.insert_task(5, Slot{Side::Carrier, 0, 9}, Slot{Side::Shuttle, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(net.insert_task(5, Slot{Side::Carrier, 7, 0}, Slot{Side::Shuttle, 0, 0}), std::invalid_argument);
}

TEST_CASE("remove then re-insert at the original slots is a structural no-op") {
    const Instance inst = testutil::random_instance(9, 3, 2, 77);
    Rng rng(5);
    for (int round = 0; round < 50; ++round) {
        const DualChain chain = testutil::random_chain(inst, rng);
        SolutionNet net(inst, chain);
        const int task = 1 + static_cast<int>(rng.uniform_int(9));
        const Slot cslot{Side::Carrier, net.agv_of(Side::Carrier, task), net.position_of(Side::Carrier, task)};
        const Slot sslot{Side::Shuttle, net.agv_of(Side::Shuttle, task), net.position_of(Side::Shuttle, task)};
        net.remove_task(task);
        net.insert_task(task, cslot, sslot);
        CHECK(net.chain() == chain);
    }
}

TEST_CASE("token conservation and fire-once over random maximal firing sequences") {
    Rng rng(303);
    int checked = 0;
    for (int round = 0; round < 400; ++round) {
        const Instance inst = testutil::random_instance(2 + static_cast<int>(rng.uniform_int(8)), 1 + static_cast<int>(rng.uniform_int(3)),
                                                        1 + static_cast<int>(rng.uniform_int(3)), 1000 + round);
        SolutionNet net(inst, testutil::random_chain(inst, rng));
        const int mc = inst.fleet.carriers(), ms = inst.fleet.shuttles();
        while (true) {
            const Marking m = net.marking();
            CHECK(static_cast<int>(m.carrier_tasks.size() + m.carrier_terminals.size()) == mc);
            CHECK(static_cast<int>(m.shuttle_tasks.size() + m.shuttle_terminals.size()) == ms);
            if (!net.is_final()) {
                // token positivity at any reachable non-final marking
                CHECK(!m.carrier_tasks.empty());
                CHECK(!m.shuttle_tasks.empty());
            }
            const auto enabled = net.enabled_transitions();
            if (enabled.empty()) break;
            const int pick = enabled[rng.uniform_int(enabled.size())];
            net.fire(pick);
            CHECK_THROWS_AS(net.fire(pick), std::logic_error);
            ++checked;
        }
    }
    CHECK(checked > 500);
}
