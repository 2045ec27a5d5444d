#include "ahasp/metrics.hpp"

#include <stdexcept>

#include "ahasp/deadlock.hpp"

namespace ahasp {

double rpd(double objective, double best) {
    if (!(best > 0.0)) throw std::invalid_argument("rpd: best objective must be > 0");
    if (objective < best) throw std::invalid_argument("rpd: objective below the best bound");
    return (objective - best) / best * 100.0;
}

AccelerationMetrics acceleration_metrics(const RunRecord& with_brs, const RunRecord& without_brs, double rpd_with,
                                         double rpd_without) {
    if (!with_brs.with_brs || without_brs.with_brs)
        throw std::invalid_argument("acceleration_metrics: records are not a with/without pair");
    if (with_brs.instance_id != without_brs.instance_id)
        throw std::invalid_argument("acceleration_metrics: instance mismatch");
    if (without_brs.iterations <= 0) throw std::invalid_argument("acceleration_metrics: empty baseline run");
    AccelerationMetrics m;
    m.acceleration_ratio = static_cast<double>(with_brs.iterations - without_brs.iterations) /
                           static_cast<double>(without_brs.iterations) * 100.0;
    m.rpd_gap = rpd_without - rpd_with;
    return m;
}

double ipp(const SolutionNet& net, int task) {
    if (net.is_placed(task)) throw std::invalid_argument("ipp: task must be removed first");
    const int carrier_slots = net.slot_count(Side::Carrier);
    const int shuttle_slots = net.slot_count(Side::Shuttle);
    uint64_t infeasible = 0;
    for (int agv = 0; agv < static_cast<int>(net.routes(Side::Carrier).size()); ++agv) {
        const int gaps = static_cast<int>(net.routes(Side::Carrier)[static_cast<size_t>(agv)].size()) + 1;
        for (int gap = 0; gap < gaps; ++gap)
            infeasible += brs_tentative(net, Slot{Side::Carrier, agv, gap}).all().size();
    }
    return static_cast<double>(infeasible) /
           (static_cast<double>(carrier_slots) * static_cast<double>(shuttle_slots)) * 100.0;
}

}  // namespace ahasp
