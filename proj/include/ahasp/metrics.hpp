#pragma once

#include <cstdint>
#include <string>

#include "ahasp/net.hpp"

namespace ahasp {

// One benchmarked run of one algorithm on one instance.
struct RunRecord {
    std::string instance_id;
    std::string algorithm;
    uint64_t seed = 0;
    double objective = 0.0;
    int64_t iterations = 0;  // completed destroy-repair cycles
    double elapsed_ms = 0.0;
    bool with_brs = true;
};

// Relative percentage deviation of an objective from the best known one.
// Throws std::invalid_argument when best <= 0 or objective < best.
double rpd(double objective, double best);

struct AccelerationMetrics {
    double acceleration_ratio = 0.0;  // iteration gain of BRS, percent
    double rpd_gap = 0.0;             // RPD(without) - RPD(with), percent points
};

// Pairs a with-BRS run against its without-BRS twin. Throws
// std::invalid_argument when the records are not a matching pair.
AccelerationMetrics acceleration_metrics(const RunRecord& with_brs, const RunRecord& without_brs,
                                         double rpd_with, double rpd_without);

// Infeasible position proportion for inserting `task` into the net (the
// task must not be placed): infeasible shuttle gaps summed over every
// carrier gap, relative to all slot pairs, in percent.
double ipp(const SolutionNet& net, int task);

}  // namespace ahasp
