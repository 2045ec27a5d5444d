#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ahasp/alns.hpp"
#include "ahasp/decode.hpp"
#include "ahasp/instance.hpp"
#include "ahasp/metrics.hpp"
#include "ahasp/net.hpp"

namespace ahasp {

// Raised on malformed documents; the message names the offending field.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance documents are JSON with either an explicit distance matrix or a
// coordinate list from which rectilinear distances are derived.
Instance load_instance(const std::string& path);
Instance parse_instance(const std::string& text, const std::string& origin = "<string>");
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

struct SolutionDoc {
    std::string instance_ref;
    std::string algorithm;
    uint64_t seed = 0;
    int64_t budget_ms = 0;
    int64_t iterations = 0;
    DualChain chain;
    Schedule schedule;
};

std::string solution_to_json(const SolutionDoc& doc);
SolutionDoc parse_solution(const std::string& text, const std::string& origin = "<string>");
SolutionDoc load_solution(const std::string& path);
void save_solution(const SolutionDoc& doc, const std::string& path);

struct GenerateSpec {
    int tasks = 5;
    int carriers = 4;
    int shuttles = 8;
    int positions = 12;      // split between a pasting row and a curing row
    double tightness = 0.5;  // fraction of tasks with binding due dates
    uint64_t seed = 1;
    std::string name;
};

// Deterministic two-row corridor generator: pasting chambers on one row,
// curing chambers on the other, rectilinear distances. Sources come from
// the pasting row, destinations from the curing row. A `tightness` fraction
// of tasks gets a due date near its lower bound; the rest get a due date no
// schedule can miss.
Instance generate_instance(const GenerateSpec& spec);

// Copy of the instance with the fleet resized; start positions cycle
// through the existing ones. Used by the sensitivity sweep.
Instance refit_fleet(const Instance& base, int carriers, int shuttles);

// CSV writers; every table carries a header row and a fixed column order.
std::string run_log_csv(const std::vector<IterationRow>& log);
std::string operator_stats_csv(const OperatorBank& bank);

struct BenchRow {
    std::string instance_id;
    std::string algorithm;
    uint64_t seed = 0;
    double objective = 0.0;
    double rpd = 0.0;
    int64_t iterations = 0;
    double elapsed_ms = 0.0;
};
std::string bench_csv(const std::vector<BenchRow>& rows);

struct AccelRow {
    std::string instance_id;
    int tasks = 0;
    int carriers = 0;
    int shuttles = 0;
    double ipp = 0.0;
    double iters_with = 0.0;
    double iters_without = 0.0;
    double acceleration_ratio = 0.0;
    double rpd_with = 0.0;
    double rpd_without = 0.0;
    double rpd_gap = 0.0;
};
std::string accel_csv(const std::vector<AccelRow>& rows);

struct SweepRow {
    int carriers = 0;
    int shuttles = 0;
    double mean_distance = 0.0;
    double mean_tardiness = 0.0;
    int runs = 0;
};
std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ahasp
