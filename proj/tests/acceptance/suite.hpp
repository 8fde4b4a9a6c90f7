#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace corrdyn::acceptance {

struct Options {
    std::uint64_t seed = 20240601;
    // Fraction of the full Monte Carlo and sampling budgets; the self-test runs below 1.
    double scale = 1.0;
    std::vector<int> only;  // criterion ids to run; empty means all
};

struct Result {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;
};

// Runs the criteria in order, reporting each result as soon as it is known.
std::vector<Result> run(const Options& options, const std::function<void(const Result&)>& on_result = {});

// One line: "PASS  3  title  (1.23 s / 120 s)  detail"
std::string format(const Result& r);

}  // namespace corrdyn::acceptance
