#include "ramify/sweep.hpp"

#include <algorithm>

#include "ramify/errors.hpp"

namespace ramify {

namespace {

std::vector<SweepCell> layout(const SweepRequest& req) {
    if (req.series == nullptr || req.floor == nullptr || req.profile == nullptr)
        throw ValidationError("sweep request is incomplete");
    if (req.cmax < 0) throw ValidationError("cmax must be nonnegative");
    std::vector<SweepCell> cells;
    for (int j = 0; j <= req.profile->nu; ++j) {
        const PLFunction f = phi(*req.profile, j);
        for (std::int64_t c = 0; c <= req.cmax; ++c) cells.push_back({j, c, f(c), std::nullopt, nullptr});
    }
    return cells;
}

void fill(const SweepRequest& req, const FloorElement& u, SweepCell& cell) {
    try {
        cell.oracle = capital_phi(*req.series, *req.floor, cell.c, cell.j, req.flavor, u);
    } catch (...) {
        cell.error = std::current_exception();
    }
}

} // namespace

std::vector<SweepCell> sweep_serial(const SweepRequest& req) {
    auto cells = layout(req);
    const FloorElement u = req.u ? *req.u : req.floor->one();
    for (auto& cell : cells) fill(req, u, cell);
    return cells;
}

std::vector<SweepCell> sweep_parallel(const SweepRequest& req) {
    auto cells = layout(req);
    const FloorElement u = req.u ? *req.u : req.floor->one();
    const auto count = static_cast<std::int64_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t idx = 0; idx < count; ++idx) fill(req, u, cells[static_cast<std::size_t>(idx)]);
    return cells;
}

bool all_match(const std::vector<SweepCell>& cells) {
    return std::all_of(cells.begin(), cells.end(), [](const SweepCell& c) { return c.match(); });
}

} // namespace ramify
