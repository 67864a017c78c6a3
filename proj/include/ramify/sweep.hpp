#pragma once

// The (j, c) grid comparing the oracle Phi^j(c) with the envelope phi^j(c).
// sweep_parallel distributes cells over OpenMP threads; sweep_serial is the
// reference it is tested against.

#include <cstdint>
#include <exception>
#include <optional>
#include <vector>

#include "ramify/invariants.hpp"
#include "ramify/oracle.hpp"

namespace ramify {

struct SweepCell {
    int j = 0;
    std::int64_t c = 0;
    Rational formula;                    // phi^j(c)
    std::optional<std::int64_t> oracle;  // Phi^j(c), empty when the oracle threw
    std::exception_ptr error;

    [[nodiscard]] bool match() const { return oracle && Rational(*oracle) == formula; }
};

struct SweepRequest {
    const GeneralSeries* series = nullptr;
    const Floor* floor = nullptr;
    const InsepProfile* profile = nullptr;
    std::int64_t cmax = 6;
    Flavor flavor = Flavor::Full;
    std::optional<FloorElement> u;  // defaults to 1
};

/// Cells ordered by j, then c.
std::vector<SweepCell> sweep_serial(const SweepRequest& req);
std::vector<SweepCell> sweep_parallel(const SweepRequest& req);

bool all_match(const std::vector<SweepCell>& cells);

} // namespace ramify
