#pragma once

// The `ramify` command line: job-file parsing, commands and reports.

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramify/extension.hpp"

namespace ramify::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kPrecision = 3, kInternal = 4 };

/// A parsed job file: the ground floor and the named floors above it.
struct Job {
    std::string ground_name = "K";
    std::vector<std::string> order;  // ground first, then fields in file order
    std::map<std::string, std::shared_ptr<const Floor>> floors;

    [[nodiscard]] std::shared_ptr<const Floor> floor(const std::string& name) const;
    [[nodiscard]] std::string name_of(const Floor& f) const;
};

/// Parses job JSON:
///   {"p": 2, "mode": "equal"|"mixed", "precision": N, "ground": "K",
///    "fields": [{"name": "L", "base": "K", "coefficients": [c_0, ...]}]}
/// A ground element is [[digit, power], ...] meaning sum digit * pi_K^power; an
/// element of a higher floor is the array of its coordinates (elements of the
/// base floor) indexed by powers of the floor's uniformizer. Throws
/// ValidationError.
Job parse_job(const nlohmann::json& j);
Job load_job(const std::string& path);

/// Element decoding per the encoding above.
FloorElement decode_element(const Floor& floor, const nlohmann::json& j);

/// Runs the command line (args excludes the program name) and returns the
/// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ramify::cli
