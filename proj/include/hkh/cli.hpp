#pragma once

#include "hkh/homology.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace hkh {

enum class Command { compute, verify_d2, verify_moves, verify_table1, dump_cube };

struct RunConfig {
    Command command = Command::compute;
    std::string input;  ///< diagram file; optional for verify-d2 and verify-table1
    Flavor flavor = Flavor::homotopical;
    ReportFormat format = ReportFormat::text;
    bool shift = true;
    std::uint64_t seed = 0;
    std::string moves;  ///< explicit move list for verify-moves
    int fuzz = 100;     ///< random diagrams for verify-d2 without an input
};

/// Exit status: 0 when every check passes, 1 when a check fails, 2 for
/// unreadable or invalid input.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hkh
