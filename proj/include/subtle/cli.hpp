#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subtle/bidegree.hpp"

namespace subtle::cli {

enum class Format { text, json };

/// Settings shared by every subcommand. A JSON config file may preset any
/// of them; flags given on the command line win.
struct RunConfig {
    std::string model = "real";
    Bidegree box{8, 8};
    bool box_given = false;
    Format format = Format::text;
    std::uint64_t seed = 20240611;
    std::optional<std::string> out;
};

/// Exit status: 0 success, 1 a verification failed, 2 usage or config error.
/// `args` excludes the program name. Reports go to `out` (or the --out file),
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subtle::cli
