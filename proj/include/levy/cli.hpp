#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace levy {

struct CliOptions {
    std::filesystem::path config_path;
    std::filesystem::path out_dir = ".";
    int threads = 1;
    std::string log_level = "info";
};

// Exit codes: 0 all requested work done (and every requested check passed),
// 2 configuration rejected, 3 model/regime violation, 4 numerical
// non-convergence, 1 anything else.
int run(const CliOptions& options);

// Same dispatch on an already-parsed document; used by the tests.
int run_with_config(const nlohmann::json& config, const CliOptions& options);

// FNV-1a over the canonical (key-sorted) dump; embedded in every output file.
std::string config_hash(const nlohmann::json& config);

} // namespace levy
