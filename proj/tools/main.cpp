#include <CLI11.hpp>

#include "levy/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "levyinspect: transforms, inversion and Monte-Carlo verification for "
        "Levy processes observed at Poisson or Erlang inspection epochs"};

    levy::CliOptions options;
    app.add_option("--config", options.config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--out", options.out_dir, "output directory (created if missing)");
    app.add_option("--threads", options.threads, "worker threads (affects speed only, never results)")
        ->check(CLI::PositiveNumber);
    app.add_option("--log-level", options.log_level, "quiet|info|debug")
        ->check(CLI::IsMember({"quiet", "info", "debug"}));

    CLI11_PARSE(app, argc, argv);
    return levy::run(options);
}
