// frqme command-line front end.
//
//   frqme simulate    --config run.ini [--out DIR] [--svg] [--time-points N]
//   frqme sweep-tauc  --config run.ini [--workers N] ...
//   frqme sweep-alpha --config run.ini [--workers N] ...
//   frqme contour     --config run.ini [--workers N] ...
//   frqme eigen       --config run.ini ...
//
// Exit codes: 0 success, 2 usage or config error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>

#include "frqme/config.hpp"
#include "frqme/errors.hpp"
#include "frqme/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

using Command = std::function<frqme::CommandResult(const frqme::RunConfig&, const frqme::CommandOptions&)>;

struct Args {
  std::string config_path;
  std::string out_dir;
  std::size_t workers = 0;
  bool svg = false;
  std::size_t time_points = 0;
};

void add_common(CLI::App* sub, Args& args) {
  sub->add_option("--config", args.config_path, "Run configuration file")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", args.out_dir, "Output directory (overrides [output] dir)");
  sub->add_option("--workers", args.workers, "Worker threads (default: FRQME_WORKERS or hardware threads)")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--svg", args.svg, "Also write SVG plots");
  sub->add_option("--time-points", args.time_points, "Points in the log time grid")->check(CLI::Range(3, 100000000));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-spin prethermalization simulator"};
  app.require_subcommand(1);

  Args args;
  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"simulate", {"Propagate one trajectory and report its plateau", frqme::cmd_simulate}},
      {"sweep-tauc", {"Fractional prethermal lifetime over tau_c", frqme::cmd_sweep_tauc}},
      {"sweep-alpha", {"Fourier peak height over the chemical shift", frqme::cmd_sweep_alpha}},
      {"contour", {"Spectral lifetime over (alpha, tau_c)", frqme::cmd_contour}},
      {"eigen", {"Eigenvalues of the total generator", frqme::cmd_eigen}},
  };
  for (const auto& [name, entry] : commands) add_common(app.add_subcommand(name, entry.first), args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::string chosen = app.get_subcommands().front()->get_name();
  try {
    const frqme::RunConfig config = frqme::load_config(args.config_path);
    frqme::CommandOptions options;
    options.workers = args.workers ? args.workers : frqme::default_worker_count();
    if (!args.out_dir.empty()) options.output_dir = args.out_dir;
    options.svg = args.svg;
    if (args.time_points) options.time_points = args.time_points;

    const frqme::CommandResult result = commands.at(chosen).second(config, options);
    std::cout << result.summary;
    for (const auto& f : result.files) std::cout << "wrote " << f.string() << "\n";
    return 0;
  } catch (const frqme::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
