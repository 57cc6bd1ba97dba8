#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sdnls/cli_io.hpp"
#include "sdnls/error.hpp"

namespace {

struct Source {
  std::string config_path;
  std::string preset_name;
};

void add_source(CLI::App* cmd, Source& src) {
  auto* cfg = cmd->add_option("--config", src.config_path, "JSON scenario file")->check(CLI::ExistingFile);
  auto* pre = cmd->add_option("--preset", src.preset_name, "figure preset, e.g. fig4b");
  cfg->excludes(pre);
  pre->excludes(cfg);
}

sdnls::ScenarioConfig resolve(const Source& src) {
  if (!src.config_path.empty()) return sdnls::load_config(src.config_path);
  if (!src.preset_name.empty()) return sdnls::preset(src.preset_name);
  throw CLI::ValidationError("one of --config or --preset is required");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate and verify shifted nonlocal DNLS soliton solutions"};
  app.set_version_flag("--version", std::string(sdnls::version()));
  app.require_subcommand(1);

  Source eval_src;
  std::string out_path;
  std::string format;
  bool print_config = false;
  auto* evaluate = app.add_subcommand("evaluate", "evaluate a scenario on its grid and write CSV or JSON");
  add_source(evaluate, eval_src);
  evaluate->add_option("-o,--output", out_path, "output file (overrides the configured path)");
  evaluate->add_option("--format", format, "csv or json (overrides the configured format)")
      ->check(CLI::IsMember({"csv", "json"}));
  evaluate->add_flag("--print-config", print_config, "print the resolved configuration and exit");

  Source verify_src;
  std::string report_path;
  bool inject_fault = false;
  int points = 100;
  auto* verify = app.add_subcommand("verify", "run the identity suite and residual, boundary and trace checks");
  add_source(verify, verify_src);
  verify->add_option("--report", report_path, "write the JSON report here instead of stdout");
  verify->add_flag("--inject-fault", inject_fault, "corrupt b(-xi) by 1% before verifying (negative control)");
  verify->add_option("--points", points, "residual sample points")->check(CLI::PositiveNumber);

  bool list = false;
  auto* presets = app.add_subcommand("presets", "show the built-in figure presets");
  presets->add_flag("--list", list, "list preset names");

  CLI11_PARSE(app, argc, argv);

  const unsigned workers = sdnls::workers_from_env();
  try {
    if (presets->parsed()) {
      for (const auto& p : sdnls::list_presets()) std::cout << p.name << "  " << p.description << '\n';
      return 0;
    }
    if (evaluate->parsed()) {
      sdnls::ScenarioConfig cfg = resolve(eval_src);
      if (!format.empty()) {
        cfg.output.format = format == "json" ? sdnls::OutputFormat::Json : sdnls::OutputFormat::Csv;
        if (out_path.empty() && eval_src.config_path.empty()) {
          cfg.output.path = cfg.name + (format == "json" ? ".json" : ".csv");
        }
      }
      if (!out_path.empty()) cfg.output.path = out_path;
      if (print_config) {
        std::cout << sdnls::resolved_config_json(cfg, 2) << '\n';
        return 0;
      }
      const auto out = sdnls::run_evaluate(cfg, workers);
      std::cerr << "wrote " << out.samples.size() << " samples to " << cfg.output.path << " (" << out.singular_count
                << " singular)\n";
      return 0;
    }
    if (verify->parsed()) {
      const sdnls::ScenarioConfig cfg = resolve(verify_src);
      sdnls::VerifyOptions opts;
      opts.inject_fault = inject_fault;
      opts.residual_points = points;
      opts.workers = workers;
      const auto result = sdnls::run_verify(cfg, opts);
      if (report_path.empty()) {
        std::cout << result.report;
      } else {
        std::ofstream f(report_path, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + report_path);
        f << result.report;
      }
      std::cerr << cfg.name << ": " << (result.pass ? "PASS" : "FAIL") << " (" << result.seconds << " s)\n";
      return result.pass ? 0 : 1;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
