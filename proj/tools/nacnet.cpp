#include "nac/harness/runner.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace nac;
using namespace nac::harness;

namespace {

int
writeJson(const std::string& path, const nlohmann::json& j)
{
  std::ofstream out(path);
  if (!out) {
    std::cerr << "nacnet: cannot write " << path << "\n";
    return 1;
  }
  out << j.dump(2) << "\n";
  return 0;
}

int
runFile(const std::string& path, std::optional<uint64_t> seed, const std::string& reportPath)
{
  auto cfg = loadScenario(path);
  if (seed)
    cfg.seed = *seed;
  auto report = runScenario(cfg);
  std::cout << formatReport(report);
  auto sizes = formatPacketSizes(reportPacketSizes(report));
  if (!sizes.empty())
    std::cout << "\npacket sizes\n" << sizes;
  if (!reportPath.empty())
    return writeJson(reportPath, toJson(report));
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"nacnet: name-based access control over a simulated NDN network"};
  app.require_subcommand(1);

  std::string scenario;
  std::string reportPath;
  std::optional<uint64_t> seed;

  auto* run = app.add_subcommand("run", "run a scenario and print its report");
  run->add_option("scenario", scenario, "scenario JSON file")->required();
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--report", reportPath, "write the JSON report here");

  auto* keys = app.add_subcommand("keys", "run a scenario and list the key Data it published");
  keys->add_option("scenario", scenario, "scenario JSON file")->required();
  keys->add_option("--seed", seed, "override the scenario seed");

  std::string schemeText = "nac";
  std::string provider = "simulated";
  ScaleParams params{3, 2, 3, 1};
  auto* scale = app.add_subcommand("scale", "full-authorization scaling report");
  scale->add_option("--scheme", schemeText, "nac or nac-abe")->check(CLI::IsMember({"nac", "nac-abe"}));
  scale->add_option("--n", params.n, "decryptors");
  scale->add_option("--m", params.m, "granularities");
  scale->add_option("--a", params.a, "attributes per decryptor (nac-abe)");
  scale->add_option("--x", params.x, "content Data per granularity");
  scale->add_option("--provider", provider, "ABE provider")->check(CLI::IsMember({"simulated", "reference"}));
  scale->add_option("--seed", seed, "seed");
  scale->add_option("--report", reportPath, "write the JSON report here");
  std::string emitPath;
  scale->add_option("--emit-config", emitPath, "write the generated scenario here instead of running it");

  std::string demoName;
  auto* demo = app.add_subcommand("demo", "run a bundled scenario");
  demo->add_option("name", demoName, "scenario name")->required()->check(CLI::IsMember({"battlefield"}));
  demo->add_option("--report", reportPath, "write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return runFile(scenario, seed, reportPath);

    if (demo->parsed())
      return runFile(std::string(NAC_SCENARIO_DIR) + "/" + demoName + ".json", std::nullopt, reportPath);

    if (keys->parsed()) {
      auto cfg = loadScenario(scenario);
      if (seed)
        cfg.seed = *seed;
      ScenarioRunner runner(cfg);
      runner.run();
      for (const auto& n : runner.publishedKeyNames())
        std::cout << n.toUri() << "\n";
      return 0;
    }

    if (scale->parsed()) {
      if (!emitPath.empty())
        return writeJson(emitPath, toJson(makeScalingScenario(parseScheme(schemeText), params,
                                                              seed.value_or(0), provider)));
      auto s = reportScaling(parseScheme(schemeText), params, seed.value_or(0), provider);
      std::cout << "scheme " << schemeText << " n=" << params.n << " m=" << params.m
                << " a=" << params.a << " x=" << params.x << "\n";
      std::cout << "quantity                  predicted  measured\n";
      for (const auto& [k, v] : s.measured) {
        auto p = s.predicted.find(k);
        std::string pred = p == s.predicted.end() ? "-" : std::to_string(p->second);
        std::cout << k << std::string(k.size() < 26 ? 26 - k.size() : 1, ' ') << pred
                  << std::string(pred.size() < 11 ? 11 - pred.size() : 1, ' ') << v << "\n";
      }
      std::cout << (s.matches() ? "measured counts match the prediction\n"
                                : "MISMATCH between measured and predicted counts\n");
      if (!reportPath.empty() && writeJson(reportPath, toJson(s)) != 0)
        return 1;
      return s.matches() ? 0 : 1;
    }
  }
  catch (const ConfigError& e) {
    std::cerr << "nacnet: configuration error: " << e.what() << "\n";
    return 2;
  }
  catch (const std::exception& e) {
    std::cerr << "nacnet: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
