// boxmom: batch experiment driver.
//
//   boxmom <spectrum|modes|evolve|ehrenfest|uncertainty|commute> --config PATH
//          [--out DIR] [--seed N] [--threads N]
//
// Exit codes: 0 ok, 2 config/usage error, 3 numerical failure (a thrown
// numerical error, or a report check that came out false; artifacts are kept).

#include <CLI11.hpp>
#include <Eigen/Core>
#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "boxmom/experiments.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw boxmom::ConfigError(p.string(), "cannot read file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "*_pass" / "passed" flags that came out false, as JSON-pointer-ish paths
void failed_checks(const nlohmann::json& j, const std::string& at, std::vector<std::string>& out) {
  if (!j.is_object()) return;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = it.key();
    const bool flag = key == "passed" || (key.size() > 5 && key.compare(key.size() - 5, 5, "_pass") == 0);
    if (flag && it->is_boolean() && !it->get<bool>()) out.push_back(at + "/" + key);
    failed_checks(*it, at + "/" + key, out);
  }
}

int run(const std::string& sub, const std::string& config_path, std::string out_dir, const long long* seed,
        int threads) {
  const std::string text = slurp(config_path);
  auto cfg = boxmom::parse_config_text(text);
  if (sub != boxmom::to_string(cfg.experiment)) {
    throw boxmom::ConfigError("/experiment", "config names '" + std::string(boxmom::to_string(cfg.experiment)) +
                                                 "' but the subcommand is '" + sub + "'");
  }
  if (seed) {
    if (*seed < 0) throw boxmom::ConfigError("--seed", "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(*seed);
  }
  if (out_dir.empty()) out_dir = cfg.output;
  // Eigen parallelizes only when built with OpenMP; the value is recorded either way
  Eigen::setNbThreads(threads);

  const fs::path out(out_dir);
  const auto result = boxmom::run_experiment(cfg, out);

  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : result.files) {
    const std::string bytes = slurp(out / f);
    files.push_back({{"path", f}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
  }
  const nlohmann::json manifest = {
      {"tool", "boxmom"},
      {"version", kVersion},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"compiler", __VERSION__},
      {"experiment", sub},
      {"config", config_path},
      {"config_sha256", sha256_hex(text)},
      {"seed", cfg.seed},
      {"threads", threads},
      {"files", files},
      {"summary", result.summary}};
  std::ofstream m(out / "manifest.json", std::ios::binary);
  m << manifest.dump(2) << '\n';
  std::cout << result.summary.dump(2) << '\n';
  std::vector<std::string> failed;
  failed_checks(result.summary, "", failed);
  if (!failed.empty()) {
    for (const auto& f : failed) std::cerr << "numerical failure: invariant " << f << " not met\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-domain momentum experiments"};
  app.require_subcommand(1);
  std::string config, out;
  long long seed = 0;
  int threads = 1;
  for (const char* name : {"spectrum", "modes", "evolve", "ehrenfest", "uncertainty", "commute"}) {
    auto* sc = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sc->add_option("--config", config, "experiment config (strict JSON)")->required();
    sc->add_option("--out", out, "output directory (default: the config's output)");
    sc->add_option("--seed", seed, "override the config seed");
    sc->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const auto* sub = app.get_subcommands().front();
  const bool seed_given = sub->count("--seed") > 0;
  try {
    return run(sub->get_name(), config, out, seed_given ? &seed : nullptr, threads);
  } catch (const boxmom::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const boxmom::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const boxmom::GeometryError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const boxmom::ArgumentError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const boxmom::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
