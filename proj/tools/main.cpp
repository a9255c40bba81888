#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "experiment.hpp"
#include "satolab/error.hpp"

namespace {

int exit_code(satolab::ErrorKind kind) {
  switch (kind) {
    case satolab::ErrorKind::validation: return 2;
    case satolab::ErrorKind::numerical_guard: return 3;
    case satolab::ErrorKind::io: return 4;
    case satolab::ErrorKind::internal: return 1;
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw satolab::IoError("cannot read config " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct Flags {
  std::string group;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
  std::string format;
  std::string config;
  std::map<std::string, std::string> params;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace satolab::cli;
  CLI::App app{"satolab: Sato-Tate and Plancherel measure experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SATOLAB_VERSION);

  std::map<std::string, Flags> flags;
  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  std::map<std::string, std::map<std::string, CLI::Option*>> common;
  for (const auto& sub : subcommands()) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    Flags& f = flags[sub.name];
    auto& c = common[sub.name];
    if (sub.needs_group) c["group"] = cmd->add_option("--group", f.group, "root system type (dims: sp<2n> or g2)");
    c["seed"] = cmd->add_option("--seed", f.seed, "64-bit experiment seed");
    c["threads"] = cmd->add_option("--threads", f.threads, "worker threads (results do not depend on it)")
                       ->check(CLI::PositiveNumber);
    c["out"] = cmd->add_option("--out", f.out, "output path, '-' for stdout");
    c["format"] = cmd->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--config", f.config, "JSON experiment spec; flags override it");
    for (const auto& p : sub.params) {
      std::string help = p.help;
      if (!p.default_value.empty()) help += " [default: " + p.default_value + "]";
      options[sub.name][p.name] = cmd->add_option("--" + p.name, f.params[p.name], help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    for (const auto& sub : subcommands()) {
      CLI::App* cmd = app.get_subcommand(sub.name);
      if (!cmd->parsed()) continue;
      const Flags& f = flags[sub.name];
      ExperimentSpec spec;
      if (!f.config.empty()) {
        spec = from_json(read_file(f.config));
        if (!spec.subcommand.empty() && spec.subcommand != sub.name) {
          throw satolab::ValidationError("subcommand: config is for '" + spec.subcommand + "', not '" + sub.name + "'");
        }
      }
      spec.subcommand = sub.name;
      auto& c = common[sub.name];
      if (c.count("group") && c["group"]->count()) spec.group = f.group;
      if (c["seed"]->count()) spec.seed = f.seed;
      if (c["out"]->count()) spec.out = f.out;
      if (c["format"]->count()) spec.format = f.format;
      spec.threads = f.threads;
      for (const auto& [name, opt] : options[sub.name]) {
        if (opt->count()) spec.params[name] = f.params.at(name);
      }
      run(spec);
    }
  } catch (const satolab::Error& e) {
    std::fprintf(stderr, "satolab: %s error: %s\n", satolab::to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "satolab: internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
