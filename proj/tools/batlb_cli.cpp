// batlb: command-line front end over the C API.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/input errors,
// 3 instance too large for the requested exact computation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "batlb/batlb.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTooLarge = 3;

struct ApiFailure {
  batlb_status status;
  std::string message;
};

void check(batlb_status status) {
  if (status != BATLB_OK) throw ApiFailure{status, batlb_last_error()};
}

struct InstanceDeleter {
  void operator()(batlb_instance* p) const { batlb_instance_free(p); }
};
using InstancePtr = std::unique_ptr<batlb_instance, InstanceDeleter>;

struct StringDeleter {
  void operator()(char* p) const { batlb_string_free(p); }
};

std::string take(char* raw) {
  std::unique_ptr<char, StringDeleter> owned(raw);
  return raw ? std::string(raw) : std::string();
}

struct UsageError {
  std::string message;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot open '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

InstancePtr load_instance(const std::string& path, bool dedupe) {
  std::string text = read_input(path);
  batlb_instance* raw = nullptr;
  check(batlb_instance_parse(text.data(), text.size(), dedupe ? 1 : 0, &raw));
  return InstancePtr(raw);
}

std::string serialize(const batlb_instance* inst) {
  char* raw = nullptr;
  check(batlb_instance_serialize(inst, &raw));
  return take(raw);
}

std::string scalar_text(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    bool flat = std::all_of(value.begin(), value.end(),
                            [](const json& v) { return v.is_primitive(); });
    if (flat) {
      std::string out;
      for (const auto& v : value) {
        if (!out.empty()) out += ' ';
        out += scalar_text(v);
      }
      return out;
    }
  }
  return value.dump();
}

// "key value" lines; nested objects flatten to dotted keys.
void render_flat(std::ostream& out, const json& report, const std::string& prefix,
                 const std::string& line_prefix = "") {
  for (const auto& [key, value] : report.items()) {
    std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      render_flat(out, value, name, line_prefix);
    } else {
      out << line_prefix << name << ' ' << scalar_text(value) << '\n';
    }
  }
}

struct Common {
  std::string format = "text";
  std::string output = "-";
  std::uint64_t seed = 0;
  bool dedupe = false;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("-o,--output", common.output, "Output path, '-' for standard output");
  cmd->add_option("--seed", common.seed, "Seed for every random choice");
  cmd->add_flag("--dedupe", common.dedupe, "Merge repeated constraints instead of rejecting");
}

batlb_mode parse_mode(const std::string& mode) {
  return mode == "sharp" ? BATLB_MODE_SHARP : BATLB_MODE_BOUND;
}

void write_output(const Common& common, const std::string& data) {
  if (common.output == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(common.output, std::ios::binary);
  if (!out) throw UsageError{"cannot write '" + common.output + "'"};
  out << data;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Betweenness above the m/3 bound: kernelization, moments, and solvers"};
  app.require_subcommand(1);

  Common common;
  std::string input = "-";
  std::int64_t kappa = 0;
  std::string mode = "bound";
  batlb_solve_options solve_options;
  batlb_solve_options_init(&solve_options);
  bool no_fallback = false;

  // gen
  std::string family = "random";
  std::uint32_t gen_n = 0;
  std::uint64_t gen_m = 0;
  std::string noise = "0";
  auto* gen = app.add_subcommand("gen", "Write a generated instance");
  gen->add_option("--family", family, "complete | random | planted")
      ->check(CLI::IsMember({"complete", "random", "planted"}));
  gen->add_option("--n", gen_n, "Variable count")->required();
  gen->add_option("--m", gen_m, "Constraint count (random, planted)");
  gen->add_option("--noise", noise, "Planted noise as p/q in [0, 1]");
  add_common(gen, common);

  auto* solve = app.add_subcommand("solve", "Maximize satisfied constraints");
  solve->add_option("input", input, "Instance path, '-' for standard input");
  solve->add_option("--dp-max", solve_options.dp_max, "Largest n for the exact DP");
  solve->add_option("--trials", solve_options.trials, "Heuristic samples")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--no-fallback", no_fallback, "Fail instead of using the heuristic");
  add_common(solve, common);

  auto* kernelize = app.add_subcommand("kernelize", "Reduce and apply the kernel threshold");
  kernelize->add_option("input", input, "Instance path, '-' for standard input");
  kernelize->add_option("--kappa", kappa, "Excess above m/3")->required();
  kernelize->add_option("--mode", mode, "bound | sharp")
      ->check(CLI::IsMember({"bound", "sharp"}));
  add_common(kernelize, common);

  auto* decide = app.add_subcommand("decide", "Decide whether m/3 + kappa is reachable");
  decide->add_option("input", input, "Instance path, '-' for standard input");
  decide->add_option("--kappa", kappa, "Excess above m/3")->required();
  decide->add_option("--mode", mode, "bound | sharp")->check(CLI::IsMember({"bound", "sharp"}));
  decide->add_option("--dp-max", solve_options.dp_max, "Largest kernel n for the exact DP");
  decide->add_option("--trials", solve_options.trials, "Heuristic samples")
      ->check(CLI::PositiveNumber);
  add_common(decide, common);

  std::string verify_input;
  auto* verify = app.add_subcommand("verify", "Check the weight tables and moment identities");
  verify->add_option("input", verify_input, "Optional instance for instance-specific checks");
  add_common(verify, common);

  std::uint64_t samples = 10000;
  auto* stats = app.add_subcommand("stats", "Profile counts and moments of an instance");
  stats->add_option("input", input, "Instance path, '-' for standard input");
  stats->add_option("--trials", samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  add_common(stats, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  solve_options.seed = common.seed;
  solve_options.allow_fallback = no_fallback ? 0 : 1;
  const bool as_json = common.format == "json";
  std::ostringstream out;

  try {
    if (gen->parsed()) {
      batlb_instance* raw = nullptr;
      std::vector<std::uint32_t> hidden;
      if (family == "complete") {
        check(batlb_instance_gen_complete(gen_n, &raw));
      } else if (family == "random") {
        check(batlb_instance_gen_random(gen_n, gen_m, common.seed, &raw));
      } else {
        std::uint64_t num = 0, den = 1;
        auto slash = noise.find('/');
        try {
          num = std::stoull(noise.substr(0, slash));
          if (slash != std::string::npos) den = std::stoull(noise.substr(slash + 1));
        } catch (const std::exception&) {
          throw UsageError{"--noise expects p/q, got '" + noise + "'"};
        }
        hidden.resize(gen_n);
        check(batlb_instance_gen_planted(gen_n, gen_m, num, den, common.seed, &raw,
                                         hidden.data()));
      }
      InstancePtr inst(raw);
      std::string text = serialize(inst.get());
      if (as_json) {
        json report = {{"family", family},
                       {"n", batlb_instance_num_vars(inst.get())},
                       {"m", batlb_instance_num_constraints(inst.get())},
                       {"instance", text}};
        if (!hidden.empty()) report["hidden_arrangement"] = hidden;
        out << report.dump(2) << '\n';
      } else {
        if (!hidden.empty()) out << "c hidden " << scalar_text(json(hidden)) << '\n';
        out << text;
      }
    } else if (solve->parsed()) {
      auto inst = load_instance(input, common.dedupe);
      char* raw = nullptr;
      check(batlb_solve(inst.get(), &solve_options, &raw));
      json report = json::parse(take(raw));
      if (as_json) {
        out << report.dump(2) << '\n';
      } else {
        render_flat(out, report, "");
      }
    } else if (kernelize->parsed()) {
      auto inst = load_instance(input, common.dedupe);
      char* raw = nullptr;
      batlb_instance* kernel_raw = nullptr;
      batlb_verdict verdict{};
      check(batlb_kernelize(inst.get(), kappa, parse_mode(mode), &verdict, &raw, &kernel_raw));
      InstancePtr kernel(kernel_raw);
      json report = json::parse(take(raw));
      std::string kernel_text = kernel ? serialize(kernel.get()) : std::string();
      if (as_json) {
        report["kernel_instance"] = kernel ? json(kernel_text) : json(nullptr);
        out << report.dump(2) << '\n';
      } else {
        // Comment lines keep the output a valid instance file.
        render_flat(out, report, "", "c ");
        out << kernel_text;
      }
    } else if (decide->parsed()) {
      auto inst = load_instance(input, common.dedupe);
      char* raw = nullptr;
      batlb_instance* kernel_raw = nullptr;
      batlb_verdict verdict{};
      check(batlb_decide(inst.get(), kappa, parse_mode(mode), &solve_options, &verdict, &raw,
                         &kernel_raw));
      InstancePtr kernel(kernel_raw);
      json report = json::parse(take(raw));
      const bool show_kernel = verdict == BATLB_VERDICT_UNDECIDED && kernel;
      if (as_json) {
        if (show_kernel) report["kernel_instance"] = serialize(kernel.get());
        out << report.dump(2) << '\n';
      } else {
        render_flat(out, report, "", "c ");
        if (show_kernel) out << serialize(kernel.get());
      }
    } else if (verify->parsed()) {
      InstancePtr inst;
      if (!verify_input.empty()) inst = load_instance(verify_input, common.dedupe);
      int all_passed = 0;
      char* raw = nullptr;
      check(batlb_verify(inst.get(), &all_passed, &raw));
      json report = json::parse(take(raw));
      if (as_json) {
        out << report.dump(2) << '\n';
      } else {
        for (const auto& c : report["checks"]) {
          out << c["status"].get<std::string>() << ' ' << c["name"].get<std::string>();
          if (c.contains("note")) out << " (" << c["note"].get<std::string>() << ')';
          out << '\n';
          for (const auto& cmp : c["comparisons"]) {
            out << "  " << (cmp["ok"].get<bool>() ? "ok   " : "FAIL ")
                << cmp["label"].get<std::string>() << ": " << cmp["computed"].get<std::string>()
                << " [expected " << cmp["expected"].get<std::string>() << "]\n";
          }
        }
        out << "all_passed " << (all_passed ? "true" : "false") << '\n';
      }
      if (!all_passed) {
        for (const auto& c : report["checks"]) {
          if (c["status"] == "fail") std::cerr << "failed check: " << c["name"].get<std::string>() << '\n';
        }
        std::cerr << out.str();
        return kExitVerifyFailed;
      }
    } else if (stats->parsed()) {
      auto inst = load_instance(input, common.dedupe);
      char* raw = nullptr;
      check(batlb_stats(inst.get(), samples, common.seed, &raw));
      json report = json::parse(take(raw));
      if (as_json) {
        out << report.dump(2) << '\n';
      } else {
        render_flat(out, report, "");
      }
    }
    write_output(common, out.str());
  } catch (const ApiFailure& failure) {
    std::cerr << "batlb: " << batlb_status_name(failure.status) << ": " << failure.message
              << '\n';
    return failure.status == BATLB_ERR_TOO_LARGE ? kExitTooLarge : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "batlb: " << e.message << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
