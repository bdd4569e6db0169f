// gausslab: exact Gauss sums, energies and bound sweeps over F_{p^m}.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gausslab/arith.hpp"
#include "gausslab/char_sums.hpp"
#include "gausslab/energy.hpp"
#include "gausslab/errors.hpp"
#include "gausslab/runner.hpp"
#include "gausslab/subgroups.hpp"

namespace {

using namespace gausslab;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::uint64_t effective_q_max(std::uint64_t requested) {
  SweepConfig cfg;
  cfg.q_max = requested;
  cfg.q_hi = 0;
  cfg.q_lo = 0;
  finalize_config(cfg);
  return cfg.q_max;
}

struct SweepFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::optional<std::string> format;
  std::optional<std::uint64_t> q_max;
  std::optional<unsigned> trials;
  std::optional<std::string> bounds;
  std::vector<std::uint64_t> q_range;
  bool timing = false;
  std::string out;
  bool inject_fault = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON sweep configuration");
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--jobs", jobs, "worker threads (0 = hardware)");
    cmd->add_option("--format", format, "jsonl or csv");
    cmd->add_option("--q-max", q_max, "largest field order allowed");
    cmd->add_option("--trials", trials, "instances per randomized bound and field");
    cmd->add_option("--bounds", bounds, "comma-separated bound families");
    cmd->add_option("--q-range", q_range, "field orders lo hi")->expected(2);
    cmd->add_flag("--timing", timing, "fill runtime_ms");
    cmd->add_option("--out", out, "output path");
#ifdef GAUSSLAB_FAULT_INJECTION
    cmd->add_flag("--inject-fault", inject_fault, "corrupt one trace entry of every field");
#endif
  }

  SweepConfig resolve(const std::vector<std::string>& default_families) const {
    SweepConfig cfg = config_path.empty() ? SweepConfig{} : load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (jobs) cfg.jobs = *jobs;
    if (format) cfg.format = *format;
    if (q_max) cfg.q_max = *q_max;
    if (trials) cfg.trials = *trials;
    if (!q_range.empty()) {
      if (q_range[0] > q_range[1]) throw ConfigError("--q-range needs lo <= hi");
      cfg.q_lo = q_range[0];
      cfg.q_hi = q_range[1];
    }
    if (timing) cfg.timing = true;
    if (bounds) {
      std::vector<std::string> list;
      std::stringstream ss(*bounds);
      for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) list.push_back(item);
      }
      cfg.bounds = list;
    }
    if (!cfg.bounds) cfg.bounds = default_families;
    finalize_config(cfg);
    return cfg;
  }

  FieldHook hook() const {
    if (!inject_fault) return {};
    return [](FieldCtx& ctx) { ctx.corrupt_trace_for_testing(1); };
  }
};

void print_field(std::uint64_t p, unsigned m, std::uint64_t q_max) {
  const FieldCtx ctx = build_field(p, m, effective_q_max(q_max));
  std::cout << "p " << ctx.p() << "\n"
            << "m " << ctx.m() << "\n"
            << "q " << ctx.q() << "\n"
            << "modulus " << ctx.modulus_string() << "\n"
            << "generator " << ctx.format(ctx.generator()) << " (label " << ctx.generator() << ")\n";
  for (unsigned nu : proper_subfield_degrees(m)) {
    std::cout << "subfield F_" << checked_pow(p, nu, ctx.q()) << " degree " << nu << "\n";
  }
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

ElementSet parse_labels(const FieldCtx& ctx, const std::string& text) {
  std::vector<Label> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("not a label: " + item);
    }
    if (used != item.size() || !ctx.valid(static_cast<Label>(v)) || v >= ctx.q()) {
      throw ConfigError("not a label of F_" + std::to_string(ctx.q()) + ": " + item);
    }
    out.push_back(static_cast<Label>(v));
  }
  return make_set(std::move(out));
}

int run_sweep_command(const std::string& name, const SweepFlags& flags) {
  const bool verify = name == "verify";
  const SweepConfig cfg = flags.resolve(verify ? verify_families() : scan_families());

  if (name == "extremal") {
    const std::string path = flags.out.empty() ? "extremal.json" : flags.out;
    ExtremalStore store = ExtremalStore::load(path);
    std::size_t seen = 0, raised = 0;
    run_sweep(cfg, *cfg.bounds, [&](const BoundReport& r) {
      ++seen;
      raised += store.merge(r) ? 1 : 0;
    }, flags.hook());
    store.save(path);
    for (const auto& [id, entry] : store.entries()) {
      std::cout << id << " " << entry.first << "\n";
    }
    std::cerr << "extremal: " << seen << " reports, " << raised << " maxima raised, store " << path << "\n";
    return kExitOk;
  }

  std::ofstream file;
  if (!flags.out.empty()) {
    file.open(flags.out);
    if (!file) throw ConfigError("cannot write " + flags.out);
  }
  std::ostream& out = flags.out.empty() ? std::cout : file;

  std::size_t total = 0, failures = 0;
  std::vector<BoundReport> csv_rows;
  const bool csv = cfg.format == "csv";
  run_sweep(cfg, *cfg.bounds, [&](const BoundReport& r) {
    ++total;
    if (r.failed()) ++failures;
    if (verify && !r.failed()) return;
    if (csv) {
      csv_rows.push_back(r);
    } else {
      out << to_jsonl(r) << '\n';
    }
  }, flags.hook());
  if (csv) write_csv(out, csv_rows);
  out.flush();
  if (verify) {
    std::cerr << "verify: " << total << " reports, " << failures << " failures\n";
    return failures == 0 ? kExitOk : kExitViolation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Gauss sums, energies and bound sweeps over finite fields"};
  app.require_subcommand(1);

  std::uint64_t p = 0, n = 1, q_max = kDefaultQMax;
  unsigned m = 1;

  auto* field = app.add_subcommand("field", "print a field summary");
  field->add_option("p", p)->required();
  field->add_option("m", m)->required();
  field->add_option("--q-max", q_max);

  auto* gauss = app.add_subcommand("gauss", "print |S_n(a)| or max over a != 0");
  std::uint64_t a = 1;
  bool want_max = false;
  gauss->add_option("p", p)->required();
  gauss->add_option("m", m)->required();
  gauss->add_option("n", n)->required();
  auto* a_opt = gauss->add_option("--a", a, "character label");
  auto* max_opt = gauss->add_flag("--max", want_max, "maximize over a != 0");
  a_opt->excludes(max_opt);
  gauss->add_option("--q-max", q_max);

  auto* energy = app.add_subcommand("energy", "print E(A) or E(A, B)");
  std::string set_a, set_b;
  std::optional<std::uint64_t> subgroup;
  std::optional<unsigned> subfield;
  bool mult = false;
  energy->add_option("p", p)->required();
  energy->add_option("m", m)->required();
  energy->add_option("--set", set_a, "comma-separated labels");
  energy->add_option("--subgroup", subgroup, "use the n-th power subgroup as A");
  energy->add_option("--subfield", subfield, "use the subfield of degree nu as A");
  energy->add_option("--with", set_b, "second set B, comma-separated labels");
  energy->add_flag("--mult", mult, "multiplicative energy");
  energy->add_option("--q-max", q_max);

  SweepFlags verify_flags, scan_flags, extremal_flags;
  auto* verify = app.add_subcommand("verify", "run assert-mode bounds and identities");
  verify_flags.attach(verify);
  auto* scan = app.add_subcommand("scan", "emit observe-mode bound reports");
  scan_flags.attach(scan);
  auto* extremal = app.add_subcommand("extremal", "merge maximum ratios into a store");
  extremal_flags.attach(extremal);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*field) {
      print_field(p, m, q_max);
    } else if (*gauss) {
      if (!want_max && a_opt->count() == 0) throw ConfigError("gauss needs --a A or --max");
      const FieldCtx ctx = build_field(p, m, effective_q_max(q_max));
      if (want_max) {
        std::cout << fixed6(max_over_characters(ctx, GaussFamily{n}).magnitude) << "\n";
      } else {
        if (a >= ctx.q()) throw ConfigError("a is not a label of this field");
        std::cout << fixed6(gauss_sum(ctx, n, static_cast<Label>(a)).magnitude()) << "\n";
      }
    } else if (*energy) {
      const FieldCtx ctx = build_field(p, m, effective_q_max(q_max));
      const int sources = (set_a.empty() ? 0 : 1) + (subgroup ? 1 : 0) + (subfield ? 1 : 0);
      if (sources != 1) throw ConfigError("energy needs exactly one of --set, --subgroup, --subfield");
      ElementSet first;
      if (subgroup) {
        first = nth_power_subgroup(ctx, *subgroup).elements;
      } else if (subfield) {
        first = subfield_elements(ctx, *subfield);
      } else {
        first = parse_labels(ctx, set_a);
      }
      const ElementSet second = set_b.empty() ? first : parse_labels(ctx, set_b);
      const EnergyRecord e = mult ? multiplicative_energy(ctx, first, second) : additive_energy(ctx, first, second);
      std::cout << to_string(e.value) << "\n";
    } else if (*verify) {
      return run_sweep_command("verify", verify_flags);
    } else if (*scan) {
      return run_sweep_command("scan", scan_flags);
    } else if (*extremal) {
      return run_sweep_command("extremal", extremal_flags);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
