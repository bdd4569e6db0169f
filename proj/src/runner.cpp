#include "gausslab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "gausslab/arith.hpp"
#include "gausslab/errors.hpp"
#include "gausslab/parallel.hpp"
#include "gausslab/rng.hpp"
#include "gausslab/subgroups.hpp"

namespace gausslab {

bool NFilter::accepts(std::uint64_t n) const {
  switch (kind) {
    case Kind::all:
      return true;
    case Kind::range:
      return n >= lo && n <= hi;
    case Kind::list:
      return std::find(values.begin(), values.end(), n) != values.end();
  }
  return true;
}

namespace {

using nlohmann::json;

template <class T>
T get_as(const json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "'");
  }
}

template <class T>
std::pair<T, T> get_range(const json& v, const char* key) {
  const auto r = get_as<std::vector<T>>(v, key);
  if (r.size() != 2 || r[0] > r[1]) {
    throw ConfigError(std::string("'") + key + "' must be [lo, hi] with lo <= hi");
  }
  return {r[0], r[1]};
}

}  // namespace

SweepConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  SweepConfig cfg;
  for (const auto& [key, v] : doc.items()) {
    if (key == "p_list") {
      cfg.p_list = get_as<std::vector<std::uint32_t>>(v, "p_list");
    } else if (key == "p_range") {
      std::tie(cfg.p_lo, cfg.p_hi) = get_range<std::uint32_t>(v, "p_range");
    } else if (key == "m_range") {
      std::tie(cfg.m_lo, cfg.m_hi) = get_range<unsigned>(v, "m_range");
    } else if (key == "q_range") {
      std::tie(cfg.q_lo, cfg.q_hi) = get_range<std::uint64_t>(v, "q_range");
    } else if (key == "q_max") {
      cfg.q_max = get_as<std::uint64_t>(v, "q_max");
    } else if (key == "n_filter") {
      if (!v.is_object()) throw ConfigError("'n_filter' must be an object");
      const std::string mode = get_as<std::string>(v.value("mode", json("all")), "n_filter.mode");
      if (mode == "all") {
        cfg.n_filter.kind = NFilter::Kind::all;
      } else if (mode == "range") {
        cfg.n_filter.kind = NFilter::Kind::range;
        if (!v.contains("range")) throw ConfigError("'n_filter' range mode needs 'range'");
        std::tie(cfg.n_filter.lo, cfg.n_filter.hi) = get_range<std::uint64_t>(v["range"], "n_filter.range");
      } else if (mode == "list") {
        cfg.n_filter.kind = NFilter::Kind::list;
        if (!v.contains("values")) throw ConfigError("'n_filter' list mode needs 'values'");
        cfg.n_filter.values = get_as<std::vector<std::uint64_t>>(v["values"], "n_filter.values");
      } else {
        throw ConfigError("unknown n_filter mode '" + mode + "'");
      }
    } else if (key == "bounds") {
      cfg.bounds = get_as<std::vector<std::string>>(v, "bounds");
    } else if (key == "trials") {
      cfg.trials = get_as<unsigned>(v, "trials");
    } else if (key == "seed") {
      cfg.seed = get_as<std::uint64_t>(v, "seed");
    } else if (key == "format") {
      cfg.format = get_as<std::string>(v, "format");
    } else if (key == "jobs") {
      cfg.jobs = get_as<unsigned>(v, "jobs");
    } else if (key == "timing") {
      cfg.timing = get_as<bool>(v, "timing");
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

void finalize_config(SweepConfig& cfg) {
  if (const char* env = std::getenv("GAUSSLAB_Q_MAX"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long ceiling = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw ConfigError("GAUSSLAB_Q_MAX is not an integer");
    cfg.q_max = std::min<std::uint64_t>(cfg.q_max, ceiling);
  }
  if (cfg.q_max > (std::uint64_t{1} << 31)) throw ConfigError("q_max may not exceed 2^31");
  if (cfg.q_hi > cfg.q_max) {
    throw ConfigError("q_range upper end " + std::to_string(cfg.q_hi) + " exceeds q_max " +
                      std::to_string(cfg.q_max));
  }
  if (cfg.m_lo < 1) throw ConfigError("m_range must start at 1 or above");
  if (cfg.format != "jsonl" && cfg.format != "csv") {
    throw ConfigError("format must be jsonl or csv");
  }
  for (std::uint32_t p : cfg.p_list) {
    if (!is_prime(p)) throw ConfigError("p_list entry " + std::to_string(p) + " is not prime");
  }
}

std::vector<std::pair<std::uint32_t, unsigned>> sweep_fields(const SweepConfig& cfg) {
  std::vector<std::uint32_t> primes = cfg.p_list;
  if (primes.empty()) {
    for (std::uint64_t p = cfg.p_lo; p <= cfg.p_hi && p <= cfg.q_hi; ++p) {
      if (is_prime(p)) primes.push_back(static_cast<std::uint32_t>(p));
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<std::pair<std::uint32_t, unsigned>> out;
  for (std::uint32_t p : primes) {
    for (unsigned m = cfg.m_lo; m <= cfg.m_hi; ++m) {
      const std::uint64_t q = checked_pow(p, m, cfg.q_hi);
      if (q == 0) break;
      if (q >= cfg.q_lo) out.emplace_back(p, m);
    }
  }
  return out;
}

const std::vector<std::string>& verify_families() {
  static const std::vector<std::string> f = {
      "identity_eq3", "weil_eq4",   "degree_reduction", "fourth_moment",
      "subfield_intersection_eq6",  "subfield_energy",  "claim1",
      "lemma4",       "lemma5",     "lemma6",           "eq28",
      "sec7_second_moment",         "shift_trick"};
  return f;
}

const std::vector<std::string>& scan_families() {
  static const std::vector<std::string> f = {"thm1", "lemma1_lemma2", "thm2", "thm3", "thm4", "thm5"};
  return f;
}

namespace {

struct Task {
  std::string family;
  std::string descriptor;
  std::function<std::vector<BoundReport>(Rng&)> run;
};

ElementSet random_subset(Rng& rng, const FieldCtx& ctx, std::size_t size, bool nonzero) {
  const Label first = nonzero ? 1 : 0;
  std::vector<Label> pool(ctx.q() - first);
  std::iota(pool.begin(), pool.end(), first);
  size = std::min(size, pool.size());
  for (std::size_t i = 0; i < size; ++i) {
    std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  }
  pool.resize(size);
  return make_set(std::move(pool));
}

std::size_t random_size(Rng& rng, std::size_t universe, std::size_t cap) {
  return static_cast<std::size_t>(rng.between(1, std::min(universe, cap)));
}

Weights complex_weights(Rng& rng, std::size_t n) {
  Weights w(n);
  for (auto& v : w) v = {2.0 * rng.unit() - 1.0, 2.0 * rng.unit() - 1.0};
  return w;
}

// kind 0: all ones, 1: random signs, 2: random phases.
Weights unit_weights(Rng& rng, std::size_t n, int kind) {
  Weights w(n, 1.0);
  for (auto& v : w) {
    if (kind == 1) {
      v = rng.below(2) == 0 ? 1.0 : -1.0;
    } else if (kind == 2) {
      v = std::polar(1.0, 2.0 * std::numbers::pi * rng.unit());
    }
  }
  return w;
}

const char* weight_kind_name(int kind) {
  return kind == 0 ? "unit" : kind == 1 ? "sign" : "phase";
}

std::vector<BoundReport> one(BoundReport r) { return {std::move(r)}; }
std::vector<BoundReport> two(std::pair<BoundReport, BoundReport> r) {
  return {std::move(r.first), std::move(r.second)};
}

void tag(std::vector<BoundReport>& reports, const char* key, const json& value) {
  for (auto& r : reports) r.params[key] = value;
}

class TaskBuilder {
 public:
  TaskBuilder(const FieldCtx& ctx, const SweepConfig& cfg) : ctx_(ctx), cfg_(cfg) {
    for (std::uint64_t n : divisors(ctx.group_order())) {
      if (cfg.n_filter.accepts(n)) ns_.push_back(n);
    }
    nus_ = proper_subfield_degrees(ctx.m());
  }

  void add(const std::string& family, std::vector<Task>& out) const {
    const FieldCtx& ctx = ctx_;
    auto push = [&](std::string descriptor, std::function<std::vector<BoundReport>(Rng&)> fn) {
      out.push_back({family, std::move(descriptor), std::move(fn)});
    };
    auto per_trial = [&](std::function<std::vector<BoundReport>(Rng&)> fn) {
      for (unsigned t = 0; t < cfg_.trials; ++t) {
        push("trial=" + std::to_string(t), [fn, t](Rng& rng) {
          auto reports = fn(rng);
          tag(reports, "trial", t);
          return reports;
        });
      }
    };
    const std::size_t q = ctx.q();

    if (family == "identity_eq3") {
      for (auto n : ns_) push("n=" + std::to_string(n), [&ctx, n](Rng&) { return one(eval_identity_eq3(ctx, n, 1)); });
    } else if (family == "weil_eq4") {
      for (auto n : ns_) {
        if (n >= 2) push("n=" + std::to_string(n), [&ctx, n](Rng&) { return one(eval_weil(ctx, n, 1)); });
      }
    } else if (family == "lemma6") {
      for (auto n : ns_) {
        push("n=" + std::to_string(n), [&ctx, n](Rng&) { return one(eval_lemma6(ctx, nth_power_subgroup(ctx, n), 1)); });
      }
    } else if (family == "subfield_intersection_eq6" || family == "claim1") {
      const bool claim = family == "claim1";
      for (auto n : ns_) {
        for (unsigned nu : nus_) {
          push("n=" + std::to_string(n) + ";nu=" + std::to_string(nu), [&ctx, n, nu, claim](Rng&) {
            return one(claim ? eval_claim1(ctx, n, nu) : eval_subfield_intersection(ctx, n, nu));
          });
        }
      }
    } else if (family == "subfield_energy") {
      for (unsigned nu : nus_) push("nu=" + std::to_string(nu), [&ctx, nu](Rng&) { return one(eval_subfield_energy(ctx, nu)); });
    } else if (family == "degree_reduction") {
      const std::uint64_t order = ctx.group_order();
      if (order < 2) return;
      per_trial([&ctx, order](Rng& rng) {
        std::uint64_t n;
        do {
          n = rng.between(2, 4 * order + 1);
        } while (order % n == 0);
        const Label a = static_cast<Label>(rng.between(1, order));
        return one(eval_degree_reduction(ctx, n, a));
      });
    } else if (family == "fourth_moment") {
      per_trial([&ctx, q](Rng& rng) {
        const ElementSet x = random_subset(rng, ctx, random_size(rng, q, 64), false);
        return one(eval_fourth_moment(ctx, x, 1));
      });
    } else if (family == "lemma4") {
      per_trial([&ctx, q](Rng& rng) {
        const ElementSet x = random_subset(rng, ctx, random_size(rng, q, 48), false);
        const ElementSet y = random_subset(rng, ctx, random_size(rng, q, 48), false);
        const Weights a = complex_weights(rng, x.size());
        const Weights b = complex_weights(rng, y.size());
        return one(eval_lemma4(ctx, x, y, a, b));
      });
    } else if (family == "lemma5") {
      per_trial([&ctx, q](Rng& rng) {
        const ElementSet x = random_subset(rng, ctx, random_size(rng, q, 48), false);
        const ElementSet y = random_subset(rng, ctx, random_size(rng, q, 48), false);
        return two(eval_lemma5(ctx, x, y));
      });
    } else if (family == "eq28") {
      per_trial([&ctx, q](Rng& rng) {
        const ElementSet a = random_subset(rng, ctx, random_size(rng, q - 1, 48), true);
        const ElementSet b = random_subset(rng, ctx, random_size(rng, q - 1, 48), true);
        return two(eval_eq28(ctx, a, b));
      });
    } else if (family == "sec7_second_moment") {
      per_trial([&ctx, q](Rng& rng) {
        const ElementSet y = random_subset(rng, ctx, random_size(rng, q, 16), false);
        const ElementSet z = random_subset(rng, ctx, random_size(rng, q - 1, 16), true);
        return one(eval_sec7_second_moment(ctx, y, z));
      });
    } else if (family == "shift_trick") {
      per_trial([&ctx](Rng& rng) {
        const Label g = static_cast<Label>(rng.between(1, ctx.group_order()));
        const std::uint64_t ord = ctx.multiplicative_order(g);
        const std::uint64_t k = rng.between(1, std::min<std::uint64_t>(ord, 256));
        const std::uint64_t j = rng.between(1, std::min<std::uint64_t>(k, 32));
        const Label a = static_cast<Label>(rng.between(1, ctx.group_order()));
        return one(eval_shift_trick(ctx, g, k, j, a, 1));
      });
    } else if (family == "thm1" || family == "lemma1_lemma2") {
      const bool thm1 = family == "thm1";
      auto run_on = [&ctx, thm1](const ElementSet& a) {
        return thm1 ? one(eval_thm1(ctx, a)) : two(eval_lemma1_lemma2(ctx, a));
      };
      for (auto n : ns_) {
        push("subgroup;n=" + std::to_string(n), [&ctx, n, run_on](Rng&) {
          auto reports = run_on(nth_power_subgroup(ctx, n).elements);
          tag(reports, "set", "subgroup");
          for (auto& r : reports) r.n = n;
          return reports;
        });
      }
      for (unsigned nu : nus_) {
        push("subfield;nu=" + std::to_string(nu), [&ctx, nu, run_on](Rng&) {
          auto reports = run_on(subfield_elements(ctx, nu));
          tag(reports, "set", "subfield");
          tag(reports, "nu", nu);
          return reports;
        });
      }
    } else if (family == "thm2") {
      for (auto n : ns_) push("n=" + std::to_string(n), [&ctx, n](Rng&) { return eval_thm2(ctx, n, 1.0 / 33.0, 1); });
    } else if (family == "thm5") {
      for (auto n : ns_) push("n=" + std::to_string(n), [&ctx, n](Rng&) { return eval_thm5(ctx, n, 1); });
    } else if (family == "thm3") {
      for (auto n : ns_) {
        push("n=" + std::to_string(n), [&ctx, n](Rng&) {
          const std::uint64_t t = ctx.group_order() / n;
          std::vector<std::uint64_t> ks;
          for (std::uint64_t k = 1; k < t; k *= 2) ks.push_back(k);
          ks.push_back(t);
          auto reports = eval_thm3(ctx, ctx.exp(n), ks, 1);
          for (auto& r : reports) r.n = n;
          return reports;
        });
      }
    } else if (family == "thm4") {
      if (ctx.q() > kThm4QLimit) return;
      per_trial([&ctx, q](Rng& rng) {
        std::size_t sizes[3];
        for (auto& s : sizes) s = random_size(rng, q, 32);
        std::sort(std::begin(sizes), std::end(sizes), std::greater<>());
        const ElementSet x = random_subset(rng, ctx, sizes[0], false);
        const ElementSet y = random_subset(rng, ctx, sizes[1], false);
        const ElementSet z = random_subset(rng, ctx, sizes[2], false);
        const int kind = static_cast<int>(rng.below(3));
        auto reports = eval_thm4(ctx, x, y, z, unit_weights(rng, x.size(), kind),
                                 unit_weights(rng, y.size(), kind), unit_weights(rng, z.size(), kind), 0);
        tag(reports, "set", "random");
        tag(reports, "weights", weight_kind_name(kind));
        return reports;
      });
      for (auto n : ns_) {
        if (ctx.group_order() / n > 128) continue;
        push("subgroup;n=" + std::to_string(n), [&ctx, n](Rng&) {
          const SubgroupSpec h = nth_power_subgroup(ctx, n);
          const Weights w(h.elements.size(), 1.0);
          auto reports = eval_thm4(ctx, h.elements, h.elements, h.elements, w, w, w, 0);
          tag(reports, "set", "subgroup");
          tag(reports, "weights", "unit");
          for (auto& r : reports) r.n = n;
          return reports;
        });
      }
    } else {
      throw ConfigError("unknown bound family '" + family + "'");
    }
  }

 private:
  const FieldCtx& ctx_;
  const SweepConfig& cfg_;
  std::vector<std::uint64_t> ns_;
  std::vector<unsigned> nus_;
};

// Canonical family order: verify families, then scan families.
std::vector<std::string> canonical_families(const std::vector<std::string>& requested) {
  std::vector<std::string> known = verify_families();
  known.insert(known.end(), scan_families().begin(), scan_families().end());
  std::set<std::string> want(requested.begin(), requested.end());
  for (const auto& f : want) {
    if (std::find(known.begin(), known.end(), f) == known.end()) {
      throw ConfigError("unknown bound family '" + f + "'");
    }
  }
  std::vector<std::string> out;
  for (const auto& f : known) {
    if (want.count(f) != 0) out.push_back(f);
  }
  return out;
}

}  // namespace

void run_sweep(const SweepConfig& cfg, const std::vector<std::string>& families, const ReportSink& sink,
               const FieldHook& hook) {
  const std::vector<std::string> ordered = canonical_families(families);
  if (ordered.empty()) return;
  for (const auto& [p, m] : sweep_fields(cfg)) {
    FieldCtx ctx = build_field(p, m, cfg.q_max);
    if (hook) hook(ctx);
    const TaskBuilder builder(ctx, cfg);
    std::vector<Task> tasks;
    for (const auto& f : ordered) builder.add(f, tasks);

    std::vector<std::vector<BoundReport>> results(tasks.size());
    parallel_for(tasks.size(), cfg.jobs, [&](std::size_t i) {
      const Task& t = tasks[i];
      const std::uint64_t seed = derive_seed(
          cfg.seed, t.family + "|p=" + std::to_string(p) + ";m=" + std::to_string(m) + ";" + t.descriptor);
      Rng rng(seed);
      const auto start = std::chrono::steady_clock::now();
      results[i] = t.run(rng);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      for (auto& r : results[i]) {
        r.seed = seed;
        r.runtime_ms = cfg.timing ? ms : 0.0;
      }
    });
    for (const auto& batch : results) {
      for (const auto& r : batch) sink(r);
    }
  }
}

nlohmann::ordered_json to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["bound_id"] = r.bound_id;
  j["p"] = r.p;
  j["m"] = r.m;
  j["q"] = r.q;
  j["n"] = r.n ? nlohmann::ordered_json(*r.n) : nlohmann::ordered_json(nullptr);
  j["params"] = nlohmann::ordered_json::parse(r.params.dump());
  j["lhs"] = r.lhs;
  j["rhs_shape"] = r.rhs_shape;
  j["ratio"] = r.ratio;
  j["mode"] = std::string(to_string(r.mode));
  j["verdict"] = std::string(to_string(r.verdict));
  j["seed"] = r.seed;
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

std::string to_jsonl(const BoundReport& r) { return to_json(r).dump(); }

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
  static const char* kHead[] = {"bound_id", "p", "m", "q", "n"};
  static const char* kTail[] = {"lhs", "rhs_shape", "ratio", "mode", "verdict", "seed", "runtime_ms"};
  std::set<std::string> param_keys;
  for (const auto& r : reports) {
    for (const auto& [k, v] : r.params.items()) param_keys.insert(k);
  }
  std::vector<std::string> header(std::begin(kHead), std::end(kHead));
  for (const auto& k : param_keys) header.push_back("params." + k);
  header.insert(header.end(), std::begin(kTail), std::end(kTail));
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_cell(header[i]);
  out << '\n';
  for (const auto& r : reports) {
    const auto j = to_json(r);
    std::vector<std::string> row;
    for (const char* k : kHead) row.push_back(scalar_text(j[k]));
    for (const auto& k : param_keys) {
      row.push_back(j["params"].contains(k) ? scalar_text(j["params"][k]) : "");
    }
    for (const char* k : kTail) row.push_back(scalar_text(j[k]));
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

ExtremalStore ExtremalStore::load(const std::string& path) {
  ExtremalStore store;
  std::ifstream in(path);
  if (!in) return store;
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw ConfigError("extremal store " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("extremal store " + path + " must be a JSON object");
  for (const auto& [id, entry] : doc.items()) {
    if (!entry.contains("ratio") || !entry["ratio"].is_number() || !entry.contains("record")) {
      throw ConfigError("extremal store entry '" + id + "' is malformed");
    }
    store.entries_[id] = {entry["ratio"].get<double>(), entry["record"]};
  }
  return store;
}

void ExtremalStore::save(const std::string& path) const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [id, entry] : entries_) {
    doc[id] = {{"ratio", entry.first}, {"record", entry.second}};
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write extremal store " + path);
  out << doc.dump(2) << '\n';
}

bool ExtremalStore::merge(const BoundReport& r) {
  if (!std::isfinite(r.ratio)) return false;
  auto it = entries_.find(r.bound_id);
  if (it != entries_.end() && !(r.ratio > it->second.first)) return false;
  entries_[r.bound_id] = {r.ratio, to_json(r)};
  return true;
}

}  // namespace gausslab
