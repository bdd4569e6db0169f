#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gausslab/bounds.hpp"
#include "gausslab/field.hpp"

namespace gausslab {

/// Which n | q - 1 a sweep visits.
struct NFilter {
  enum class Kind { all, range, list };
  Kind kind = Kind::all;
  std::uint64_t lo = 1;
  std::uint64_t hi = UINT64_MAX;
  std::vector<std::uint64_t> values;

  bool accepts(std::uint64_t n) const;
};

struct SweepConfig {
  std::vector<std::uint32_t> p_list;  // used instead of the p range when non-empty
  std::uint32_t p_lo = 2;
  std::uint32_t p_hi = 1024;
  unsigned m_lo = 1;
  unsigned m_hi = 32;
  std::uint64_t q_lo = 2;
  std::uint64_t q_hi = 1024;
  std::uint64_t q_max = kDefaultQMax;
  NFilter n_filter;
  /// Families to run; unset means the command's default list.
  std::optional<std::vector<std::string>> bounds;
  unsigned trials = 10;
  std::uint64_t seed = 0;
  std::string format = "jsonl";
  unsigned jobs = 0;
  /// Fill runtime_ms. Off by default so output is reproducible byte for byte.
  bool timing = false;
};

/// Reads a config document. Unknown keys and ill-typed values throw ConfigError.
SweepConfig config_from_json(const nlohmann::json& doc);
SweepConfig load_config(const std::string& path);

/// Applies GAUSSLAB_Q_MAX (a hard ceiling over q_max) and checks the ranges.
/// Throws ConfigError when q_hi exceeds the effective ceiling.
void finalize_config(SweepConfig& cfg);

/// (p, m) pairs of the sweep in canonical order (p, then m).
std::vector<std::pair<std::uint32_t, unsigned>> sweep_fields(const SweepConfig& cfg);

/// Families driven by `verify` (assert mode) and `scan` (observe mode), in
/// canonical order.
const std::vector<std::string>& verify_families();
const std::vector<std::string>& scan_families();

/// Fields with q above this are skipped by the thm4 family.
inline constexpr std::uint32_t kThm4QLimit = 343;

using ReportSink = std::function<void(const BoundReport&)>;
/// Called on every freshly built field before any task runs.
using FieldHook = std::function<void(FieldCtx&)>;

/// Runs `families` over every field of the sweep. Reports reach `sink` in
/// canonical order (field, family, parameters) whatever cfg.jobs is.
/// Throws ConfigError on an unknown family.
void run_sweep(const SweepConfig& cfg, const std::vector<std::string>& families,
               const ReportSink& sink, const FieldHook& hook = {});

/// Record with keys in schema order: bound_id, p, m, q, n, params, lhs,
/// rhs_shape, ratio, mode, verdict, seed, runtime_ms.
nlohmann::ordered_json to_json(const BoundReport& r);
std::string to_jsonl(const BoundReport& r);

/// CSV with the top-level keys flattened: params become params.<key> columns
/// (union over all records, sorted), nested values are written as JSON text.
void write_csv(std::ostream& out, const std::vector<BoundReport>& reports);

/// Maximum observed ratio per bound_id with the witnessing record.
class ExtremalStore {
 public:
  /// Missing file means an empty store.
  static ExtremalStore load(const std::string& path);
  void save(const std::string& path) const;

  /// Keeps the report if its ratio is strictly larger than the stored one.
  bool merge(const BoundReport& r);

  const std::map<std::string, std::pair<double, nlohmann::ordered_json>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::pair<double, nlohmann::ordered_json>> entries_;
};

}  // namespace gausslab
