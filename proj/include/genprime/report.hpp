#pragma once

#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "genprime/analytics.hpp"
#include "genprime/oracle.hpp"
#include "genprime/sieve.hpp"

// Record streams to CSV and JSON. Both formats share one value renderer so
// they encode identical sequences byte-deterministically: floats are capped
// at 10 significant digits, booleans are true/false, NaN becomes "nan" in
// CSV and null in JSON. Schemas are fixed; tools downstream parse them.

namespace genprime {

enum class RecordFormat : std::uint8_t { kCsv, kJson };

inline std::string render_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline std::string render_double_json(double v) {
  if (std::isnan(v)) return "null";
  return render_double(v);
}

inline const char* render_bool(bool v) { return v ? "true" : "false"; }

namespace detail {

inline std::string join_json_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) return "[]\n";
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += rows[i];
    out += i + 1 < rows.size() ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

}  // namespace detail

// --- survivors: k,small,large -----------------------------------------------

inline std::string format_survivors(std::span<const SurvivorPair> rows, RecordFormat format) {
  if (format == RecordFormat::kCsv) {
    std::string out = "k,small,large\n";
    for (const SurvivorPair& r : rows) {
      out += std::to_string(r.k) + ',' + std::to_string(r.small) + ',' +
             std::to_string(r.large) + '\n';
    }
    return out;
  }
  std::vector<std::string> json;
  json.reserve(rows.size());
  for (const SurvivorPair& r : rows) {
    json.push_back("{\"k\":" + std::to_string(r.k) + ",\"small\":" + std::to_string(r.small) +
                   ",\"large\":" + std::to_string(r.large) + "}");
  }
  return detail::join_json_rows(json);
}

// --- density ----------------------------------------------------------------

/// A density step with the exact rationals rendered for export: the step's
/// ratio and the envelope density, numerator/denominator in lowest terms.
struct DensityRow {
  std::uint32_t step;
  std::uint64_t p5;
  SixForm::Tag form;
  std::uint32_t alpha;
  std::uint64_t p5r;
  std::string c_num, c_den;
  double c_float;
  std::string true_num, true_den;
  double true_float;
};

inline DensityRow make_density_row(const DensityWalker& walker) {
  return {walker.j(),
          walker.p5(),
          walker.form(),
          walker.alpha(),
          walker.p5r(),
          walker.c_exact().get_num().get_str(),
          walker.c_exact().get_den().get_str(),
          walker.c_exact().get_d(),
          walker.envelope().get_num().get_str(),
          walker.envelope().get_den().get_str(),
          walker.envelope().get_d()};
}

inline std::vector<DensityRow> density_rows(std::size_t steps) {
  DensityWalker walker(steps);
  std::vector<DensityRow> rows;
  rows.reserve(steps);
  while (walker.advance()) rows.push_back(make_density_row(walker));
  return rows;
}

inline std::string format_density(std::span<const DensityRow> rows, RecordFormat format) {
  auto form_name = [](SixForm::Tag t) { return t == SixForm::Tag::kMpl ? "mpl" : "mps"; };
  if (format == RecordFormat::kCsv) {
    std::string out = "step,p5,form,alpha,p5r,c_num,c_den,c_float,true_num,true_den,true_float\n";
    for (const DensityRow& r : rows) {
      out += std::to_string(r.step) + ',' + std::to_string(r.p5) + ',' + form_name(r.form) +
             ',' + std::to_string(r.alpha) + ',' + std::to_string(r.p5r) + ',' + r.c_num + ',' +
             r.c_den + ',' + render_double(r.c_float) + ',' + r.true_num + ',' + r.true_den +
             ',' + render_double(r.true_float) + '\n';
    }
    return out;
  }
  std::vector<std::string> json;
  json.reserve(rows.size());
  for (const DensityRow& r : rows) {
    json.push_back(std::string("{\"step\":") + std::to_string(r.step) +
                   ",\"p5\":" + std::to_string(r.p5) + ",\"form\":\"" + form_name(r.form) +
                   "\",\"alpha\":" + std::to_string(r.alpha) +
                   ",\"p5r\":" + std::to_string(r.p5r) + ",\"c_num\":\"" + r.c_num +
                   "\",\"c_den\":\"" + r.c_den + "\",\"c_float\":" + render_double_json(r.c_float) +
                   ",\"true_num\":\"" + r.true_num + "\",\"true_den\":\"" + r.true_den +
                   "\",\"true_float\":" + render_double_json(r.true_float) + "}");
  }
  return detail::join_json_rows(json);
}

// --- bounds -----------------------------------------------------------------

inline std::string format_bounds(std::span<const BoundReport> rows, RecordFormat format) {
  if (format == RecordFormat::kCsv) {
    std::string out = "n,pi,bound9,bound11,bound20,ok9,ok11,ok20\n";
    for (const BoundReport& r : rows) {
      out += std::to_string(r.n) + ',' + std::to_string(r.pi_actual) + ',' +
             render_double(r.bound9) + ',' + render_double(r.bound11) + ',' +
             render_double(r.bound20) + ',' + render_bool(r.ok9) + ',' + render_bool(r.ok11) +
             ',' + render_bool(r.ok20) + '\n';
    }
    return out;
  }
  std::vector<std::string> json;
  json.reserve(rows.size());
  for (const BoundReport& r : rows) {
    json.push_back(std::string("{\"n\":") + std::to_string(r.n) +
                   ",\"pi\":" + std::to_string(r.pi_actual) +
                   ",\"bound9\":" + render_double_json(r.bound9) +
                   ",\"bound11\":" + render_double_json(r.bound11) +
                   ",\"bound20\":" + render_double_json(r.bound20) +
                   ",\"ok9\":" + render_bool(r.ok9) + ",\"ok11\":" + render_bool(r.ok11) +
                   ",\"ok20\":" + render_bool(r.ok20) + "}");
  }
  return detail::join_json_rows(json);
}

// --- gaps -------------------------------------------------------------------

inline std::string format_gaps(std::span<const GapViolation> rows, RecordFormat format) {
  if (format == RecordFormat::kCsv) {
    std::string out = "p,next\n";
    for (const GapViolation& r : rows) {
      out += std::to_string(r.prime) + ',' + std::to_string(r.next_prime) + '\n';
    }
    return out;
  }
  std::vector<std::string> json;
  json.reserve(rows.size());
  for (const GapViolation& r : rows) {
    json.push_back("{\"p\":" + std::to_string(r.prime) +
                   ",\"next\":" + std::to_string(r.next_prime) + "}");
  }
  return detail::join_json_rows(json);
}

}  // namespace genprime
