#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcbp/analysis.hpp"
#include "bcbp/sieve.hpp"

namespace bcbp {

inline constexpr int kSchemaVersion = 1;

/// Serializable form of a SolveReport.  Big integers travel as decimal
/// strings so no consumer ever sees a truncated value.
struct ResultRecord {
  int schema_version = kSchemaVersion;
  int n = 0;
  long j_hat = 0;
  long j_tilde = 0;
  std::string j_full;                       // decimal, may exceed native width
  std::vector<std::string> families;        // ascii tag names
  std::vector<std::vector<int>> solutions;  // trits as integers
  std::vector<std::string> chain;           // moduli, decimal strings
  std::vector<long> step_profile;
  long elapsed_ms = 0;

  bool operator==(const ResultRecord&) const = default;

  /// Equality with elapsed_ms ignored; cache hits change only the timing.
  bool same_results(const ResultRecord& other) const {
    ResultRecord a = *this, b = other;
    a.elapsed_ms = b.elapsed_ms = 0;
    return a == b;
  }
};

inline ResultRecord make_record(const SolveReport& report) {
  ResultRecord rec;
  rec.n = report.n;
  rec.j_hat = report.j_hat;
  rec.j_tilde = report.j_tilde;
  rec.j_full = report.j_full.get_str();
  for (FamilyTag tag : classify_families(report.n)) rec.families.push_back(family_name(tag));
  for (const auto& s : report.solutions) {
    std::vector<int> trits;
    for (int8_t e : s.entries) trits.push_back(e);
    rec.solutions.push_back(std::move(trits));
  }
  for (const auto& d : report.chain.moduli) rec.chain.push_back(d.get_str());
  for (size_t s : report.step_profile) rec.step_profile.push_back(static_cast<long>(s));
  rec.elapsed_ms = static_cast<long>(report.elapsed_seconds * 1000.0);
  return rec;
}

inline void to_json(nlohmann::json& j, const ResultRecord& rec) {
  j = nlohmann::json{{"schema_version", rec.schema_version},
                     {"n", rec.n},
                     {"j_hat", rec.j_hat},
                     {"j_tilde", rec.j_tilde},
                     {"j_full", rec.j_full},
                     {"families", rec.families},
                     {"solutions", rec.solutions},
                     {"chain", rec.chain},
                     {"step_profile", rec.step_profile},
                     {"elapsed_ms", rec.elapsed_ms}};
}

inline void from_json(const nlohmann::json& j, ResultRecord& rec) {
  j.at("schema_version").get_to(rec.schema_version);
  j.at("n").get_to(rec.n);
  j.at("j_hat").get_to(rec.j_hat);
  j.at("j_tilde").get_to(rec.j_tilde);
  j.at("j_full").get_to(rec.j_full);
  j.at("families").get_to(rec.families);
  j.at("solutions").get_to(rec.solutions);
  j.at("chain").get_to(rec.chain);
  j.at("step_profile").get_to(rec.step_profile);
  j.at("elapsed_ms").get_to(rec.elapsed_ms);
}

inline std::string csv_header() { return "n,j_hat,families,elapsed_ms"; }

inline std::string csv_row(const ResultRecord& rec) {
  std::ostringstream out;
  out << rec.n << ',' << rec.j_hat << ',';
  for (size_t i = 0; i < rec.families.size(); ++i) {
    if (i) out << ' ';
    out << rec.families[i];
  }
  out << ',' << rec.elapsed_ms;
  return out.str();
}

/// One JSON file per n, keyed by schema version.  Writes go through a
/// temporary file and a rename so a partial write never poisons the cache.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(int n) const {
    return dir_ / ("v" + std::to_string(kSchemaVersion)) / ("n" + std::to_string(n) + ".json");
  }

  std::optional<ResultRecord> load(int n) const {
    const auto p = path_for(n);
    std::ifstream in(p);
    if (!in) return std::nullopt;
    try {
      nlohmann::json j;
      in >> j;
      ResultRecord rec = j.get<ResultRecord>();
      if (rec.schema_version != kSchemaVersion || rec.n != n) return std::nullopt;
      return rec;
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;  // unreadable entries are recomputed
    }
  }

  void store(const ResultRecord& rec) const {
    const auto p = path_for(rec.n);
    std::filesystem::create_directories(p.parent_path());
    const auto tmp = p.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw std::runtime_error("cache: cannot write " + tmp);
      out << nlohmann::json(rec).dump(2) << '\n';
    }
    std::filesystem::rename(tmp, p);
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace bcbp
