#pragma once

// Command reports: a human-readable text rendering plus a machine-readable
// JSON block (schema "quivhom-report-v1"). Reports are byte-identical across
// runs on identical inputs; wall-clock timing therefore goes to stderr, not
// into the report.

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace quivhom {

struct ReportSection {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  std::string input_digest;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<ReportSection> sections;
  std::vector<std::pair<std::string, bool>> verdicts;

  void field(const std::string& k, const std::string& v) { fields.push_back({k, v}); }
  void verdict(const std::string& k, bool v) { verdicts.push_back({k, v}); }
  bool all_verdicts_hold() const {
    for (auto& [k, v] : verdicts)
      if (!v) return false;
    return true;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "== quivhom " << command << " (input " << input_digest << ") ==\n";
    for (auto& [k, v] : fields) os << k << ": " << v << "\n";
    for (auto& s : sections) {
      os << "-- " << s.title << " --\n";
      if (!s.columns.empty()) {
        for (size_t i = 0; i < s.columns.size(); ++i) os << (i ? "\t" : "") << s.columns[i];
        os << "\n";
      }
      for (auto& r : s.rows) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "\t" : "") << r[i];
        os << "\n";
      }
    }
    for (auto& [k, v] : verdicts) os << (v ? "PASS " : "FAIL ") << k << "\n";
    return os.str();
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "quivhom-report-v1";
    j["command"] = command;
    j["digest"] = input_digest;
    j["fields"] = nlohmann::ordered_json::array();
    for (auto& [k, v] : fields) j["fields"].push_back({{"key", k}, {"value", v}});
    j["sections"] = nlohmann::ordered_json::array();
    for (auto& s : sections) {
      nlohmann::ordered_json sec;
      sec["title"] = s.title;
      sec["columns"] = s.columns;
      sec["rows"] = s.rows;
      j["sections"].push_back(sec);
    }
    j["verdicts"] = nlohmann::ordered_json::array();
    for (auto& [k, v] : verdicts) j["verdicts"].push_back({{"key", k}, {"holds", v}});
    return j;
  }

  static Report from_json(const nlohmann::json& j) {
    if (j.at("schema").get<std::string>() != "quivhom-report-v1")
      throw std::runtime_error("unknown report schema");
    Report r;
    r.command = j.at("command").get<std::string>();
    r.input_digest = j.at("digest").get<std::string>();
    for (auto& f : j.at("fields"))
      r.fields.push_back({f.at("key").get<std::string>(), f.at("value").get<std::string>()});
    for (auto& s : j.at("sections")) {
      ReportSection sec;
      sec.title = s.at("title").get<std::string>();
      for (auto& c : s.at("columns")) sec.columns.push_back(c.get<std::string>());
      for (auto& row : s.at("rows")) {
        std::vector<std::string> cells;
        for (auto& c : row) cells.push_back(c.get<std::string>());
        sec.rows.push_back(cells);
      }
      r.sections.push_back(sec);
    }
    for (auto& v : j.at("verdicts"))
      r.verdicts.push_back({v.at("key").get<std::string>(), v.at("holds").get<bool>()});
    return r;
  }

  friend bool operator==(const Report& a, const Report& b) {
    return a.command == b.command && a.input_digest == b.input_digest && a.fields == b.fields &&
           a.verdicts == b.verdicts && a.sections_equal(b);
  }
  bool sections_equal(const Report& b) const {
    if (sections.size() != b.sections.size()) return false;
    for (size_t i = 0; i < sections.size(); ++i) {
      if (sections[i].title != b.sections[i].title) return false;
      if (sections[i].columns != b.sections[i].columns) return false;
      if (sections[i].rows != b.sections[i].rows) return false;
    }
    return true;
  }
};

inline std::string fnv1a_digest(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
  return std::string(buf);
}

}  // namespace quivhom
