#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "flatlat/catalog.hpp"

namespace flatlat {

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string to_text(const VerificationReport& report, bool with_timings) {
  std::ostringstream out;
  out << "max-size: " << report.max_n << '\n';
  out << "structures: " << report.structures_checked << '\n';
  out << "classes:";
  for (std::size_t count : report.class_counts) out << ' ' << count;
  out << '\n';
  out << "failures: " << report.equivalence_failures.size() << '\n';
  for (const auto& failure : report.equivalence_failures) out << "failure: " << failure << '\n';
  for (const auto& s : report.structures) {
    out << s.id << " size=" << s.size << " distributive=" << yes_no(s.distributive)
        << " i=" << yes_no(s.witness_i_injective) << " i'=" << yes_no(s.witness_i_prime_injective)
        << " flat-sweep=" << yes_no(s.brute_force_flat) << " diagrams=" << yes_no(s.diagrams_commute)
        << " power-law=" << yes_no(s.power_law) << " epsilon=" << yes_no(s.epsilon_bijection);
    if (with_timings) out << " ms=" << std::fixed << std::setprecision(1) << s.milliseconds;
    out << '\n';
  }
  return out.str();
}

std::string to_json(const VerificationReport& report, bool with_timings) {
  nlohmann::ordered_json doc;
  doc["max_size"] = report.max_n;
  doc["structures_checked"] = report.structures_checked;
  doc["class_counts"] = report.class_counts;
  doc["equivalence_failures"] = report.equivalence_failures;
  auto& list = doc["structures"] = nlohmann::ordered_json::array();
  for (const auto& s : report.structures) {
    nlohmann::ordered_json entry;
    entry["id"] = s.id;
    entry["size"] = s.size;
    auto& covers = entry["covers"] = nlohmann::ordered_json::array();
    for (const auto& [lo, hi] : s.covers) covers.push_back({lo, hi});
    entry["distributive"] = s.distributive;
    entry["witness_i_injective"] = s.witness_i_injective;
    entry["witness_i_prime_injective"] = s.witness_i_prime_injective;
    entry["brute_force_flat"] = s.brute_force_flat;
    entry["diagrams_commute"] = s.diagrams_commute;
    entry["power_law"] = s.power_law;
    entry["epsilon_bijection"] = s.epsilon_bijection;
    if (with_timings) entry["milliseconds"] = s.milliseconds;
    list.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace flatlat
