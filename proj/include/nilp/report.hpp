#pragma once

// Verification reports shared by the checkers and the CLI. Reports carry no
// timestamps or thread counts so that seeded runs serialize identically.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilp/modarith.hpp"

namespace nilp {

using Json = nlohmann::ordered_json;

/// Witnesses kept per check; failures beyond this are only counted.
inline constexpr std::size_t kMaxWitnesses = 8;

struct Violation {
  std::string check;
  Json witness;
  Json expected;
  Json actual;
};

struct CheckResult {
  std::string check;
  std::uint64_t evaluated = 0;
  std::uint64_t failed = 0;
  std::vector<Violation> witnesses;

  bool passed() const { return failed == 0; }
  void record(Violation v);
};

struct Report {
  std::string kind;
  std::optional<std::uint64_t> seed;
  Json budgets = Json::object();
  Json info = Json::object();
  std::vector<CheckResult> results;

  bool passed() const;
  void add(CheckResult r) { results.push_back(std::move(r)); }
  /// Convenience for a single-outcome check.
  void add_simple(const std::string& check, bool ok, Json witness = nullptr, Json expected = nullptr,
                  Json actual = nullptr);
  const CheckResult* find(const std::string& check) const;
  Json to_json() const;
};

Json to_json(const Elem& u);

/// Evaluates item(i) for i in [0, n) in deterministic parallel chunks.
/// item returns a violation or nothing; the first kMaxWitnesses violations
/// in index order are kept.
CheckResult parallel_check(const std::string& check, std::uint64_t n, int threads,
                           const std::function<std::optional<Violation>(std::uint64_t)>& item);

}  // namespace nilp
