#include "nilp/report.hpp"

#include <algorithm>

#include "nilp/parallel.hpp"

namespace nilp {

void CheckResult::record(Violation v) {
  ++failed;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(v));
}

bool Report::passed() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed(); });
}

void Report::add_simple(const std::string& check, bool ok, Json witness, Json expected, Json actual) {
  CheckResult r{check, 1, 0, {}};
  if (!ok) r.record({check, std::move(witness), std::move(expected), std::move(actual)});
  results.push_back(std::move(r));
}

const CheckResult* Report::find(const std::string& check) const {
  for (const auto& r : results) {
    if (r.check == check) return &r;
  }
  return nullptr;
}

Json Report::to_json() const {
  Json j;
  j["schema"] = 1;
  j["kind"] = kind;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["budgets"] = budgets;
  if (!info.empty()) j["info"] = info;
  j["passed"] = passed();
  Json results_json = Json::array();
  Json violations = Json::array();
  for (const auto& r : results) {
    results_json.push_back({{"check", r.check}, {"evaluated", r.evaluated}, {"failed", r.failed}});
    for (const auto& v : r.witnesses) {
      violations.push_back({{"check", v.check}, {"witness", v.witness}, {"expected", v.expected}, {"actual", v.actual}});
    }
  }
  j["results"] = results_json;
  j["violations"] = violations;
  return j;
}

Json to_json(const Elem& u) { return Json(u.coeffs()); }

CheckResult parallel_check(const std::string& check, std::uint64_t n, int threads,
                           const std::function<std::optional<Violation>(std::uint64_t)>& item) {
  constexpr std::uint64_t kChunk = 4096;
  std::vector<CheckResult> parts(chunk_count(n, kChunk));
  parallel_chunks(n, kChunk, threads, [&](std::uint64_t begin, std::uint64_t end, std::uint64_t c) {
    CheckResult& part = parts[c];
    for (std::uint64_t i = begin; i < end; ++i) {
      if (auto v = item(i)) part.record(std::move(*v));
    }
  });
  CheckResult out{check, n, 0, {}};
  for (auto& part : parts) {
    out.failed += part.failed;
    for (auto& w : part.witnesses) {
      if (out.witnesses.size() < kMaxWitnesses) out.witnesses.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace nilp
