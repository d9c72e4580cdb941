#include "zhukit/report.hpp"

#include <algorithm>

namespace zhukit {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::inconclusive: return "inconclusive";
  }
  return "unknown";
}

void Report::add(std::string check, std::string params, Status status, std::string witness) {
  results.push_back(CheckResult{std::move(check), std::move(params), status, std::move(witness)});
}

void Report::append(const Report& other) {
  results.insert(results.end(), other.results.begin(), other.results.end());
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [s](const CheckResult& r) { return r.status == s; }));
}

}  // namespace zhukit
