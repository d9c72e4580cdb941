#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace zhukit {

enum class Status { pass, fail, skipped, inconclusive };

std::string_view to_string(Status s);

/// One evaluated grid point of a check.
struct CheckResult {
  std::string check;
  std::string params;
  Status status = Status::pass;
  std::string witness;  // empty unless the point failed or was not decided
};

struct Report {
  std::vector<CheckResult> results;

  void add(std::string check, std::string params, Status status, std::string witness = {});
  void append(const Report& other);

  std::size_t count(Status s) const;
  /// No failures (skipped and inconclusive points do not count against it).
  bool ok() const { return count(Status::fail) == 0; }
};

}  // namespace zhukit
