#pragma once

#include <span>
#include <string>
#include <string_view>

namespace plateau {

enum class Status { Pass, Fail, Skipped };

std::string_view to_string(Status s);

/// Outcome of one theorem check. Failed hypotheses are Skipped, never Fail.
struct Verdict {
  std::string tag;
  Status status = Status::Skipped;
  std::string details;

  static Verdict pass(std::string tag, std::string details = {}) { return {std::move(tag), Status::Pass, std::move(details)}; }
  static Verdict fail(std::string tag, std::string details) { return {std::move(tag), Status::Fail, std::move(details)}; }
  static Verdict skipped(std::string tag, std::string reason) { return {std::move(tag), Status::Skipped, std::move(reason)}; }
};

/// Fail if any fails, else Pass if any passes, else Skipped.
Status combine(std::span<const Verdict> verdicts);

/// Process exit code for a status: 0 pass, 1 fail, 3 skipped.
int exit_code(Status s);

}  // namespace plateau
