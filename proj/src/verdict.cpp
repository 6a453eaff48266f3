#include "plateau/verdict.hpp"

namespace plateau {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skipped:
      return "skipped";
  }
  return "skipped";
}

Status combine(std::span<const Verdict> verdicts) {
  bool any_pass = false;
  for (const auto& v : verdicts) {
    if (v.status == Status::Fail) return Status::Fail;
    any_pass = any_pass || v.status == Status::Pass;
  }
  return any_pass ? Status::Pass : Status::Skipped;
}

int exit_code(Status s) {
  switch (s) {
    case Status::Pass:
      return 0;
    case Status::Fail:
      return 1;
    case Status::Skipped:
      return 3;
  }
  return 3;
}

}  // namespace plateau
