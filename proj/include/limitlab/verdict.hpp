#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "limitlab/core.hpp"

namespace limitlab {

enum class Status { holds, violated, inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::holds: return "holds";
    case Status::violated: return "violated";
    default: return "inconclusive";
  }
}

// Positions refer to the learning sequence (n, m) and, when the check ran
// over generated texts, the text prefix that exhibits the problem.
struct Witness {
  std::optional<std::size_t> n = std::nullopt;
  std::optional<std::size_t> m = std::nullopt;
  std::optional<Nat> datum = std::nullopt;
  std::optional<Sequence> text = std::nullopt;
  std::string detail = {};
};

struct Verdict {
  Status status = Status::holds;
  std::optional<Witness> witness;
  std::string reason;
  std::vector<std::string> notes;

  static Verdict holds() { return {}; }
  static Verdict violated(Witness w) {
    Verdict v;
    v.status = Status::violated;
    v.witness = std::move(w);
    return v;
  }
  static Verdict inconclusive(std::string why, std::optional<Witness> w = std::nullopt) {
    Verdict v;
    v.status = Status::inconclusive;
    v.reason = std::move(why);
    v.witness = std::move(w);
    return v;
  }

  bool is_holds() const { return status == Status::holds; }
  bool is_violated() const { return status == Status::violated; }
  bool is_inconclusive() const { return status == Status::inconclusive; }

  void note(std::string n) {
    for (const auto& existing : notes)
      if (existing == n) return;
    notes.push_back(std::move(n));
  }
};

// Folds verdicts: violated beats inconclusive beats holds; the first
// verdict of the worst kind keeps its witness.
class VerdictAccumulator {
 public:
  void add(Verdict v) {
    for (auto& n : v.notes) result_.note(n);
    if (rank(v.status) > rank(result_.status)) {
      auto notes = std::move(result_.notes);
      result_ = std::move(v);
      for (auto& n : notes) result_.note(std::move(n));
    }
  }
  bool violated() const { return result_.is_violated(); }
  const Verdict& result() const { return result_; }
  Verdict take() { return std::move(result_); }

 private:
  static int rank(Status s) {
    switch (s) {
      case Status::holds: return 0;
      case Status::inconclusive: return 1;
      default: return 2;
    }
  }
  Verdict result_;
};

}  // namespace limitlab
