#include "ruin/paths.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace ruin {
namespace {

LatticePath strip_first(const LatticePath& path, std::uint64_t new_start) {
  std::vector<Step> rest(path.steps().begin() + 1, path.steps().end());
  return LatticePath(new_start, std::move(rest));
}

void check_cap(std::uint64_t length, std::uint64_t cap) {
  if (length > cap) throw EnumerationCapExceeded(length, cap);
}

// Depth-first generation with 'L' tried before 'R' so output is sorted.
class Enumerator {
 public:
  Enumerator(std::uint64_t k, std::uint64_t n) : start_(k), rights_(n), lefts_(n + k) {
    current_.reserve(2 * n + k);
  }

  std::vector<LatticePath> run() {
    descend(start_, rights_, lefts_);
    return std::move(out_);
  }

 private:
  void descend(std::uint64_t pos, std::uint64_t rights_left, std::uint64_t lefts_left) {
    if (rights_left == 0 && lefts_left == 0) {
      out_.emplace_back(start_, current_);
      return;
    }
    // A left step may reach 0 only as the very last step.
    if (lefts_left > 0 && (pos > 1 || (rights_left == 0 && lefts_left == 1))) {
      current_.push_back(Step::Left);
      descend(pos - 1, rights_left, lefts_left - 1);
      current_.pop_back();
    }
    // lefts_left - rights_left == pos throughout, so every prefix completes.
    if (rights_left > 0) {
      current_.push_back(Step::Right);
      descend(pos + 1, rights_left - 1, lefts_left);
      current_.pop_back();
    }
  }

  std::uint64_t start_;
  std::uint64_t rights_;
  std::uint64_t lefts_;
  std::vector<Step> current_;
  std::vector<LatticePath> out_;
};

}  // namespace

EnumerationCapExceeded::EnumerationCapExceeded(std::uint64_t requested, std::uint64_t cap)
    : std::length_error("path length " + std::to_string(requested) +
                        " exceeds enumeration cap " + std::to_string(cap)),
      requested_(requested),
      cap_(cap) {}

bool is_first_passage(std::int64_t start, std::span<const Step> steps) {
  if (start <= 0 || steps.empty()) return false;
  std::int64_t pos = start;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    pos += steps[i] == Step::Right ? 1 : -1;
    const bool last = i + 1 == steps.size();
    if (!last && pos <= 0) return false;
    if (last && pos != 0) return false;
  }
  return true;
}

LatticePath::LatticePath(std::uint64_t start, std::vector<Step> steps)
    : start_(start), steps_(std::move(steps)) {
  if (!is_first_passage(static_cast<std::int64_t>(start_), steps_)) {
    throw std::invalid_argument("not a first-passage path: " + str());
  }
}

LatticePath LatticePath::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw std::invalid_argument("path must look like 'k:RL...': " + std::string(text));
  }
  std::uint64_t start = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + colon, start);
  if (ec != std::errc{} || ptr != text.data() + colon) {
    throw std::invalid_argument("bad path start: " + std::string(text));
  }
  std::vector<Step> steps;
  steps.reserve(text.size() - colon - 1);
  for (char c : text.substr(colon + 1)) {
    if (c == 'R') {
      steps.push_back(Step::Right);
    } else if (c == 'L') {
      steps.push_back(Step::Left);
    } else {
      throw std::invalid_argument("bad step character in path: " + std::string(text));
    }
  }
  return LatticePath(start, std::move(steps));
}

std::vector<std::int64_t> LatticePath::positions() const {
  std::vector<std::int64_t> out;
  out.reserve(steps_.size() + 1);
  std::int64_t pos = static_cast<std::int64_t>(start_);
  out.push_back(pos);
  for (Step s : steps_) {
    pos += s == Step::Right ? 1 : -1;
    out.push_back(pos);
  }
  return out;
}

std::string LatticePath::str() const {
  std::string out = std::to_string(start_);
  out.push_back(':');
  for (Step s : steps_) out.push_back(s == Step::Right ? 'R' : 'L');
  return out;
}

std::vector<LatticePath> enumerate_first_passage(std::uint64_t k, std::uint64_t n,
                                                 std::uint64_t cap) {
  if (k == 0) throw std::invalid_argument("enumerate_first_passage: k must be >= 1");
  check_cap(2 * n + k, cap);
  return Enumerator(k, n).run();
}

FirstReturnParts first_return_decompose(const LatticePath& path) {
  if (path.start() != 1) {
    throw std::invalid_argument("first_return_decompose: path must start at 1");
  }
  const std::uint64_t n = path.right_steps();
  if (n == 0) {
    throw std::invalid_argument("first_return_decompose: path needs at least one right step");
  }
  const auto& steps = path.steps();
  // steps[0] is Right (a left step from 1 would end the walk). Find the first
  // index after it where the walk is back at 1.
  std::int64_t pos = 2;
  std::size_t ret = 1;
  for (; ret < steps.size(); ++ret) {
    pos += steps[ret] == Step::Right ? 1 : -1;
    if (pos == 1) break;
  }
  std::vector<Step> left(steps.begin() + 1, steps.begin() + static_cast<std::ptrdiff_t>(ret) + 1);
  std::vector<Step> right(steps.begin() + static_cast<std::ptrdiff_t>(ret) + 1, steps.end());
  LatticePath left_path(1, std::move(left));
  LatticePath right_path(1, std::move(right));
  const std::uint64_t alpha = left_path.right_steps() + 1;
  return FirstReturnParts{alpha, std::move(left_path), std::move(right_path)};
}

LatticePath first_return_compose(std::uint64_t alpha, const LatticePath& left,
                                 const LatticePath& right) {
  if (left.start() != 1 || right.start() != 1) {
    throw std::invalid_argument("first_return_compose: both parts must start at 1");
  }
  if (alpha != left.right_steps() + 1) {
    throw std::invalid_argument("first_return_compose: alpha must be left.right_steps() + 1");
  }
  std::vector<Step> steps;
  steps.reserve(1 + left.length() + right.length());
  steps.push_back(Step::Right);
  steps.insert(steps.end(), left.steps().begin(), left.steps().end());
  steps.insert(steps.end(), right.steps().begin(), right.steps().end());
  return LatticePath(1, std::move(steps));
}

LatticePath shift_bijection_k2(const LatticePath& path) {
  if (path.start() != 1) {
    throw std::invalid_argument("shift_bijection_k2: path must start at 1");
  }
  if (path.right_steps() == 0) {
    throw std::invalid_argument("shift_bijection_k2: path needs at least one right step");
  }
  return strip_first(path, 2);
}

LatticePath shift_bijection_k2_inverse(const LatticePath& path) {
  if (path.start() != 2) {
    throw std::invalid_argument("shift_bijection_k2_inverse: path must start at 2");
  }
  std::vector<Step> steps;
  steps.reserve(path.length() + 1);
  steps.push_back(Step::Right);
  steps.insert(steps.end(), path.steps().begin(), path.steps().end());
  return LatticePath(1, std::move(steps));
}

FirstStepPartition partition_by_first_step(std::uint64_t k, std::uint64_t n,
                                           std::uint64_t cap) {
  if (k < 3) throw std::invalid_argument("partition_by_first_step: k must be >= 3");
  FirstStepPartition out;
  for (const auto& path : enumerate_first_passage(k - 1, n + 1, cap)) {
    if (path.steps().front() == Step::Right) {
      out.to_k.push_back(strip_first(path, k));
    } else {
      out.to_k_minus_2.push_back(strip_first(path, k - 2));
    }
  }
  return out;
}

}  // namespace ruin
