#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockline {

// Machine-readable failure codes surfaced through Error and ValidationIssue.
enum class Code {
  NON_SIMPLE_LINE,
  TERMINAL_DEGREE,
  SHARED_TERMINAL,
  NON_PATH_INTERSECTION,
  BAD_ROTATION,
  INDEX_OUT_OF_RANGE,
  NOT_A_PATH,
  BAD_TERMINAL_ORDER,
  NOT_A_TREE,
  NOT_UPWARD,
  NOT_PRIME,
  INVALID_PARAMS,
  BUDGET_EXCEEDED,
  SIMPLIFICATION_FAILED,
  INTERNAL_INCONSISTENT_ORDERS,
  PARSE_ERROR,
};

inline const char* code_name(Code c) {
  switch (c) {
    case Code::NON_SIMPLE_LINE: return "NON_SIMPLE_LINE";
    case Code::TERMINAL_DEGREE: return "TERMINAL_DEGREE";
    case Code::SHARED_TERMINAL: return "SHARED_TERMINAL";
    case Code::NON_PATH_INTERSECTION: return "NON_PATH_INTERSECTION";
    case Code::BAD_ROTATION: return "BAD_ROTATION";
    case Code::INDEX_OUT_OF_RANGE: return "INDEX_OUT_OF_RANGE";
    case Code::NOT_A_PATH: return "NOT_A_PATH";
    case Code::BAD_TERMINAL_ORDER: return "BAD_TERMINAL_ORDER";
    case Code::NOT_A_TREE: return "NOT_A_TREE";
    case Code::NOT_UPWARD: return "NOT_UPWARD";
    case Code::NOT_PRIME: return "NOT_PRIME";
    case Code::INVALID_PARAMS: return "INVALID_PARAMS";
    case Code::BUDGET_EXCEEDED: return "BUDGET_EXCEEDED";
    case Code::SIMPLIFICATION_FAILED: return "SIMPLIFICATION_FAILED";
    case Code::INTERNAL_INCONSISTENT_ORDERS: return "INTERNAL_INCONSISTENT_ORDERS";
    case Code::PARSE_ERROR: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(Code code, const std::string& what)
      : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Exchange of the consecutive blocks [i..j] and [j+1..k], 1-based, i <= j < k.
struct BlockMove {
  int i = 0;
  int j = 0;
  int k = 0;

  friend bool operator==(const BlockMove&, const BlockMove&) = default;
};

inline bool move_in_range(const BlockMove& m, std::size_t n) {
  return 1 <= m.i && m.i <= m.j && m.j < m.k && m.k <= static_cast<int>(n);
}

/// [.. a, L.., R.., b ..] -> [.. a, R.., L.., b ..] where L = seq[i..j], R = seq[j+1..k].
template <typename T>
std::vector<T> apply_block_move(const std::vector<T>& seq, const BlockMove& m) {
  if (!move_in_range(m, seq.size()))
    throw Error(Code::INDEX_OUT_OF_RANGE, "block move (" + std::to_string(m.i) + "," +
                                              std::to_string(m.j) + "," + std::to_string(m.k) +
                                              ") on sequence of length " +
                                              std::to_string(seq.size()));
  std::vector<T> out;
  out.reserve(seq.size());
  out.insert(out.end(), seq.begin(), seq.begin() + (m.i - 1));
  out.insert(out.end(), seq.begin() + m.j, seq.begin() + m.k);
  out.insert(out.end(), seq.begin() + (m.i - 1), seq.begin() + m.j);
  out.insert(out.end(), seq.begin() + m.k, seq.end());
  return out;
}

/// Pairs swapped by a move: every (x, y) with x in the left and y in the right block.
inline long pairs_exchanged(const BlockMove& m) {
  return static_cast<long>(m.j - m.i + 1) * static_cast<long>(m.k - m.j);
}

/// A move is monotone when every left-block element exceeds every right-block element.
template <typename T>
bool is_monotone_move(const std::vector<T>& seq, const BlockMove& m) {
  if (!move_in_range(m, seq.size())) return false;
  for (int q = m.i; q <= m.j; ++q)
    for (int r = m.j + 1; r <= m.k; ++r)
      if (!(seq[q - 1] > seq[r - 1])) return false;
  return true;
}

struct ValidationIssue {
  Code code;
  std::string detail;
};

}  // namespace blockline
