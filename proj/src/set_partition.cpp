#include "ncfree/set_partition.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ncfree {

SetPartition::SetPartition(int n, std::vector<std::vector<int>> blocks)
    : n_(n), blocks_(std::move(blocks)) {
  if (n < 0) throw std::invalid_argument("partition size must be nonnegative");
  for (auto& block : blocks_) {
    if (block.empty()) throw std::invalid_argument("empty block in partition");
    std::sort(block.begin(), block.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.front() < b.front();
            });
  block_of_.assign(static_cast<size_t>(n), -1);
  for (size_t b = 0; b < blocks_.size(); ++b) {
    for (int e : blocks_[b]) {
      if (e < 1 || e > n) {
        throw std::invalid_argument("partition element out of range 1..n");
      }
      if (block_of_[static_cast<size_t>(e - 1)] != -1) {
        throw std::invalid_argument("repeated element in partition");
      }
      block_of_[static_cast<size_t>(e - 1)] = static_cast<int>(b);
    }
  }
  for (int e = 1; e <= n; ++e) {
    if (block_of_[static_cast<size_t>(e - 1)] == -1) {
      throw std::invalid_argument("partition does not cover 1..n");
    }
  }
}

SetPartition SetPartition::singletons(int n) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) blocks.push_back({i});
  return SetPartition(n, std::move(blocks));
}

SetPartition SetPartition::full(int n) {
  if (n == 0) return SetPartition(0, {});
  std::vector<int> all(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) all[static_cast<size_t>(i - 1)] = i;
  return SetPartition(n, {std::move(all)});
}

int SetPartition::block_index_of(int element) const {
  if (element < 1 || element > n_) throw std::out_of_range("element out of range");
  return block_of_[static_cast<size_t>(element - 1)];
}

std::string SetPartition::str() const {
  std::string out = "{";
  for (size_t b = 0; b < blocks_.size(); ++b) {
    if (b > 0) out += ',';
    out += '(';
    for (size_t i = 0; i < blocks_[b].size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(blocks_[b][i]);
    }
    out += ')';
  }
  out += '}';
  return out;
}

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("expected integer in partition literal");
    return std::stoi(std::string(text.substr(start, pos - start)));
  }
};

}  // namespace

SetPartition SetPartition::parse(std::string_view text) {
  Cursor cur{text};
  if (!cur.consume('{')) throw std::invalid_argument("partition literal must start with '{'");
  std::vector<std::vector<int>> blocks;
  if (cur.peek() != '}') {
    do {
      if (!cur.consume('(')) throw std::invalid_argument("expected '(' in partition literal");
      std::vector<int> block;
      do {
        block.push_back(cur.integer());
      } while (cur.consume(','));
      if (!cur.consume(')')) throw std::invalid_argument("expected ')' in partition literal");
      blocks.push_back(std::move(block));
    } while (cur.consume(','));
  }
  if (!cur.consume('}')) throw std::invalid_argument("partition literal must end with '}'");
  cur.skip_ws();
  if (cur.pos != text.size()) {
    throw std::invalid_argument("trailing characters after partition literal");
  }
  int n = 0;
  for (const auto& block : blocks) {
    for (int e : block) n = std::max(n, e);
  }
  return SetPartition(n, std::move(blocks));
}

bool is_noncrossing(const SetPartition& p) {
  const std::vector<int>& block_of = p.restricted_growth_string();
  std::vector<int> seen(static_cast<size_t>(p.block_count()), 0);
  std::vector<char> open(static_cast<size_t>(p.block_count()), 0);
  std::vector<int> stack;
  for (int i = 1; i <= p.n(); ++i) {
    int b = block_of[static_cast<size_t>(i - 1)];
    if (seen[static_cast<size_t>(b)] == 0) {
      stack.push_back(b);
      open[static_cast<size_t>(b)] = 1;
    } else {
      if (!open[static_cast<size_t>(b)]) return false;
      // every block opened after b's last element must already be complete
      while (stack.back() != b) {
        int t = stack.back();
        if (seen[static_cast<size_t>(t)] <
            static_cast<int>(p.block(t).size())) {
          return false;
        }
        stack.pop_back();
        open[static_cast<size_t>(t)] = 0;
      }
    }
    ++seen[static_cast<size_t>(b)];
  }
  return true;
}

NcPartition::NcPartition(SetPartition p) : p_(std::move(p)) {
  if (!is_noncrossing(p_)) {
    throw std::invalid_argument("partition is crossing: " + p_.str());
  }
}

}  // namespace ncfree
