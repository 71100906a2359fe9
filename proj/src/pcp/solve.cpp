#include <algorithm>
#include <unordered_set>

#include "tagpcp/pcp.hpp"

namespace tagpcp::pcp {

namespace {

struct Node {
  bool top_ahead = false;
  std::string surplus;
  std::size_t parent = 0;  // index into the node store
  std::size_t pair = 0;
};

// Surplus after adding pair (r, v) to `n`; nullopt on mismatch.
std::optional<std::pair<bool, std::string>> extend(const Node& n, const std::string& r,
                                                   const std::string& v) {
  const std::string top = n.top_ahead ? n.surplus + r : r;
  const std::string bot = n.top_ahead ? v : n.surplus + v;
  if (top.size() <= bot.size() && bot.compare(0, top.size(), top) == 0)
    return std::make_pair(false, bot.substr(top.size()));
  if (top.compare(0, bot.size(), bot) == 0) return std::make_pair(true, top.substr(bot.size()));
  return std::nullopt;
}

}  // namespace

SolveResult bfs_solve(const Instance& inst, std::uint64_t max_depth, std::uint64_t max_nodes) {
  std::vector<std::string> r, v;
  std::uint64_t top_gain = 0, bot_gain = 0;  // most one pair can close on each side
  for (const auto& p : inst.pairs) {
    r.push_back(p.r.expand(1u << 20));
    v.push_back(p.v.expand(1u << 20));
    if (r.back().size() > v.back().size()) bot_gain = std::max<std::uint64_t>(bot_gain, r.back().size() - v.back().size());
    if (v.back().size() > r.back().size()) top_gain = std::max<std::uint64_t>(top_gain, v.back().size() - r.back().size());
  }
  SolveResult res;
  std::unordered_set<std::string> seen;
  std::vector<Node> store{Node{}};
  std::vector<std::size_t> frontier{0};
  bool depth_cut = false;
  for (std::uint64_t depth = 1; depth <= max_depth; ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t id : frontier) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        auto c = extend(store[id], r[i], v[i]);
        if (!c) continue;
        if (++res.nodes > max_nodes)
          fail(ErrorCode::Budget, "search exceeded " + std::to_string(max_nodes) + " nodes");
        auto& [top_ahead, surplus] = *c;
        if (surplus.empty()) {
          res.status = SolveStatus::Found;
          res.indices.push_back(i);
          for (std::size_t k = id; k != 0; k = store[k].parent) res.indices.push_back(store[k].pair);
          std::reverse(res.indices.begin(), res.indices.end());
          return res;
        }
        // the side that is ahead can never be caught up
        const std::uint64_t gain = top_ahead ? top_gain : bot_gain;
        if (gain == 0) continue;
        if (surplus.size() > gain * (max_depth - depth)) {
          depth_cut = true;
          continue;
        }
        std::string key = (top_ahead ? "t" : "b") + surplus;
        if (!seen.insert(std::move(key)).second) continue;
        store.push_back(Node{top_ahead, std::move(surplus), id, i});
        next.push_back(store.size() - 1);
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) {
      res.exhausted = !depth_cut;
      break;
    }
  }
  return res;
}

bool verify_solution(const Instance& inst, const std::vector<std::size_t>& indices) {
  if (indices.empty()) fail(ErrorCode::InvalidArgument, "a solution needs at least one index");
  Word top, bot;
  for (auto i : indices) {
    if (i >= inst.pairs.size())
      fail(ErrorCode::OutOfRange, "index " + std::to_string(i + 1) + " is not a pair");
    top.append(inst.pairs[i].r);
    bot.append(inst.pairs[i].v);
  }
  return top == bot;
}

}  // namespace tagpcp::pcp
