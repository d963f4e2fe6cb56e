// Copyright 2026 The rackconf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "rackconf/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>

namespace rackconf {

namespace {

struct Edge {
  int type;  // association kind, +3 for the reversed direction
  int to;
};

struct Graph {
  std::vector<int> cls;
  std::vector<std::vector<Edge>> adj;
  std::vector<std::tuple<int, int, int>> links;  // (kind, from, to)
};

Graph build_graph(std::span<const Fact> facts) {
  std::map<ObjectId, int> index;
  Graph g;
  std::vector<Fact> sorted(facts.begin(), facts.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& f : sorted) {
    if (f.kind != FactKind::IsA) continue;
    index.emplace(f.first, static_cast<int>(g.cls.size()));
    g.cls.push_back(static_cast<int>(f.cls));
  }
  g.adj.resize(g.cls.size());
  for (const auto& f : sorted) {
    if (f.kind == FactKind::IsA) continue;
    auto a = index.find(f.first);
    auto b = index.find(f.second);
    if (a == index.end() || b == index.end()) {
      throw Error{Errc::UnknownObject, "link references an unknown object"};
    }
    int k = static_cast<int>(f.assoc());
    g.adj[a->second].push_back({k, b->second});
    g.adj[b->second].push_back({k + 3, a->second});
    g.links.emplace_back(k, a->second, b->second);
  }
  return g;
}

// Replaces colours by the rank of (colour, sorted neighbour colours) until
// the number of classes stops growing.
std::vector<int> refine(const Graph& g, std::vector<int> colors) {
  const std::size_t n = colors.size();
  std::size_t classes = 0;
  std::vector<std::vector<int>> sig(n);
  std::vector<int> order(n);
  for (;;) {
    const int base = colors.empty() ? 1 : *std::max_element(colors.begin(), colors.end()) + 1;
    for (std::size_t v = 0; v < n; ++v) {
      auto& key = sig[v];
      key.clear();
      for (const auto& e : g.adj[v]) key.push_back(e.type * base + colors[e.to]);
      std::sort(key.begin(), key.end());
      key.insert(key.begin(), colors[v]);
    }
    for (std::size_t v = 0; v < n; ++v) order[v] = static_cast<int>(v);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    std::size_t rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++rank;
      colors[order[i]] = static_cast<int>(rank);
    }
    const std::size_t now = n == 0 ? 0 : rank + 1;
    if (now == classes) return colors;
    classes = now;
  }
}

bool twins(const Graph& g, int u, int v) {
  if (g.cls[u] != g.cls[v]) return false;
  auto key = [&](int x) {
    std::vector<std::pair<int, int>> k;
    for (const auto& e : g.adj[x]) k.emplace_back(e.type, e.to);
    std::sort(k.begin(), k.end());
    return k;
  };
  return key(u) == key(v);
}

std::vector<int> encode(const Graph& g, const std::vector<int>& colors) {
  // colors is discrete here: colour = new position.
  const std::size_t n = colors.size();
  std::vector<int> code;
  code.reserve(n + 3 * g.links.size());
  std::vector<int> cls_at(n);
  for (std::size_t v = 0; v < n; ++v) cls_at[colors[v]] = g.cls[v];
  code.insert(code.end(), cls_at.begin(), cls_at.end());
  std::vector<std::tuple<int, int, int>> links;
  links.reserve(g.links.size());
  for (auto [k, a, b] : g.links) links.emplace_back(k, colors[a], colors[b]);
  std::sort(links.begin(), links.end());
  for (auto [k, a, b] : links) {
    code.push_back(k);
    code.push_back(a);
    code.push_back(b);
  }
  return code;
}

void search(const Graph& g, const std::vector<int>& colors,
            std::optional<std::vector<int>>& best) {
  const int n = static_cast<int>(colors.size());
  std::vector<int> size(n, 0);
  for (int c : colors) ++size[c];
  int target = -1;
  for (int c = 0; c < n; ++c) {
    if (size[c] > 1) {
      target = c;
      break;
    }
  }
  if (target < 0) {
    auto code = encode(g, colors);
    if (!best || code < *best) best = std::move(code);
    return;
  }
  std::vector<int> tried;
  for (int v = 0; v < n; ++v) {
    if (colors[v] != target) continue;
    // Swapping twins is an automorphism, so their branches coincide.
    if (std::any_of(tried.begin(), tried.end(), [&](int u) { return twins(g, u, v); })) {
      continue;
    }
    tried.push_back(v);
    std::vector<int> next(colors.size());
    for (int u = 0; u < n; ++u) next[u] = 2 * colors[u] + 1;
    next[v] = 2 * colors[v];
    search(g, refine(g, std::move(next)), best);
  }
}

}  // namespace

std::string canonical_form(std::span<const Fact> facts) {
  Graph g = build_graph(facts);
  std::optional<std::vector<int>> best;
  search(g, refine(g, g.cls), best);
  std::string out;
  if (!best) return out;
  const std::size_t n = g.cls.size();
  for (std::size_t i = 0; i < best->size(); ++i) {
    if (i == n) out += '|';
    else if (i > 0) out += ',';
    out += std::to_string((*best)[i]);
  }
  return out;
}

std::string canonical_form(const ConfigurationState& state) {
  auto facts = state.facts();
  return canonical_form(facts);
}

bool isomorphic(const ConfigurationState& a, const ConfigurationState& b) {
  if (a.object_count() != b.object_count() || a.link_count() != b.link_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace rackconf
