// Copyright 2026 The cigames Authors
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

#include "cig/strategy.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cig {

int Strategy::eval(std::uint32_t world_bits, int variant) const {
  int v = 0;
  for (std::size_t j = 0; j < deps.size(); ++j)
    v |= ((world_bits >> deps[j]) & 1u) << j;
  int slice = 0;
  if (!variant_ids.empty()) {
    for (std::size_t s = 0; s < variant_ids.size(); ++s)
      if (variant_ids[s] == variant) { slice = (int)s; break; }
  }
  return table[slice * cells_per_slice() + v];
}

std::int64_t Strategy::canonical_index(int choice_count) const {
  std::int64_t idx = 0;
  for (std::uint8_t t : table) idx = idx * choice_count + t;
  return idx;
}

Strategy Strategy::simplified() const {
  Strategy out;
  out.player = player;
  // Find dependencies the table actually reads.
  std::vector<int> live;
  const int cells = cells_per_slice();
  for (std::size_t j = 0; j < deps.size(); ++j) {
    bool reads = false;
    for (int s = 0; s < slices() && !reads; ++s)
      for (int v = 0; v < cells && !reads; ++v)
        if (table[s * cells + v] != table[s * cells + (v ^ (1 << j))]) reads = true;
    if (reads) live.push_back((int)j);
  }
  bool variant_live = false;
  for (int s = 1; s < slices() && !variant_live; ++s)
    for (int v = 0; v < cells && !variant_live; ++v)
      if (table[s * cells + v] != table[v]) variant_live = true;

  for (int j : live) out.deps.push_back(deps[j]);
  if (variant_live) out.variant_ids = variant_ids;
  const int out_cells = 1 << (int)live.size();
  const int out_slices = variant_live ? slices() : 1;
  out.table.resize(out_cells * out_slices);
  for (int s = 0; s < out_slices; ++s)
    for (int v = 0; v < out_cells; ++v) {
      int full = 0;
      for (std::size_t j = 0; j < live.size(); ++j)
        full |= ((v >> j) & 1) << live[j];
      out.table[s * out_cells + v] = table[s * cells + full];
    }
  return out;
}

bool operator==(const Strategy& a, const Strategy& b) {
  return a.player == b.player && a.deps == b.deps &&
         a.variant_ids == b.variant_ids && a.table == b.table;
}

bool same_function(const Strategy& a, const Strategy& b) {
  if (a.player != b.player) return false;
  std::vector<int> all = a.deps;
  for (int d : b.deps)
    if (std::find(all.begin(), all.end(), d) == all.end()) all.push_back(d);
  std::set<int> vars(a.variant_ids.begin(), a.variant_ids.end());
  vars.insert(b.variant_ids.begin(), b.variant_ids.end());
  std::vector<int> vlist(vars.begin(), vars.end());
  if (vlist.empty()) vlist.push_back(0);
  for (int variant : vlist)
    for (std::uint32_t m = 0; m < (1u << all.size()); ++m) {
      std::uint32_t bits = 0;
      for (std::size_t j = 0; j < all.size(); ++j)
        bits |= ((m >> j) & 1u) << all[j];
      if (a.eval(bits, variant) != b.eval(bits, variant)) return false;
    }
  return true;
}

std::int64_t strategy_count(int choice_count, int bit_count) {
  std::int64_t n = 1;
  std::int64_t cells = std::int64_t{1} << bit_count;
  for (std::int64_t i = 0; i < cells; ++i) {
    if (n > (std::int64_t)4e18 / choice_count)
      throw Error(ErrorKind::budget_exceeded, "strategy count overflows");
    n *= choice_count;
  }
  return n;
}

std::vector<Strategy> enumerate_strategies(int choice_count, const std::vector<int>& deps,
                                           const std::vector<int>& variant_ids, int player,
                                           std::int64_t budget) {
  const int slices = variant_ids.empty() ? 1 : (int)variant_ids.size();
  const int cells = (1 << (int)deps.size()) * slices;
  std::int64_t n = 1;
  for (int i = 0; i < cells; ++i) {
    n *= choice_count;
    if (n > budget)
      throw Error(ErrorKind::budget_exceeded,
                  "strategy enumeration needs " + std::to_string(n) +
                      "+ entries, budget " + std::to_string(budget));
  }
  std::vector<Strategy> out;
  out.reserve(n);
  Strategy s;
  s.player = player;
  s.deps = deps;
  s.variant_ids = variant_ids;
  s.table.assign(cells, 0);
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t x = i;
    for (int j = cells - 1; j >= 0; --j) { s.table[j] = x % choice_count; x /= choice_count; }
    out.push_back(s);
  }
  return out;
}

namespace {

// Longest-match tokenizer over the game's bit names and one player's labels.
struct Tok {
  enum Type { label, bit, question, colon, end } type;
  int id;       // choice index or bit index
  std::size_t pos;
};

struct Lexer {
  const std::string& text;
  const Game& game;
  int player;
  std::size_t pos = 0;

  Tok next() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    if (pos >= text.size()) return {Tok::end, -1, pos};
    char c = text[pos];
    if (c == '?') return {Tok::question, -1, pos++};
    if (c == ':') return {Tok::colon, -1, pos++};
    // Longest match across labels and bit names.
    int best_label = -1, best_bit = -1;
    std::size_t best_len = 0;
    const auto& labels = game.players[player].choices;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (text.compare(pos, labels[i].size(), labels[i]) == 0 && labels[i].size() > best_len) {
        best_len = labels[i].size(); best_label = (int)i; best_bit = -1;
      }
    for (std::size_t i = 0; i < game.bits.size(); ++i) {
      const std::string& bn = game.bits[i].name;
      if (text.compare(pos, bn.size(), bn) == 0 && bn.size() > best_len) {
        best_len = bn.size(); best_bit = (int)i; best_label = -1;
      } else if (text.compare(pos, bn.size(), bn) == 0 && bn.size() == best_len && best_len > 0) {
        // A name that is both a label and a bit is disambiguated by what
        // follows: a '?' means it was a bit. Peek.
        std::size_t p = pos + bn.size();
        while (p < text.size() && std::isspace((unsigned char)text[p])) ++p;
        if (p < text.size() && text[p] == '?') { best_bit = (int)i; best_label = -1; }
      }
    }
    if (best_len == 0)
      throw Error(ErrorKind::parse, "unknown token at position " + std::to_string(pos) +
                                        " in '" + text + "'");
    Tok t{best_label >= 0 ? Tok::label : Tok::bit,
          best_label >= 0 ? best_label : best_bit, pos};
    pos += best_len;
    return t;
  }
};

struct Parser {
  Lexer lex;
  Tok cur;

  void advance() { cur = lex.next(); }

  // Decision-tree node evaluation into a flat table over `deps`.
  // Returns the choice for every valuation by recursive descent.
  void parse_expr(std::vector<int>& deps, std::vector<std::pair<std::uint32_t, std::uint32_t>>& nodes,
                  std::vector<int>& out_choice, std::uint32_t fixed_mask, std::uint32_t fixed_val) {
    if (cur.type == Tok::label) {
      nodes.push_back({fixed_mask, fixed_val});
      out_choice.push_back(cur.id);
      advance();
      return;
    }
    if (cur.type != Tok::bit)
      throw Error(ErrorKind::parse, "expected label or bit at position " +
                                        std::to_string(cur.pos));
    int bit = cur.id;
    if (std::find(deps.begin(), deps.end(), bit) == deps.end()) deps.push_back(bit);
    advance();
    if (cur.type != Tok::question)
      throw Error(ErrorKind::parse, "expected '?' at position " + std::to_string(cur.pos));
    advance();
    parse_expr(deps, nodes, out_choice, fixed_mask | (1u << bit), fixed_val | (1u << bit));
    if (cur.type != Tok::colon)
      throw Error(ErrorKind::parse, "expected ':' at position " + std::to_string(cur.pos));
    advance();
    parse_expr(deps, nodes, out_choice, fixed_mask | (1u << bit), fixed_val);
  }
};

}  // namespace

Strategy parse_strategy(const std::string& text, const Game& game, int player) {
  Parser p{Lexer{text, game, player}, {}};
  p.advance();
  std::vector<int> deps;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> leaves;  // (mask over bits, values)
  std::vector<int> leaf_choice;
  p.parse_expr(deps, leaves, leaf_choice, 0, 0);
  if (p.cur.type != Tok::end)
    throw Error(ErrorKind::parse, "trailing input at position " + std::to_string(p.cur.pos));

  std::sort(deps.begin(), deps.end(), [&](int a, int b) {
    return game.bits[a].name < game.bits[b].name;
  });
  Strategy s;
  s.player = player;
  s.deps = deps;
  s.table.assign(1 << deps.size(), 255);
  for (std::uint32_t v = 0; v < (1u << deps.size()); ++v) {
    std::uint32_t bits = 0;
    for (std::size_t j = 0; j < deps.size(); ++j)
      bits |= ((v >> j) & 1u) << deps[j];
    // First leaf whose fixed bits match wins; the tree shape guarantees
    // exactly one matches.
    for (std::size_t l = 0; l < leaves.size(); ++l)
      if ((bits & leaves[l].first) == leaves[l].second) { s.table[v] = leaf_choice[l]; break; }
  }
  return s.simplified();
}

namespace {

std::string format_rec(const Strategy& s, const Game& game, const std::vector<int>& deps,
                       const std::vector<std::uint8_t>& table) {
  bool constant = true;
  for (std::uint8_t t : table)
    if (t != table[0]) { constant = false; break; }
  if (constant) return game.players[s.player].choices[table[0]];
  // Split on the last (highest-order) dependency, which reproduces the
  // nested b?M:a?T:B style.
  int j = (int)deps.size() - 1;
  int half = 1 << j;
  std::vector<std::uint8_t> lo(table.begin(), table.begin() + half);
  std::vector<std::uint8_t> hi(table.begin() + half, table.begin() + 2 * half);
  std::vector<int> rest(deps.begin(), deps.end() - 1);
  return game.bits[deps[j]].name + "?" + format_rec(s, game, rest, hi) + ":" +
         format_rec(s, game, rest, lo);
}

}  // namespace

std::string format_strategy(const Strategy& s, const Game& game) {
  Strategy m = s.simplified();
  if (m.variant_ids.empty())
    return format_rec(m, game, m.deps, m.table);
  std::string out = "{";
  const int cells = m.cells_per_slice();
  for (std::size_t i = 0; i < m.variant_ids.size(); ++i) {
    if (i) out += "; ";
    std::vector<std::uint8_t> slice(m.table.begin() + i * cells,
                                    m.table.begin() + (i + 1) * cells);
    out += game.variants[m.variant_ids[i]].name + ": " +
           format_rec(m, game, m.deps, slice);
  }
  return out + "}";
}

std::vector<Strategy> parse_profile(const std::string& text, const Game& game) {
  std::string body = text;
  auto strip = [&](const std::string& open, const std::string& close) {
    if (body.size() >= open.size() + close.size() &&
        body.compare(0, open.size(), open) == 0 &&
        body.compare(body.size() - close.size(), close.size(), close) == 0)
      body = body.substr(open.size(), body.size() - open.size() - close.size());
  };
  // Trim whitespace, then the angle wrapper (unicode or ASCII).
  while (!body.empty() && std::isspace((unsigned char)body.front())) body.erase(body.begin());
  while (!body.empty() && std::isspace((unsigned char)body.back())) body.pop_back();
  strip("⟨", "⟩");
  strip("<", ">");
  std::vector<std::string> parts;
  std::string curpart;
  for (char c : body) {
    if (c == ',') { parts.push_back(curpart); curpart.clear(); }
    else curpart += c;
  }
  parts.push_back(curpart);
  if (parts.size() != game.players.size())
    throw Error(ErrorKind::parse, "profile has " + std::to_string(parts.size()) +
                                      " strategies for " + std::to_string(game.players.size()) +
                                      " players");
  std::vector<Strategy> out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    out.push_back(parse_strategy(parts[i], game, (int)i));
  return out;
}

std::string format_profile(const std::vector<Strategy>& profile, const Game& game) {
  std::string out = "⟨";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) out += ",";
    out += format_strategy(profile[i], game);
  }
  return out + "⟩";
}

namespace {

// Signature of a strategy from one observer's viewpoint: per valuation of
// the observer-known dependencies, the sorted multiset of choices over the
// unobserved dimensions (unknown bits, and variant slices if unobserved).
std::vector<std::vector<int>> observer_signature(const Strategy& s, std::uint32_t observer_known,
                                                 bool observer_knows_variant) {
  std::vector<int> known_deps, unknown_deps;
  for (std::size_t j = 0; j < s.deps.size(); ++j)
    ((observer_known >> s.deps[j]) & 1u ? known_deps : unknown_deps).push_back((int)j);
  const int slices = s.slices();
  const bool slice_known = observer_knows_variant || slices == 1;
  const int known_n = 1 << known_deps.size();
  const int unknown_n = 1 << unknown_deps.size();
  std::vector<std::vector<int>> sig;
  for (int sl = 0; sl < (slice_known ? slices : 1); ++sl)
    for (int kv = 0; kv < known_n; ++kv) {
      std::vector<int> ms;
      for (int sl2 = (slice_known ? sl : 0); sl2 < (slice_known ? sl + 1 : slices); ++sl2)
        for (int uv = 0; uv < unknown_n; ++uv) {
          int v = 0;
          for (std::size_t j = 0; j < known_deps.size(); ++j)
            v |= ((kv >> j) & 1) << known_deps[j];
          for (std::size_t j = 0; j < unknown_deps.size(); ++j)
            v |= ((uv >> j) & 1) << unknown_deps[j];
          ms.push_back(s.table[sl2 * s.cells_per_slice() + v]);
        }
      std::sort(ms.begin(), ms.end());
      sig.push_back(std::move(ms));
    }
  return sig;
}

}  // namespace

bool observationally_equivalent(const Strategy& a, const Strategy& b,
                                std::uint32_t observer_known, bool observer_knows_variant) {
  if (a.player != b.player) return false;
  // Align both strategies over the union of dependencies and variants so the
  // signatures are comparable.
  std::vector<int> all = a.deps;
  for (int d : b.deps)
    if (std::find(all.begin(), all.end(), d) == all.end()) all.push_back(d);
  std::sort(all.begin(), all.end());
  std::set<int> vs(a.variant_ids.begin(), a.variant_ids.end());
  vs.insert(b.variant_ids.begin(), b.variant_ids.end());
  std::vector<int> vlist(vs.begin(), vs.end());
  auto expand = [&](const Strategy& s) {
    Strategy e;
    e.player = s.player;
    e.deps = all;
    e.variant_ids = vlist;
    const int cells = 1 << all.size();
    const int slices = vlist.empty() ? 1 : (int)vlist.size();
    e.table.resize(cells * slices);
    for (int sl = 0; sl < slices; ++sl)
      for (int v = 0; v < cells; ++v) {
        std::uint32_t bits = 0;
        for (std::size_t j = 0; j < all.size(); ++j)
          bits |= ((v >> j) & 1u) << all[j];
        e.table[sl * cells + v] = s.eval(bits, vlist.empty() ? 0 : vlist[sl]);
      }
    return e;
  };
  Strategy ea = expand(a), eb = expand(b);
  return observer_signature(ea, observer_known, observer_knows_variant) ==
         observer_signature(eb, observer_known, observer_knows_variant);
}

EquivalenceClasses equivalence_classes(const std::vector<Strategy>& strategies,
                                       std::uint32_t observer_known,
                                       bool observer_knows_variant, int choice_count) {
  EquivalenceClasses out;
  out.class_of.assign(strategies.size(), -1);
  // Align everything over the union of dependencies and variants so the
  // signatures are comparable across inputs with different dep lists.
  std::vector<int> all;
  std::set<int> vs;
  for (const Strategy& s : strategies) {
    for (int d : s.deps)
      if (std::find(all.begin(), all.end(), d) == all.end()) all.push_back(d);
    vs.insert(s.variant_ids.begin(), s.variant_ids.end());
  }
  std::sort(all.begin(), all.end());
  std::vector<int> vlist(vs.begin(), vs.end());
  auto expand = [&](const Strategy& s) {
    Strategy e;
    e.player = s.player;
    e.deps = all;
    e.variant_ids = vlist;
    const int cells = 1 << all.size();
    const int slices = vlist.empty() ? 1 : (int)vlist.size();
    e.table.resize(cells * slices);
    for (int sl = 0; sl < slices; ++sl)
      for (int v = 0; v < cells; ++v) {
        std::uint32_t bits = 0;
        for (std::size_t j = 0; j < all.size(); ++j)
          bits |= ((v >> j) & 1u) << all[j];
        e.table[sl * cells + v] = s.eval(bits, vlist.empty() ? 0 : vlist[sl]);
      }
    return e;
  };
  std::vector<Strategy> expanded;
  expanded.reserve(strategies.size());
  for (const Strategy& s : strategies) expanded.push_back(expand(s));
  std::map<std::vector<std::vector<int>>, int> seen;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    auto sig = observer_signature(expanded[i], observer_known, observer_knows_variant);
    auto it = seen.find(sig);
    int cls;
    if (it == seen.end()) {
      cls = (int)out.members.size();
      seen.emplace(std::move(sig), cls);
      out.members.emplace_back();
      out.representative.push_back((int)i);
    } else {
      cls = it->second;
      if (expanded[i].canonical_index(choice_count) <
          expanded[out.representative[cls]].canonical_index(choice_count))
        out.representative[cls] = (int)i;
    }
    out.members[cls].push_back((int)i);
    out.class_of[i] = cls;
  }
  return out;
}

}  // namespace cig
