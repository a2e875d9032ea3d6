#include "branchcov/exhaustion.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "branchcov/errors.hpp"

namespace branchcov {

namespace {

std::string circle_name(std::size_t level, std::size_t index) {
  return "c" + std::to_string(level) + "." + std::to_string(index);
}

std::string piece_name(std::size_t level, std::size_t index) {
  return "p" + std::to_string(level) + "." + std::to_string(index);
}

Piece disk() { return Piece{piece_name(1, 0), 1, 0, {}, {circle_name(1, 0)}, true}; }

Piece annulus(std::size_t j, std::size_t index, const std::string& inner, unsigned genus) {
  return Piece{piece_name(j, index), j, genus, {inner}, {circle_name(j, index)}, true};
}

class AnnulusChain final : public ExhaustionSupplier {
 public:
  explicit AnnulusChain(unsigned genus) : genus_(genus) {}
  std::vector<Piece> level(std::size_t j, const std::vector<std::string>& boundary) const override {
    if (j == 1) return {disk()};
    std::vector<Piece> out;
    for (std::size_t i = 0; i < boundary.size(); ++i) out.push_back(annulus(j, i, boundary[i], genus_));
    return out;
  }
  EndCertificate certificate() const override { return {EndCertificate::Kind::finite, 1}; }
  std::size_t join_horizon() const override { return 0; }
  std::string family() const override { return "annulus_chain"; }
  std::map<std::string, long> parameters() const override { return {{"genus", genus_}}; }

 private:
  unsigned genus_;
};

// Disk, then one genus-0 piece with k outer circles, then annulus chains.
class KEnded final : public ExhaustionSupplier {
 public:
  KEnded(unsigned ends, unsigned genus) : ends_(ends), genus_(genus) {}
  std::vector<Piece> level(std::size_t j, const std::vector<std::string>& boundary) const override {
    if (j == 1) return {disk()};
    if (j == 2) {
      Piece star{piece_name(2, 0), 2, 0, {boundary.at(0)}, {}, true};
      for (unsigned e = 0; e < ends_; ++e) star.outer.push_back(circle_name(2, e));
      return {star};
    }
    std::vector<Piece> out;
    for (std::size_t i = 0; i < boundary.size(); ++i) out.push_back(annulus(j, i, boundary[i], genus_));
    return out;
  }
  EndCertificate certificate() const override { return {EndCertificate::Kind::finite, 2}; }
  std::size_t join_horizon() const override { return 0; }
  std::string family() const override { return "k_ended"; }
  std::map<std::string, long> parameters() const override { return {{"ends", ends_}, {"genus", genus_}}; }

 private:
  unsigned ends_;
  unsigned genus_;
};

// pants on every circle (binary tree) or on the first circle only (ladder).
class Branching final : public ExhaustionSupplier {
 public:
  explicit Branching(bool every_circle) : every_(every_circle) {}
  std::vector<Piece> level(std::size_t j, const std::vector<std::string>& boundary) const override {
    if (j == 1) return {disk()};
    std::vector<Piece> out;
    std::size_t next = 0;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      Piece p{piece_name(j, i), j, 0, {boundary[i]}, {circle_name(j, next++)}, true};
      if (every_ || i == 0) p.outer.push_back(circle_name(j, next++));
      out.push_back(std::move(p));
    }
    return out;
  }
  EndCertificate certificate() const override { return {EndCertificate::Kind::infinite, 0}; }
  std::size_t join_horizon() const override { return 0; }
  std::string family() const override { return every_ ? "binary_tree" : "pants_ladder"; }
  std::map<std::string, long> parameters() const override { return {}; }

 private:
  bool every_;
};

long param(const std::map<std::string, long>& p, const std::string& key, long fallback, long lo, long hi) {
  auto it = p.find(key);
  const long v = it == p.end() ? fallback : it->second;
  if (v < lo || v > hi) {
    throw InvalidInput("parameter '" + key + "' must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return v;
}

void check_known(const std::map<std::string, long>& p, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : p) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw InvalidInput("unknown parameter '" + key + "'");
    }
  }
}

}  // namespace

std::shared_ptr<const ExhaustionSupplier> make_supplier(const std::string& family,
                                                        const std::map<std::string, long>& p) {
  if (family == "plane") {
    check_known(p, {});
    return std::make_shared<AnnulusChain>(0);
  }
  if (family == "annulus_chain") {
    check_known(p, {"genus"});
    return std::make_shared<AnnulusChain>(static_cast<unsigned>(param(p, "genus", 0, 0, 1000)));
  }
  if (family == "k_ended") {
    check_known(p, {"ends", "genus"});
    return std::make_shared<KEnded>(static_cast<unsigned>(param(p, "ends", 2, 1, 1000)),
                                    static_cast<unsigned>(param(p, "genus", 0, 0, 1000)));
  }
  if (family == "binary_tree" || family == "pants_ladder") {
    check_known(p, {});
    return std::make_shared<Branching>(family == "binary_tree");
  }
  throw InvalidInput("unknown exhaustion family '" + family + "'");
}

std::size_t ExhaustionGraph::depth() const noexcept {
  std::size_t d = 0;
  for (const Piece& p : pieces) d = std::max(d, p.level);
  return d;
}

bool operator==(const ExhaustionGraph& a, const ExhaustionGraph& b) {
  if (a.pieces != b.pieces) return false;
  if (!a.supplier || !b.supplier) return !a.supplier && !b.supplier;
  return a.supplier->family() == b.supplier->family() && a.supplier->parameters() == b.supplier->parameters();
}

ExhaustionGraph materialize(const ExhaustionGraph& g, std::size_t depth) {
  ExhaustionGraph out = g;
  std::size_t have = g.depth();
  if (have >= depth) {
    std::erase_if(out.pieces, [&](const Piece& p) { return p.level > depth; });
    return out;
  }
  if (!g.supplier) {
    throw InvalidInput("graph has depth " + std::to_string(have) + " and no supplier to reach depth " +
                       std::to_string(depth));
  }
  for (std::size_t j = have + 1; j <= depth; ++j) {
    std::vector<std::string> boundary;
    for (const Piece& p : out.pieces) {
      if (p.level == j - 1) boundary.insert(boundary.end(), p.outer.begin(), p.outer.end());
    }
    for (Piece& p : g.supplier->level(j, boundary)) {
      p.level = j;
      out.pieces.push_back(std::move(p));
    }
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

ValidationReport validate_exhaustion(const ExhaustionGraph& g) {
  ValidationReport report;
  auto violate = [&](std::string code, std::optional<std::size_t> index, std::string message) {
    report.violations.push_back({std::move(code), index, std::move(message)});
  };
  if (g.pieces.empty()) {
    violate("empty", std::nullopt, "exhaustion has no pieces");
    return report;
  }

  std::unordered_set<std::string> ids;
  std::unordered_map<std::string, std::size_t> circle_owner;
  for (std::size_t i = 0; i < g.pieces.size(); ++i) {
    const Piece& p = g.pieces[i];
    if (!ids.insert(p.id).second) violate("duplicate_piece", i, "piece id '" + p.id + "' repeats");
    if (p.level == 0) violate("level", i, "levels start at 1");
    if (!p.orientable) violate("nonorientable", i, "piece '" + p.id + "' is nonorientable");
    if (p.outer.empty()) {
      violate("precompact_complement", i, "piece '" + p.id + "' has no outer boundary");
    }
    if (p.level == 1 && !p.inner.empty()) violate("level1_inner", i, "level-1 piece '" + p.id + "' has inner boundary");
    if (p.level > 1 && p.inner.empty()) violate("no_inner", i, "piece '" + p.id + "' is not attached to level " + std::to_string(p.level - 1));
    for (const std::string& c : p.outer) {
      if (!circle_owner.emplace(c, i).second) violate("duplicate_circle", i, "circle '" + c + "' repeats");
    }
  }
  if (!report.ok()) return report;

  const std::size_t depth = g.depth();
  std::vector<std::size_t> per_level(depth + 1, 0);
  for (const Piece& p : g.pieces) ++per_level[p.level];
  for (std::size_t j = 1; j <= depth; ++j) {
    if (per_level[j] == 0) violate("level_gap", std::nullopt, "level " + std::to_string(j) + " is empty");
  }

  std::unordered_map<std::string, std::size_t> referenced;
  for (std::size_t i = 0; i < g.pieces.size(); ++i) {
    const Piece& p = g.pieces[i];
    for (const std::string& c : p.inner) {
      auto it = circle_owner.find(c);
      if (it == circle_owner.end()) {
        violate("dangling_reference", i, "piece '" + p.id + "' references unknown circle '" + c + "'");
      } else if (g.pieces[it->second].level + 1 != p.level) {
        violate("level_mismatch", i, "piece '" + p.id + "' references circle '" + c + "' outside the previous level");
      } else if (!referenced.emplace(c, i).second) {
        violate("double_reference", i, "circle '" + c + "' is glued twice");
      }
    }
  }
  for (const auto& [c, owner] : circle_owner) {
    if (g.pieces[owner].level < depth && !referenced.count(c)) {
      violate("unglued_circle", owner, "circle '" + c + "' of piece '" + g.pieces[owner].id + "' is not glued to the next level");
    }
  }
  if (!report.ok()) return report;

  // E_j connected for every j: add levels one at a time.
  std::vector<std::size_t> order(g.pieces.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.pieces[a].level < g.pieces[b].level; });
  UnionFind uf(g.pieces.size());
  std::size_t components = 0, k = 0;
  for (std::size_t j = 1; j <= depth; ++j) {
    for (; k < order.size() && g.pieces[order[k]].level == j; ++k) {
      const std::size_t i = order[k];
      ++components;
      for (const std::string& c : g.pieces[i].inner) {
        const std::size_t o = circle_owner.at(c);
        if (uf.find(o) != uf.find(i)) {
          uf.unite(o, i);
          --components;
        }
      }
    }
    if (components != 1) {
      violate("disconnected", std::nullopt, "E_" + std::to_string(j) + " has " + std::to_string(components) + " components");
      break;
    }
  }
  return report;
}

long truncation_euler_characteristic(const ExhaustionGraph& g) {
  long chi = 0;
  for (const Piece& p : g.pieces) chi += p.euler_characteristic();
  return chi;
}

std::size_t depth_circle_count(const ExhaustionGraph& g) {
  const std::size_t depth = g.depth();
  std::size_t n = 0;
  for (const Piece& p : g.pieces) {
    if (p.level == depth) n += p.outer.size();
  }
  return n;
}

std::size_t first_unnormalized_level(const ExhaustionGraph& g, std::size_t through) {
  std::size_t bad = 0;
  auto flag = [&](std::size_t level) { bad = bad == 0 ? level : std::min(bad, level); };
  std::size_t level1 = 0;
  for (const Piece& p : g.pieces) {
    if (p.level > through) continue;
    if (!p.orientable) flag(p.level);
    if (p.level == 1) {
      ++level1;
      if (p.genus != 0 || !p.inner.empty() || p.outer.size() != 1) flag(1);
    } else if (p.inner.size() != 1 || p.outer.empty() || p.outer.size() > 2) {
      flag(p.level);
    }
  }
  if (level1 != 1 && through >= 1) flag(1);
  return bad;
}

namespace {

// Mutable working copy for the moves. Pieces are never erased in place;
// merged-away pieces are marked dead and dropped at the end.
class Normalizer {
 public:
  explicit Normalizer(const ExhaustionGraph& g) {
    for (const Piece& p : g.pieces) {
      used_ids_.insert(p.id);
      for (const auto& c : p.outer) used_ids_.insert(c);
      add(p);
    }
    origin_.assign(g.depth() + 1, 0);
    for (std::size_t j = 1; j < origin_.size(); ++j) origin_[j] = j;
  }

  void run() {
    ensure_disk();
    for (std::size_t j = 1; j <= depth(); ++j) {
      while (join_once(j)) {
      }
      while (split_once(j)) {
      }
    }
  }

  std::vector<Piece> result() const {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (alive_[i]) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (pieces_[a].level != pieces_[b].level) return pieces_[a].level < pieces_[b].level;
      return seq_[a] < seq_[b];
    });
    std::vector<Piece> out;
    for (std::size_t i : order) out.push_back(pieces_[i]);
    return out;
  }

  const std::vector<std::size_t>& origin() const { return origin_; }

 private:
  std::vector<Piece> pieces_;
  std::vector<bool> alive_;
  std::vector<double> seq_;  // ordering key within a level
  std::vector<std::size_t> origin_;
  std::unordered_set<std::string> used_ids_;
  std::size_t fresh_counter_ = 0;

  std::size_t depth() const { return origin_.size() - 1; }

  std::size_t add(Piece p, std::optional<double> seq = std::nullopt) {
    pieces_.push_back(std::move(p));
    alive_.push_back(true);
    seq_.push_back(seq ? *seq : static_cast<double>(pieces_.size()));
    return pieces_.size() - 1;
  }

  std::string fresh(const char* prefix) {
    std::string name;
    do {
      name = std::string(prefix) + std::to_string(++fresh_counter_);
    } while (used_ids_.count(name));
    used_ids_.insert(name);
    return name;
  }

  void shift_levels_above(std::size_t level) {
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (alive_[i] && pieces_[i].level > level) ++pieces_[i].level;
    }
    origin_.insert(origin_.begin() + static_cast<std::ptrdiff_t>(level + 1), origin_[std::max<std::size_t>(level, 1)]);
  }

  void ensure_disk() {
    std::size_t first = pieces_.size();
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (alive_[i] && pieces_[i].level == 1) first = i;
    }
    const Piece& p = pieces_[first];
    if (p.genus == 0 && p.inner.empty() && p.outer.size() == 1) return;
    shift_levels_above(0);
    const std::string circle = fresh("~c");
    pieces_[first].inner = {circle};
    add(Piece{fresh("~p"), 1, 0, {}, {circle}, true}, 0.0);
  }

  // Circle ownership for the current state.
  struct Index {
    std::unordered_map<std::string, std::size_t> owner;  // outer circle -> piece
    std::unordered_map<std::string, std::size_t> child;  // outer circle -> piece gluing it as inner
  };

  Index index() const {
    Index ix;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (!alive_[i]) continue;
      for (const auto& c : pieces_[i].outer) ix.owner[c] = i;
      for (const auto& c : pieces_[i].inner) ix.child[c] = i;
    }
    return ix;
  }

  // Move (1) at level j: join the first pair of level-j outer circles lying
  // in one component of the levels beyond j.
  bool join_once(std::size_t j) {
    if (j >= depth()) return false;
    const Index ix = index();
    UnionFind uf(pieces_.size());
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (!alive_[i] || pieces_[i].level <= j + 1) continue;
      for (const auto& c : pieces_[i].inner) uf.unite(ix.owner.at(c), i);
    }
    std::unordered_map<std::size_t, std::string> seen;  // component -> first circle
    for (std::size_t i : level_pieces(j)) {
      for (const auto& c : pieces_[i].outer) {
        const std::size_t comp = uf.find(ix.child.at(c));
        auto [it, inserted] = seen.emplace(comp, c);
        if (!inserted) {
          join(j, it->second, c);
          return true;
        }
      }
    }
    return false;
  }

  std::vector<std::size_t> level_pieces(std::size_t j) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (alive_[i] && pieces_[i].level == j) out.push_back(i);
    }
    std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return seq_[a] < seq_[b]; });
    return out;
  }

  // Shortest path between two pieces through levels >= min_level, moving
  // along gluings; neighbours visited in order of piece id.
  std::vector<std::size_t> route(std::size_t from, std::size_t to, std::size_t min_level, const Index& ix) const {
    std::vector<std::vector<std::size_t>> adj(pieces_.size());
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (!alive_[i] || pieces_[i].level <= min_level) continue;
      for (const auto& c : pieces_[i].inner) {
        const std::size_t o = ix.owner.at(c);
        if (pieces_[o].level < min_level) continue;
        adj[i].push_back(o);
        adj[o].push_back(i);
      }
    }
    for (auto& a : adj) {
      std::sort(a.begin(), a.end(), [&](std::size_t x, std::size_t y) { return pieces_[x].id < pieces_[y].id; });
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    std::vector<std::size_t> prev(pieces_.size(), pieces_.size());
    std::deque<std::size_t> queue{from};
    prev[from] = from;
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      if (x == to) break;
      for (std::size_t y : adj[x]) {
        if (prev[y] == pieces_.size()) {
          prev[y] = x;
          queue.push_back(y);
        }
      }
    }
    if (prev[to] == pieces_.size()) throw InvalidInput("internal: no tube route between joined circles");
    std::vector<std::size_t> path{to};
    while (path.back() != from) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  // A circle of `upper` glued as inner boundary of `lower` (one level deeper).
  std::string shared_circle(std::size_t upper, std::size_t lower) const {
    for (const auto& c : pieces_[upper].outer) {
      const auto& in = pieces_[lower].inner;
      if (std::find(in.begin(), in.end(), c) != in.end()) return c;
    }
    throw InvalidInput("internal: route step without a shared circle");
  }

  static void replace_circle(std::vector<std::string>& list, const std::string& c1, const std::string& c2,
                             const std::string& merged) {
    auto it = std::find(list.begin(), list.end(), c1);
    *it = merged;
    list.erase(std::find(list.begin(), list.end(), c2));
  }

  // Tube joining outer circles c1, c2 of level ell through the levels beyond.
  void join(std::size_t ell, const std::string& c1, const std::string& c2) {
    for (;;) {
      const Index ix = index();
      const std::size_t q1 = ix.child.at(c1), q2 = ix.child.at(c2);
      if (q1 == q2) break;
      const auto path = route(q1, q2, ell + 1, ix);
      std::size_t t = 1;
      while (pieces_[path[t]].level != ell + 1) ++t;
      const std::string d1 = shared_circle(path[0], path[1]);
      const std::string d2 = shared_circle(path[t], path[t - 1]);
      join(ell + 1, d1, d2);
    }
    const Index ix = index();
    const std::size_t q = ix.child.at(c1);
    const std::string merged = fresh("~c");
    // Cutting the complement piece along the tube's arc merges its two entry circles.
    replace_circle(pieces_[q].inner, c1, c2, merged);

    const std::size_t p1 = ix.owner.at(c1), p2 = ix.owner.at(c2);
    if (p1 == p2) {
      ++pieces_[p1].genus;
      replace_circle(pieces_[p1].outer, c1, c2, merged);
      return;
    }
    const std::size_t keep = seq_[p1] <= seq_[p2] ? p1 : p2;
    const std::size_t gone = keep == p1 ? p2 : p1;
    Piece& k = pieces_[keep];
    Piece& other = pieces_[gone];
    k.genus += other.genus;
    k.orientable = k.orientable && other.orientable;
    k.inner.insert(k.inner.end(), other.inner.begin(), other.inner.end());
    k.outer.insert(k.outer.end(), other.outer.begin(), other.outer.end());
    replace_circle(k.outer, c1, c2, merged);
    alive_[gone] = false;
  }

  // Move (2) at level j: peel a pants carrying the last two outer circles off
  // the first piece with three or more, onto a new level j+1 of collars.
  bool split_once(std::size_t j) {
    const auto level = level_pieces(j);
    auto it = std::find_if(level.begin(), level.end(), [&](std::size_t i) { return pieces_[i].outer.size() >= 3; });
    if (it == level.end()) return false;
    const std::size_t target = *it;

    shift_levels_above(j);
    const Index ix = index();
    Piece& p = pieces_[target];
    const std::string carried_a = p.outer[p.outer.size() - 2];
    const std::string carried_b = p.outer.back();
    p.outer.pop_back();
    p.outer.pop_back();
    const std::string stem = fresh("~c");
    p.outer.push_back(stem);

    std::vector<std::string> circles;
    for (std::size_t i : level) circles.insert(circles.end(), pieces_[i].outer.begin(), pieces_[i].outer.end());
    double seq = 0;
    for (const std::string& c : circles) {
      seq += 1;
      if (c == stem) {
        add(Piece{fresh("~p"), j + 1, 0, {stem}, {carried_a, carried_b}, true}, seq);
        continue;
      }
      // Collar over c; the deeper piece glued along c now glues along the collar's outer circle.
      const std::string outer = fresh("~c");
      auto child = ix.child.find(c);
      if (child != ix.child.end()) {
        for (auto& ref : pieces_[child->second].inner) {
          if (ref == c) ref = outer;
        }
      }
      add(Piece{fresh("~p"), j + 1, 0, {c}, {outer}, true}, seq);
    }
    return true;
  }
};

std::size_t last_pants_level(const ExhaustionGraph& g) {
  std::size_t last = 0;
  for (const Piece& p : g.pieces) {
    if (p.level >= 2 && p.outer.size() >= 2) last = std::max(last, p.level);
  }
  return last;
}

}  // namespace

NormalizedExhaustion normalize(const ExhaustionGraph& g) {
  const ValidationReport report = validate_exhaustion(g);
  if (!report.ok()) throw InvalidInput("exhaustion is invalid: " + report.violations.front().message);

  Normalizer n(g);
  n.run();

  NormalizedExhaustion out;
  out.graph.pieces = n.result();
  out.graph.supplier = nullptr;
  out.source_depth = g.depth();
  out.level_origin = n.origin();

  const std::size_t horizon = g.supplier ? g.supplier->join_horizon() : 0;
  const std::size_t stable_origin = out.source_depth > horizon ? out.source_depth - horizon : 0;
  for (std::size_t l = 1; l < out.level_origin.size(); ++l) {
    if (out.level_origin[l] <= stable_origin) out.stable_depth = l;
  }

  if (!g.supplier) {
    out.certificate = {EndCertificate::Kind::finite, last_pants_level(out.graph)};
  } else {
    const EndCertificate c = g.supplier->certificate();
    out.certificate.kind = c.kind;
    if (c.kind == EndCertificate::Kind::finite) {
      if (c.last_branching_level > out.source_depth) {
        out.certificate.kind = EndCertificate::Kind::none;
      } else {
        for (std::size_t l = 1; l < out.level_origin.size(); ++l) {
          if (out.level_origin[l] <= c.last_branching_level) out.certificate.last_branching_level = l;
        }
      }
    }
  }
  return out;
}

EndCount count_ends(const NormalizedExhaustion& e, std::size_t J) {
  if (J == 0) throw InvalidInput("end counting needs J >= 1");
  if (J > e.depth()) {
    throw DepthExceeded("J = " + std::to_string(J) + " exceeds the exhaustion depth " + std::to_string(e.depth()));
  }
  if (J > e.stable_depth) {
    throw NotNormalized("levels beyond " + std::to_string(e.stable_depth) + " are not yet stable");
  }
  if (const std::size_t bad = first_unnormalized_level(e.graph, J); bad != 0) {
    throw NotNormalized("level " + std::to_string(bad) + " does not have the normalized shape");
  }
  EndCount count;
  for (const Piece& p : e.graph.pieces) {
    if (p.level >= 2 && p.level <= J && p.outer.size() == 2) ++count.value;
  }
  switch (e.certificate.kind) {
    case EndCertificate::Kind::infinite:
      count.kind = EndCount::Kind::infinite;
      break;
    case EndCertificate::Kind::finite:
      count.kind = J >= e.certificate.last_branching_level ? EndCount::Kind::exact : EndCount::Kind::lower_bound;
      break;
    case EndCertificate::Kind::none:
      count.kind = EndCount::Kind::lower_bound;
      break;
  }
  return count;
}

EndCount count_ends(const ExhaustionGraph& g, std::size_t J) {
  NormalizedExhaustion e;
  e.graph = g;
  e.source_depth = g.depth();
  e.level_origin.resize(e.source_depth + 1);
  std::iota(e.level_origin.begin(), e.level_origin.end(), std::size_t{0});
  const std::size_t horizon = g.supplier ? g.supplier->join_horizon() : 0;
  e.stable_depth = e.source_depth > horizon ? e.source_depth - horizon : 0;
  if (g.supplier) {
    e.certificate = g.supplier->certificate();
    if (e.certificate.kind == EndCertificate::Kind::finite && e.certificate.last_branching_level > e.source_depth) {
      e.certificate.kind = EndCertificate::Kind::none;
    }
  } else {
    e.certificate = {EndCertificate::Kind::finite, last_pants_level(g)};
  }
  return count_ends(e, J);
}

}  // namespace branchcov
