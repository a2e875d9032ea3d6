#include "branchcov/layered.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>

#include "branchcov/errors.hpp"

namespace branchcov {

const char* to_string(BlockKind kind) noexcept {
  switch (kind) {
    case BlockKind::disk:
      return "disk";
    case BlockKind::annulus:
      return "annulus";
    case BlockKind::pants:
      return "pants";
    case BlockKind::stair:
      return "stair";
  }
  return "?";
}

BlockKind block_kind_from_string(const std::string& name) {
  if (name == "disk") return BlockKind::disk;
  if (name == "annulus") return BlockKind::annulus;
  if (name == "pants") return BlockKind::pants;
  if (name == "stair") return BlockKind::stair;
  throw ParseError("unknown block kind '" + name + "'");
}

namespace {

bool transitive(const std::vector<Perm>& gens, std::size_t n) { return orbits(gens, n).size() == 1; }

bool pants_tuple_ok(const std::vector<Perm>& tuple) {
  const Perm inbound = Perm::transposition(4, 0, 1);
  const Perm out = inbound * product(tuple, 4);
  const auto type = cycle_type(out);
  return type == std::vector<std::size_t>{2, 2} && transitive(tuple, 4);
}

std::vector<Perm> search_pants(unsigned genus) {
  std::vector<Perm> transpositions;
  for (Sheet a = 0; a < 4; ++a) {
    for (Sheet b = a + 1; b < 4; ++b) transpositions.push_back(Perm::transposition(4, a, b));
  }
  const std::size_t length = 2 * std::size_t{genus} + 3;
  const Perm first = transpositions.front();
  // The lexicographic minimum has the longest feasible run of the least
  // transposition in front; grow the free tail until a tuple exists.
  for (std::size_t k = 1; k <= length; ++k) {
    std::vector<Perm> tuple(length - k, first);
    std::vector<std::size_t> digits(k, 0);
    for (;;) {
      tuple.erase(tuple.begin() + static_cast<std::ptrdiff_t>(length - k), tuple.end());
      for (std::size_t d : digits) tuple.push_back(transpositions[d]);
      if (pants_tuple_ok(tuple)) return tuple;
      std::size_t pos = k;
      while (pos > 0 && digits[pos - 1] + 1 == transpositions.size()) digits[--pos] = 0;
      if (pos == 0) break;
      ++digits[pos - 1];
    }
  }
  throw InvalidData("no pants tuple of genus " + std::to_string(genus));
}

std::vector<Sheet> rotate_min_first(std::vector<Sheet> cycle) {
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

// Cycles of a local permutation in global sheets, least sheet first.
std::vector<std::vector<Sheet>> global_cycles(const Block& b, const Perm& local, bool skip_capped) {
  std::vector<std::vector<Sheet>> out;
  for (const auto& cyc : cycles(local)) {
    if (skip_capped && cyc.size() == 1 &&
        std::find(b.capped.begin(), b.capped.end(), cyc.front()) != b.capped.end()) {
      continue;
    }
    std::vector<Sheet> g;
    for (Sheet s : cyc) g.push_back(b.sheets[s]);
    out.push_back(rotate_min_first(std::move(g)));
  }
  return out;
}

Perm meridian_product(const Block& b) { return product(b.meridians, b.sheets.size()); }

long block_piece_chi(const Block& b) {
  const std::size_t inner = b.level == 1 ? 0 : global_cycles(b, b.inbound, true).size();
  const std::size_t outer = cycles(b.outbound).size();
  return 2 - 2 * static_cast<long>(b.genus) - static_cast<long>(inner + outer);
}

}  // namespace

const std::vector<Perm>& pants_meridians(unsigned genus) {
  static std::mutex mutex;
  static std::map<unsigned, std::vector<Perm>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(genus);
  if (it == cache.end()) it = cache.emplace(genus, search_pants(genus)).first;
  return it->second;
}

LayeredCover build_cover(const ExhaustionGraph& e, std::size_t J) {
  if (J == 0) throw InvalidInput("truncation depth must be at least 1");
  for (const Piece& p : e.pieces) {
    if (p.level <= J && !p.orientable) throw NonorientableInput("piece '" + p.id + "' is nonorientable");
  }
  if (J > e.depth()) {
    throw NotNormalized("exhaustion has depth " + std::to_string(e.depth()) + " below J = " + std::to_string(J));
  }
  if (const std::size_t bad = first_unnormalized_level(e, J); bad != 0) {
    throw NotNormalized("level " + std::to_string(bad) + " does not have the normalized shape");
  }

  std::vector<std::vector<const Piece*>> by_level(J + 1);
  for (const Piece& p : e.pieces) {
    if (p.level <= J) by_level[p.level].push_back(&p);
  }
  std::unordered_map<std::string, std::string> child_block;  // circle -> block id
  std::vector<std::vector<std::string>> block_ids(J + 1);
  for (std::size_t j = 1; j <= J; ++j) {
    for (std::size_t k = 0; k < by_level[j].size(); ++k) {
      const std::string id = "L" + std::to_string(j) + "." + std::to_string(k);
      block_ids[j].push_back(id);
      for (const auto& c : by_level[j][k]->inner) child_block[c] = id;
    }
  }

  LayeredCover cover;
  cover.depth = J;
  std::unordered_map<std::string, std::vector<Sheet>> circle_cycle;
  Sheet next_sheet = 0;
  auto glue = [&](Block& b, const Perm& local_out, const std::vector<std::string>& outer) {
    auto cyc = cycles(local_out);
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      std::vector<Sheet> g;
      for (Sheet s : cyc[k]) g.push_back(b.sheets[s]);
      g = rotate_min_first(std::move(g));
      circle_cycle[outer.at(k)] = g;
      std::optional<std::string> target;
      if (b.level < J) target = child_block.at(outer[k]);
      b.gluings.push_back({std::move(g), outer[k], target});
    }
  };

  for (std::size_t j = 1; j <= J; ++j) {
    std::size_t label = 0;
    for (std::size_t k = 0; k < by_level[j].size(); ++k) {
      const Piece& p = *by_level[j][k];
      Block b;
      b.id = block_ids[j][k];
      b.level = j;
      b.piece = p.id;
      b.genus = p.genus;
      if (j == 1) {
        b.kind = BlockKind::disk;
        b.sheets = {next_sheet, static_cast<Sheet>(next_sheet + 1)};
        next_sheet += 2;
        b.inbound = Perm::identity(2);
        b.meridians = {Perm::transposition(2, 0, 1)};
      } else {
        const std::vector<Sheet>& chain = circle_cycle.at(p.inner.front());
        b.sheets = chain;
        if (p.outer.size() == 1) {
          b.kind = BlockKind::annulus;
          b.inbound = Perm::transposition(2, 0, 1);
          b.meridians.assign(2 * std::size_t{p.genus}, Perm::transposition(2, 0, 1));
        } else {
          b.kind = BlockKind::pants;
          b.sheets.push_back(next_sheet++);
          b.sheets.push_back(next_sheet++);
          b.capped = {2, 3};
          b.inbound = Perm::transposition(4, 0, 1);
          b.meridians = pants_meridians(p.genus);
        }
      }
      for (std::size_t m = 0; m < b.meridians.size(); ++m) b.labels.push_back({j, ++label});
      b.outbound = b.inbound * meridian_product(b);
      glue(b, b.outbound, p.outer);
      cover.blocks.push_back(std::move(b));
    }
  }
  cover.degree = next_sheet;
  return cover;
}

LayeredCover build_cover(const NormalizedExhaustion& e, std::size_t J) {
  if (J > e.stable_depth) {
    throw NotNormalized("levels beyond " + std::to_string(e.stable_depth) + " are not yet stable");
  }
  return build_cover(e.graph, J);
}

LayeredCover staircase(std::size_t J) {
  if (J == 0) throw InvalidInput("staircase depth must be at least 1");
  LayeredCover cover;
  cover.depth = J;
  cover.degree = J + 1;
  for (std::size_t i = 1; i <= J; ++i) {
    Block b;
    b.id = "S" + std::to_string(i);
    b.level = i;
    b.kind = BlockKind::stair;
    const std::size_t n = i + 1;
    b.sheets.resize(n);
    std::iota(b.sheets.begin(), b.sheets.end(), Sheet{0});
    b.inbound = Perm::identity(n);
    if (i >= 2) {
      b.capped = {static_cast<Sheet>(i)};
      for (Sheet s = 0; s + 2 <= i; ++s) b.inbound = b.inbound * Perm::transposition(n, s, s + 1);
    }
    b.meridians = {Perm::transposition(n, static_cast<Sheet>(i - 1), static_cast<Sheet>(i))};
    b.labels = {{i, 1}};
    b.outbound = b.inbound * b.meridians.front();
    std::optional<std::string> target;
    if (i < J) target = "S" + std::to_string(i + 1);
    b.gluings.push_back({rotate_min_first(cycles(b.outbound).front()), "s" + std::to_string(i), target});
    cover.blocks.push_back(std::move(b));
  }
  return cover;
}

namespace {

// Checks live in a deque so references handed out by open() stay valid.
class Checks {
 public:
  LayeredCheck& open(const std::string& name) {
    opened.push_back({name, true, {}});
    return opened.back();
  }
  LayeredReport& finish() {
    report.checks.assign(opened.begin(), opened.end());
    report.passed = std::all_of(opened.begin(), opened.end(), [](const LayeredCheck& x) { return x.passed; });
    return report;
  }
  static void fail(LayeredCheck& c, std::string message) {
    c.passed = false;
    if (c.failures.size() < 20) c.failures.push_back(std::move(message));
  }
  std::deque<LayeredCheck> opened;
  LayeredReport report;
};

}  // namespace

LayeredReport verify_layered(const LayeredCover& c) {
  Checks ch;
  LayeredReport& r = ch.report;
  r.degree = c.degree;
  const std::size_t N = c.degree;

  auto& structure = ch.open("structure");
  std::vector<std::vector<std::size_t>> by_level(c.depth + 1);
  std::map<std::string, std::size_t> by_id;
  if (c.depth == 0 || N == 0) Checks::fail(structure, "cover has zero depth or degree");
  for (std::size_t k = 0; k < c.blocks.size(); ++k) {
    const Block& b = c.blocks[k];
    const std::string where = "block " + b.id + ": ";
    if (!by_id.emplace(b.id, k).second) Checks::fail(structure, where + "duplicate id");
    if (b.level == 0 || b.level > c.depth) {
      Checks::fail(structure, where + "level out of range");
      continue;
    }
    by_level[b.level].push_back(k);
    const std::size_t n = b.sheets.size();
    std::set<Sheet> distinct(b.sheets.begin(), b.sheets.end());
    if (n == 0 || distinct.size() != n || *distinct.rbegin() >= N) Checks::fail(structure, where + "bad sheet list");
    bool degrees = b.inbound.degree() == n && b.outbound.degree() == n;
    for (const Perm& m : b.meridians) degrees = degrees && m.degree() == n;
    if (!degrees) Checks::fail(structure, where + "permutation degree differs from the sheet count");
    for (Sheet s : b.capped) {
      if (s >= n) Checks::fail(structure, where + "capped index out of range");
    }
    if (b.labels.size() != b.meridians.size()) Checks::fail(structure, where + "one label per meridian required");
  }
  for (std::size_t j = 1; j <= c.depth; ++j) {
    if (by_level[j].empty()) Checks::fail(structure, "level " + std::to_string(j) + " has no blocks");
  }
  if (!structure.passed) return ch.finish();

  auto& relation = ch.open("relation");
  auto& capped = ch.open("capped_sheets");
  auto& transitivity = ch.open("pants_transitivity");
  auto& simplicity = ch.open("simplicity");
  auto& block_chi = ch.open("block_euler");
  std::set<BranchLabel> labels;
  long piece_chi_sum = 0;
  for (const Block& b : c.blocks) {
    const std::string where = "block " + b.id + ": ";
    const std::size_t n = b.sheets.size();
    const Perm m = meridian_product(b);
    if (b.inbound * m != b.outbound) Checks::fail(relation, where + "inbound * meridians != outbound");
    if (b.level == 1 && !b.inbound.is_identity()) Checks::fail(capped, where + "innermost block has inbound monodromy");
    for (Sheet s : b.capped) {
      if (b.inbound(s) != s) Checks::fail(capped, where + "capped sheet moved by inbound");
    }
    if (b.kind == BlockKind::pants && !transitive(b.meridians, n)) {
      Checks::fail(transitivity, where + "meridians not transitive");
    }
    for (std::size_t k = 0; k < b.meridians.size(); ++k) {
      if (!b.meridians[k].is_transposition()) Checks::fail(simplicity, where + "meridian " + std::to_string(k) + " is not a transposition");
      if (!labels.insert(b.labels[k]).second) Checks::fail(simplicity, where + "repeated branch label");
      if (b.labels[k].level != b.level) Checks::fail(simplicity, where + "label level differs from block level");
    }

    long lhs = b.level == 1 ? static_cast<long>(n) : 0;
    for (const Perm& x : b.meridians) lhs -= static_cast<long>(n - cycle_count(x));
    lhs += static_cast<long>(b.capped.size());
    const long rhs = block_piece_chi(b);
    if (lhs != rhs) {
      Checks::fail(block_chi, where + "cover count " + std::to_string(lhs) + " vs piece " + std::to_string(rhs));
    }
    piece_chi_sum += rhs;
    r.branch_points += b.meridians.size();
  }

  // Over D_j minus D_{j-1}: the level-j blocks plus the inward disks of every deeper block.
  auto& fibers = ch.open("fiber_partition");
  for (std::size_t j = 1; j <= c.depth; ++j) {
    std::vector<int> hits(N, 0);
    std::size_t counted = 0;
    for (const Block& b : c.blocks) {
      if (b.level == j) {
        for (Sheet s : b.sheets) ++hits[s];
        counted += b.sheets.size();
      } else if (b.level > j) {
        for (Sheet s : b.capped) ++hits[b.sheets[s]];
        counted += b.capped.size();
      }
    }
    const bool partition = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
    if (!partition || counted != N) {
      Checks::fail(fibers, "level " + std::to_string(j) + ": " + std::to_string(counted) + " sheets over the region, degree " + std::to_string(N));
    }
  }

  auto& gluing = ch.open("gluing");
  std::map<std::string, std::vector<std::vector<Sheet>>> incoming;
  for (const Block& b : c.blocks) {
    const std::string where = "block " + b.id + ": ";
    auto out = global_cycles(b, b.outbound, false);
    std::vector<std::vector<Sheet>> glued;
    for (const Gluing& g : b.gluings) {
      glued.push_back(rotate_min_first(g.cycle.empty() ? std::vector<Sheet>{} : g.cycle));
      if (b.level < c.depth) {
        if (!g.target || !by_id.count(*g.target) || c.blocks[by_id.at(*g.target)].level != b.level + 1) {
          Checks::fail(gluing, where + "gluing of " + g.circle + " lacks a next-level target");
        } else {
          incoming[*g.target].push_back(glued.back());
        }
      } else if (g.target) {
        Checks::fail(gluing, where + "gluing at the truncation depth has a target");
      }
    }
    std::sort(out.begin(), out.end());
    std::sort(glued.begin(), glued.end());
    if (out != glued) Checks::fail(gluing, where + "gluings do not match the outbound cycles");
  }
  for (const Block& b : c.blocks) {
    if (b.level == 1) continue;
    auto in = global_cycles(b, b.inbound, true);
    auto glued = incoming[b.id];
    std::sort(in.begin(), in.end());
    std::sort(glued.begin(), glued.end());
    if (in != glued) Checks::fail(gluing, "block " + b.id + ": inbound cycles do not match the glued outbound cycles");
  }

  // Whole-level monodromy around the circle between levels j and j+1.
  auto& boundary = ch.open("boundary_monodromy");
  for (std::size_t j = 1; j < c.depth; ++j) {
    std::vector<Sheet> out(N), in(N);
    std::iota(out.begin(), out.end(), Sheet{0});
    std::iota(in.begin(), in.end(), Sheet{0});
    for (const Block& b : c.blocks) {
      if (b.level == j) {
        for (std::size_t s = 0; s < b.sheets.size(); ++s) out[b.sheets[s]] = b.sheets[b.outbound(static_cast<Sheet>(s))];
      } else if (b.level == j + 1) {
        for (std::size_t s = 0; s < b.sheets.size(); ++s) in[b.sheets[s]] = b.sheets[b.inbound(static_cast<Sheet>(s))];
      }
    }
    if (out != in) Checks::fail(boundary, "level " + std::to_string(j) + ": outbound and next inbound monodromy differ");
  }

  auto& euler = ch.open("euler");
  r.euler_characteristic = static_cast<long>(N) - static_cast<long>(r.branch_points);
  if (r.euler_characteristic != piece_chi_sum) {
    Checks::fail(euler, "degree minus branch points " + std::to_string(r.euler_characteristic) + " vs pieces " + std::to_string(piece_chi_sum));
  }

  const bool chain_cover = std::none_of(c.blocks.begin(), c.blocks.end(), [](const Block& b) { return b.kind == BlockKind::stair; });
  if (chain_cover) {
    auto& law = ch.open("degree_law");
    const std::size_t pants = static_cast<std::size_t>(
        std::count_if(c.blocks.begin(), c.blocks.end(), [](const Block& b) { return b.kind == BlockKind::pants; }));
    if (N != 2 * (1 + pants)) Checks::fail(law, "degree " + std::to_string(N) + " but " + std::to_string(pants) + " pants blocks");
  }

  auto& ends = ch.open("ends_bound");
  for (const Block& b : c.blocks) {
    if (b.level == c.depth) r.ends += cycles(b.outbound).size();
  }
  if (r.ends > N) Checks::fail(ends, std::to_string(r.ends) + " ends exceed degree " + std::to_string(N));

  return ch.finish();
}

bool restriction_compatibility(const LayeredCover& c, std::size_t i) {
  if (i == 0) throw InvalidInput("restriction level must be at least 1");
  if (c.depth < i + 1) {
    throw DepthExceeded("cover depth " + std::to_string(c.depth) + " is below " + std::to_string(i + 1));
  }
  try {
    std::map<std::string, const Block*> by_id;
    std::vector<std::vector<Sheet>> previous;
    for (const Block& b : c.blocks) {
      by_id[b.id] = &b;
      if (b.level == i) {
        auto cyc = global_cycles(b, b.outbound, false);
        previous.insert(previous.end(), cyc.begin(), cyc.end());
      }
    }
    std::vector<std::vector<Sheet>> restricted;
    for (const Block& b : c.blocks) {
      if (b.level != i + 1) continue;
      // Boundary data read back from the outer side through the meridians.
      const Perm rho = b.outbound * meridian_product(b).inverse();
      for (Sheet s : b.capped) {
        if (rho(s) != s) return false;
      }
      auto cyc = global_cycles(b, rho, true);
      std::vector<std::vector<Sheet>> glued;
      for (const Block& a : c.blocks) {
        if (a.level != i) continue;
        for (const Gluing& g : a.gluings) {
          if (g.target == b.id) glued.push_back(rotate_min_first(g.cycle));
        }
      }
      auto sorted = cyc;
      std::sort(sorted.begin(), sorted.end());
      std::sort(glued.begin(), glued.end());
      if (sorted != glued) return false;
      restricted.insert(restricted.end(), cyc.begin(), cyc.end());
    }
    std::sort(previous.begin(), previous.end());
    std::sort(restricted.begin(), restricted.end());
    return previous == restricted;
  } catch (const Error&) {
    return false;
  }
}

ComposedReport compose_with_staircase(const LayeredCover& c, std::size_t J) {
  const LayeredReport check = verify_layered(c);
  if (!check.passed) throw UnverifiedInput("cover fails verification");
  ComposedReport out;
  out.cover_degree = c.degree;
  out.staircase_depth = J;
  for (std::size_t i = 0; i <= J; ++i) {
    const std::size_t stair_degree = i == 0 ? 1 : staircase(i).degree;
    out.degree_by_depth.push_back(c.degree * stair_degree);
  }
  out.fiber_count = out.degree_by_depth.back();
  if (J >= 1) {
    for (const Block& b : staircase(J).blocks) {
      for (const BranchLabel& l : b.labels) out.labels.push_back({"staircase", l});
    }
  }
  for (const Block& b : c.blocks) {
    for (const BranchLabel& l : b.labels) out.labels.push_back({"cover", l});
  }
  std::sort(out.labels.begin(), out.labels.end());
  return out;
}

}  // namespace branchcov
