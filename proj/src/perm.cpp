#include "branchcov/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "branchcov/errors.hpp"

namespace branchcov {

namespace {

void require_same_degree(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) {
    throw DegreeMismatch("permutation degrees differ: " + std::to_string(p.degree()) + " vs " +
                         std::to_string(q.degree()));
  }
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

Perm::Perm(std::vector<Sheet> images) : images_(std::move(images)) {
  if (images_.empty()) throw InvalidPermutation("permutation degree must be positive");
  std::vector<bool> seen(images_.size(), false);
  for (Sheet v : images_) {
    if (v >= images_.size() || seen[v]) {
      throw InvalidPermutation("image sequence is not a bijection of {0.." +
                               std::to_string(images_.size() - 1) + "}");
    }
    seen[v] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  if (degree == 0) throw InvalidPermutation("permutation degree must be positive");
  std::vector<Sheet> images(degree);
  std::iota(images.begin(), images.end(), Sheet{0});
  return Perm(std::move(images), Unchecked{});
}

Perm Perm::transposition(std::size_t degree, Sheet a, Sheet b) {
  if (a >= degree || b >= degree || a == b) {
    throw InvalidPermutation("transposition needs two distinct points below the degree");
  }
  Perm p = identity(degree);
  std::swap(p.images_[a], p.images_[b]);
  return p;
}

Perm Perm::cycle(std::size_t degree, std::span<const Sheet> points) {
  Perm p = identity(degree);
  std::vector<bool> used(degree, false);
  for (Sheet v : points) {
    if (v >= degree || used[v]) throw InvalidPermutation("cycle points must be distinct and below the degree");
    used[v] = true;
  }
  for (std::size_t k = 0; k < points.size(); ++k) {
    p.images_[points[k]] = points[(k + 1) % points.size()];
  }
  return p;
}

Perm Perm::inverse() const {
  std::vector<Sheet> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Sheet>(i);
  return Perm(std::move(inv), Unchecked{});
}

bool Perm::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

bool Perm::is_transposition() const noexcept {
  std::size_t moved = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) {
      ++moved;
      if (images_[images_[i]] != i) return false;
    }
  }
  return moved == 2;
}

Perm Perm::extended(std::size_t new_degree) const {
  if (new_degree < images_.size()) throw DegreeMismatch("cannot extend to a smaller degree");
  std::vector<Sheet> images = images_;
  for (std::size_t i = images_.size(); i < new_degree; ++i) images.push_back(static_cast<Sheet>(i));
  return Perm(std::move(images), Unchecked{});
}

Perm Perm::restricted(std::span<const Sheet> points) const {
  std::vector<Sheet> local(images_.size(), static_cast<Sheet>(-1));
  for (std::size_t k = 0; k < points.size(); ++k) local.at(points[k]) = static_cast<Sheet>(k);
  std::vector<Sheet> images(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    Sheet target = local[images_[points[k]]];
    if (target == static_cast<Sheet>(-1)) throw InvalidData("restriction to a non-invariant point set");
    images[k] = target;
  }
  return Perm(std::move(images));
}

Perm compose(const Perm& p, const Perm& q) {
  require_same_degree(p, q);
  std::vector<Sheet> images(p.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = q(p(static_cast<Sheet>(i)));
  return Perm(std::move(images), Perm::Unchecked{});
}

Perm product(std::span<const Perm> word, std::size_t degree) {
  Perm acc = Perm::identity(degree);
  for (const Perm& p : word) acc = compose(acc, p);
  return acc;
}

Perm commutator(const Perm& a, const Perm& b) { return a * b * a.inverse() * b.inverse(); }

std::vector<std::vector<Sheet>> cycles(const Perm& p) {
  std::vector<std::vector<Sheet>> out;
  std::vector<bool> seen(p.degree(), false);
  for (Sheet start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    std::vector<Sheet> cyc;
    for (Sheet v = start; !seen[v]; v = p(v)) {
      seen[v] = true;
      cyc.push_back(v);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<std::size_t> cycle_type(const Perm& p) {
  std::vector<std::size_t> lengths;
  for (const auto& c : cycles(p)) lengths.push_back(c.size());
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

std::size_t cycle_count(const Perm& p) { return cycles(p).size(); }

std::vector<std::vector<Sheet>> orbits(std::span<const Perm> gens, std::size_t n) {
  for (const Perm& g : gens) {
    if (g.degree() != n) {
      throw DegreeMismatch("generator of degree " + std::to_string(g.degree()) + " acting on " +
                           std::to_string(n) + " points");
    }
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (const Perm& g : gens) {
    for (Sheet i = 0; i < n; ++i) {
      std::size_t a = find_root(parent, i);
      std::size_t b = find_root(parent, g(i));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  // Roots are always the least element of their class, so a single ascending
  // pass yields orbits sorted by least element.
  std::vector<std::vector<Sheet>> out;
  std::vector<std::size_t> slot(n, static_cast<std::size_t>(-1));
  for (Sheet i = 0; i < n; ++i) {
    std::size_t r = find_root(parent, i);
    if (slot[r] == static_cast<std::size_t>(-1)) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

std::string to_cycle_string(const Perm& p) {
  std::ostringstream os;
  bool any = false;
  for (const auto& c : cycles(p)) {
    if (c.size() < 2) continue;
    any = true;
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k];
    os << ')';
  }
  return any ? os.str() : "()";
}

Perm parse_cycles(std::string_view text, std::size_t degree) {
  Perm acc = Perm::identity(degree);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ',')) ++pos;
  };
  skip_space();
  if (text.substr(pos) == "id") return acc;
  while (true) {
    skip_space();
    if (pos >= text.size()) break;
    if (text[pos] != '(') throw ParseError("expected '(' in cycle notation: " + std::string(text));
    ++pos;
    std::vector<Sheet> points;
    while (true) {
      skip_space();
      if (pos >= text.size()) throw ParseError("unterminated cycle: " + std::string(text));
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      std::size_t start = pos;
      unsigned long value = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        value = value * 10 + static_cast<unsigned long>(text[pos] - '0');
        ++pos;
      }
      if (pos == start) throw ParseError("expected a sheet number in: " + std::string(text));
      if (value >= degree) throw ParseError("sheet " + std::to_string(value) + " exceeds degree");
      points.push_back(static_cast<Sheet>(value));
    }
    try {
      // Cycles are composed left to right, like the word they spell.
      acc = acc * Perm::cycle(degree, points);
    } catch (const InvalidPermutation& e) {
      throw ParseError(std::string("bad cycle: ") + e.what());
    }
  }
  return acc;
}

}  // namespace branchcov
