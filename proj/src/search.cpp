#include "branchcov/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "branchcov/errors.hpp"
#include "canonical.hpp"
#include "symmetric_group.hpp"

namespace branchcov {

namespace {

using Index = SymmetricGroup::Index;

// Rough upper bound on tuples visited; beyond this a census is refused
// rather than left running for hours.
constexpr double work_budget = 2e10;

std::size_t parse_count(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != value.size()) throw InvalidInput("limit '" + key + "' needs a nonnegative integer, got '" + value + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

SearchLimits SearchLimits::parse(const std::string& text) {
  SearchLimits limits;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("limit entry '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::size_t value = parse_count(key, item.substr(eq + 1));
    if (key == "degree") {
      if (value == 0 || value > engine_degree_cap) {
        throw InvalidInput("degree limit must be in 1.." + std::to_string(engine_degree_cap));
      }
      limits.max_degree = value;
    } else if (key == "branch") {
      limits.max_branch_points = value;
    } else {
      throw InvalidInput("unknown limit '" + key + "'");
    }
  }
  return limits;
}

SearchLimits SearchLimits::from_environment() {
  const char* env = std::getenv("WORKBENCH_LIMITS");
  if (env == nullptr) return {};
  return parse(env);
}

void PartialCensus::merge(const PartialCensus& other) {
  valid_tuples += other.valid_tuples;
  transitive_tuples += other.transitive_tuples;
  for (const auto& [key, bucket] : other.by_surface) {
    auto& mine = by_surface[key];
    mine.raw_count += bucket.raw_count;
    mine.forms.insert(bucket.forms.begin(), bucket.forms.end());
  }
}

CensusPlan::CensusPlan(const ClosedSurface& base, std::size_t degree, std::size_t branch_points, bool simple_only,
                       const SearchLimits& limits)
    : base_(base), degree_(degree), branch_points_(branch_points), simple_only_(simple_only) {
  if (degree == 0) throw InvalidInput("degree must be positive");
  if (degree > limits.max_degree || degree > SearchLimits::engine_degree_cap) {
    throw LimitExceeded("degree " + std::to_string(degree) + " exceeds the limit " +
                        std::to_string(std::min(limits.max_degree, SearchLimits::engine_degree_cap)));
  }
  if (branch_points > limits.max_branch_points) {
    throw LimitExceeded("branch count " + std::to_string(branch_points) + " exceeds the limit " +
                        std::to_string(limits.max_branch_points));
  }
  group_ = SymmetricGroup::get(degree);
  if (simple_only) {
    meridian_choices_ = group_->transpositions_by_pair();
  } else {
    for (std::size_t a = 1; a < group_->order(); ++a) meridian_choices_.push_back(static_cast<Index>(a));
  }

  const std::size_t surface_gens = base.orientable() ? 2 * std::size_t{base.genus()} : base.genus();
  const std::size_t free_meridians = surface_gens == 0 ? (branch_points == 0 ? 0 : branch_points - 1) : branch_points;
  const std::size_t free_surface = surface_gens == 0 ? 0 : surface_gens - (base.orientable() ? 2 : 1);
  const double work = std::pow(static_cast<double>(meridian_choices_.size()), static_cast<double>(free_meridians)) *
                      std::pow(static_cast<double>(group_->order()), static_cast<double>(free_surface));
  if (work > work_budget) {
    throw LimitExceeded("census over " + base.name() + " at degree " + std::to_string(degree) + " with " +
                        std::to_string(branch_points) + " branch points is too large to enumerate");
  }
  partitions_ = free_meridians == 0 ? 1 : meridian_choices_.size();
}

namespace {

struct Engine {
  const SymmetricGroup& group;
  const std::vector<Index>& choices;
  std::vector<bool> allowed;  // admissible meridian images
  std::size_t degree;
  bool orientable_base;
  long base_chi;
  std::size_t surface_gens;
  std::size_t meridian_count;
  std::vector<Index> tuple;  // surface generators, then meridians
  PartialCensus& out;
  Canonicalizer canon;
  std::vector<const std::uint8_t*> image_ptrs;

  Engine(const SymmetricGroup& g, const std::vector<Index>& ch, const ClosedSurface& base, std::size_t b,
         PartialCensus& result)
      : group(g),
        choices(ch),
        allowed(g.order(), false),
        degree(g.degree()),
        orientable_base(base.orientable()),
        base_chi(euler_characteristic(base)),
        surface_gens(base.orientable() ? 2 * std::size_t{base.genus()} : base.genus()),
        meridian_count(b),
        tuple(surface_gens + b, 0),
        out(result),
        image_ptrs(surface_gens + b, nullptr) {
    for (Index c : choices) allowed[c] = true;
  }

  Index& meridian(std::size_t j) { return tuple[surface_gens + j]; }

  void record() {
    ++out.valid_tuples;
    const std::size_t k = tuple.size();
    const std::uint32_t full = (std::uint32_t{1} << degree) - 1;

    std::uint32_t reached = 1, frontier = 1;
    while (frontier != 0) {
      std::uint32_t next = 0;
      for (std::size_t i = 0; i < degree; ++i) {
        if (!(frontier & (1u << i))) continue;
        for (Index t : tuple) next |= 1u << group.images(t)[i];
      }
      frontier = next & ~reached;
      reached |= next;
    }
    if (reached != full) return;
    ++out.transitive_tuples;

    long chi = static_cast<long>(degree) * base_chi;
    for (std::size_t j = 0; j < meridian_count; ++j) {
      chi -= static_cast<long>(degree) - group.cycle_count(tuple[surface_gens + j]);
    }

    bool orientable = true;
    if (!orientable_base) {
      std::array<int, 8> sign{};
      sign[0] = 1;
      std::array<std::uint8_t, 8> stack{};
      std::size_t top = 0;
      stack[top++] = 0;
      while (top > 0 && orientable) {
        const std::uint8_t i = stack[--top];
        for (std::size_t g = 0; g < k && orientable; ++g) {
          const int s = g < surface_gens ? -sign[i] : sign[i];
          const std::uint8_t j = group.images(tuple[g])[i];
          if (sign[j] == 0) {
            sign[j] = s;
            stack[top++] = j;
          } else if (sign[j] != s) {
            orientable = false;
          }
        }
      }
    }

    const ClosedSurface surface = classify(chi, orientable);
    auto& bucket = out.by_surface[ordering_key(surface)];
    ++bucket.raw_count;
    for (std::size_t g = 0; g < k; ++g) image_ptrs[g] = group.images(tuple[g]).data();
    const auto& form = canon.run(image_ptrs.data(), k, degree);
    bucket.forms.emplace(reinterpret_cast<const char*>(form.data()), form.size());
  }

  // Sphere: meridians 0..b-2 are free, the last one closes the relation.
  void sphere_meridians(std::size_t j, Index prefix) {
    if (meridian_count == 0) {
      record();
      return;
    }
    if (j + 1 == meridian_count) {
      const Index last = group.inverse(prefix);
      if (!allowed[last]) return;
      meridian(j) = last;
      record();
      return;
    }
    for (Index c : choices) {
      meridian(j) = c;
      sphere_meridians(j + 1, group.mul(prefix, c));
    }
  }

  void all_meridians(std::size_t j, Index prefix) {
    if (j == meridian_count) {
      surface_generators(0, group.identity(), group.inverse(prefix));
      return;
    }
    for (Index c : choices) {
      meridian(j) = c;
      all_meridians(j + 1, group.mul(prefix, c));
    }
  }

  // prefix: product of the surface terms so far; m_inv: inverse meridian product.
  void surface_generators(std::size_t slot, Index prefix, Index m_inv) {
    const std::size_t step = orientable_base ? 2 : 1;
    if (slot + step == surface_gens) {
      const Index target = group.mul(group.inverse(prefix), m_inv);
      if (orientable_base) {
        auto [lo, hi] = group.commutator_roots(target);
        for (auto it = lo; it != hi; ++it) {
          tuple[slot] = it->first;
          tuple[slot + 1] = it->second;
          record();
        }
      } else {
        auto [lo, hi] = group.square_roots(target);
        for (auto it = lo; it != hi; ++it) {
          tuple[slot] = *it;
          record();
        }
      }
      return;
    }
    const std::size_t n = group.order();
    if (orientable_base) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          const Index ia = static_cast<Index>(a), ib = static_cast<Index>(b);
          tuple[slot] = ia;
          tuple[slot + 1] = ib;
          const Index comm = group.mul(group.mul(group.mul(ia, ib), group.inverse(ia)), group.inverse(ib));
          surface_generators(slot + 2, group.mul(prefix, comm), m_inv);
        }
      }
    } else {
      for (std::size_t a = 0; a < n; ++a) {
        const Index ia = static_cast<Index>(a);
        tuple[slot] = ia;
        surface_generators(slot + 1, group.mul(prefix, group.mul(ia, ia)), m_inv);
      }
    }
  }
};

}  // namespace

PartialCensus CensusPlan::run_partition(std::size_t index) const {
  if (index >= partitions_) throw InvalidInput("partition index out of range");
  PartialCensus result;
  Engine engine(*group_, meridian_choices_, base_, branch_points_, result);
  const bool sphere = engine.surface_gens == 0;
  const std::size_t free_meridians = sphere ? (branch_points_ == 0 ? 0 : branch_points_ - 1) : branch_points_;

  if (free_meridians == 0) {
    if (sphere) {
      engine.sphere_meridians(0, group_->identity());
    } else {
      engine.all_meridians(0, group_->identity());
    }
    return result;
  }
  const Index first = meridian_choices_[index];
  engine.meridian(0) = first;
  if (sphere) {
    engine.sphere_meridians(1, first);
  } else {
    engine.all_meridians(1, first);
  }
  return result;
}

CensusRow CensusPlan::finish(const PartialCensus& total) const {
  CensusRow row;
  row.base = base_;
  row.degree = degree_;
  row.branch_count = branch_points_;
  row.simple_only = simple_only_;
  row.valid_tuples = total.valid_tuples;
  row.transitive_tuples = total.transitive_tuples;
  for (const auto& [key, bucket] : total.by_surface) {
    if (bucket.raw_count == 0) continue;
    row.realized.push_back({ClosedSurface::make(!key.first, key.second), bucket.raw_count, bucket.forms.size()});
  }
  return row;
}

CensusRow enumerate_covers(const ClosedSurface& base, std::size_t degree, std::size_t branch_points, bool simple_only,
                           const SearchOptions& options) {
  const CensusPlan plan(base, degree, branch_points, simple_only, options.limits);
  const std::size_t parts = plan.partition_count();
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(parts, 1));

  std::vector<PartialCensus> partials(parts);
  if (workers <= 1) {
    for (std::size_t i = 0; i < parts; ++i) partials[i] = plan.run_partition(i);
  } else {
    // Static round-robin assignment keeps the work split deterministic.
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < parts; i += workers) partials[i] = plan.run_partition(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  PartialCensus total;
  for (const auto& p : partials) total.merge(p);
  return plan.finish(total);
}

std::vector<Sheet> canonical_form(std::span<const Perm> generators) {
  if (generators.empty()) return {};
  const std::size_t degree = generators.front().degree();
  for (const Perm& g : generators) {
    if (g.degree() != degree) throw DegreeMismatch("canonical form needs generators of one degree");
  }
  if (degree > 256) throw LimitExceeded("canonical form supports at most 256 sheets");
  std::vector<std::vector<std::uint8_t>> images(generators.size());
  std::vector<const std::uint8_t*> ptrs;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    for (Sheet s : generators[k].images()) images[k].push_back(static_cast<std::uint8_t>(s));
    ptrs.push_back(images[k].data());
  }
  Canonicalizer canon;
  const auto& form = canon.run(ptrs.data(), ptrs.size(), degree);
  return {form.begin(), form.end()};
}

AuditReport parity_audit(std::size_t d_max, std::size_t b_max, const SearchOptions& options) {
  if (d_max == 0) throw InvalidInput("d_max must be positive");
  if (d_max > options.limits.max_degree) {
    throw LimitExceeded("d_max " + std::to_string(d_max) + " exceeds the degree limit " +
                        std::to_string(options.limits.max_degree));
  }
  if (b_max > options.limits.max_branch_points) {
    throw LimitExceeded("b_max " + std::to_string(b_max) + " exceeds the branch limit " +
                        std::to_string(options.limits.max_branch_points));
  }
  const ClosedSurface rp2 = ClosedSurface::projective_plane();
  AuditReport report;
  report.d_max = d_max;
  report.b_max = b_max;
  for (std::size_t d = 1; d <= d_max; ++d) {
    for (std::size_t b = 0; b <= b_max; ++b) {
      const CensusRow row = enumerate_covers(rp2, d, b, true, options);
      if (b % 2 == 1 && row.valid_tuples != 0) {
        report.odd_branch_violations.emplace_back(d, b);
        ++report.violations;
      }
      for (const auto& r : row.realized) {
        AuditRow a;
        a.degree = d;
        a.branch_points = b;
        a.surface = r.surface;
        a.raw_count = r.raw_count;
        a.classes = r.classes;
        const long lhs = static_cast<long>(r.surface.genus());
        if (r.surface.orientable()) {
          a.euler_ok = 2 - 2 * lhs == static_cast<long>(d) - static_cast<long>(b);
        } else {
          a.parity_ok = (r.surface.genus() % 2) == (d % 2);
          a.euler_ok = lhs == 2 - static_cast<long>(d) + static_cast<long>(b);
        }
        if (!a.parity_ok || !a.euler_ok) ++report.violations;
        report.rows.push_back(a);
      }
    }
  }
  report.passed = report.violations == 0;
  return report;
}

UniversalBaseReport universal_base_report_dim2(std::size_t n, unsigned genus_max, const SearchOptions& options) {
  if (n < 2) throw InvalidInput("universal base report needs degree n >= 2");
  if (n > options.limits.max_degree) {
    throw LimitExceeded("degree " + std::to_string(n) + " exceeds the limit " + std::to_string(options.limits.max_degree));
  }
  // Witness data carry 2g + 2n - 2 meridians; keep them materializable.
  constexpr unsigned genus_cap = 64;
  if (genus_max > genus_cap) throw LimitExceeded("genus_max above " + std::to_string(genus_cap));

  UniversalBaseReport report;
  report.degree = n;
  report.genus_max = genus_max;
  report.sphere_universal = true;
  for (unsigned g = 0; g <= genus_max; ++g) {
    SphereWitness w;
    w.genus = g;
    w.data = construct_hyperelliptic(g);
    for (std::size_t k = 2; k < n; ++k) w.data = stabilize(w.data);
    w.validated = validate(w.data).ok();
    if (w.validated) {
      const CoverSummary s = total_space(w.data);
      w.simple = s.simple;
      w.realizes_target = s.connected() && s.components[0].surface == ClosedSurface::orientable_genus(g) &&
                          s.degree == n;
    }
    report.sphere_universal = report.sphere_universal && w.validated && w.simple && w.realizes_target;
    report.sphere.push_back(std::move(w));
  }

  // Riemann-Hurwitz over RP^2: 2 - h = n - b, so b = n + h - 2, which is odd
  // exactly when h and n differ in parity. Simple data need b even.
  for (unsigned h = 1; h <= genus_max + 2; ++h) {
    if (h % 2 == n % 2) continue;
    report.projective.push_back({h, n + h - 2});
  }
  report.projective_obstructed = !report.projective.empty();
  for (const auto& o : report.projective) {
    report.projective_obstructed = report.projective_obstructed && o.forced_branch_points % 2 == 1;
  }

  if (!report.projective.empty()) {
    const auto& first = report.projective.front();
    if (first.forced_branch_points <= options.limits.max_branch_points) {
      const CensusRow row =
          enumerate_covers(ClosedSurface::projective_plane(), n, first.forced_branch_points, true, options);
      ExhaustiveCheck check;
      check.degree = n;
      check.branch_points = first.forced_branch_points;
      check.target_crosscaps = first.crosscaps;
      check.valid_tuples = row.valid_tuples;
      check.target_realized = std::any_of(row.realized.begin(), row.realized.end(), [&](const RealizedSurface& r) {
        return r.surface == ClosedSurface::crosscaps(first.crosscaps);
      });
      report.exhaustive = check;
      report.projective_obstructed = report.projective_obstructed && !check.target_realized && check.valid_tuples == 0;
    }
  }
  return report;
}

}  // namespace branchcov
