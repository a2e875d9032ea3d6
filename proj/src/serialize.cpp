#include "branchcov/serialize.hpp"

#include "branchcov/errors.hpp"

namespace branchcov {

namespace {

constexpr int document_version = 1;

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

void expect_format(const Json& j, const char* format) {
  if (!j.is_object()) throw ParseError(std::string(format) + " document must be a JSON object");
  if (!j.contains("format") || j.at("format") != format) {
    throw ParseError(std::string("expected a document with format \"") + format + "\"");
  }
  if (j.contains("version") && j.at("version") != document_version) {
    throw ParseError("unsupported " + std::string(format) + " document version");
  }
}

std::vector<Perm> perms_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of permutations");
  std::vector<Perm> out;
  for (const Json& p : j) out.push_back(perm_from_json(p));
  return out;
}

Json perms_to_json(const std::vector<Perm>& ps) {
  Json a = Json::array();
  for (const Perm& p : ps) a.push_back(to_json(p));
  return a;
}

Json violations_to_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const Violation& x : r.violations) {
    Json e = {{"code", x.code}, {"message", x.message}};
    e["index"] = x.index ? Json(*x.index) : Json(nullptr);
    v.push_back(std::move(e));
  }
  return v;
}

const char* kind_name(EndCount::Kind k) {
  switch (k) {
    case EndCount::Kind::exact:
      return "exact";
    case EndCount::Kind::lower_bound:
      return "lower_bound";
    case EndCount::Kind::infinite:
      return "infinite";
  }
  return "?";
}

const char* certificate_name(EndCertificate::Kind k) {
  switch (k) {
    case EndCertificate::Kind::none:
      return "none";
    case EndCertificate::Kind::finite:
      return "finite";
    case EndCertificate::Kind::infinite:
      return "infinite";
  }
  return "?";
}

}  // namespace

Json to_json(const Perm& p) { return Json(std::vector<Sheet>(p.images().begin(), p.images().end())); }

Perm perm_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("permutation must be an array of images");
  std::vector<Sheet> images;
  for (const Json& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ParseError("permutation images must be nonnegative integers");
    images.push_back(v.get<Sheet>());
  }
  return Perm(std::move(images));
}

Json to_json(const ClosedSurface& s) {
  return {{"orientable", s.orientable()},
          {"genus", s.genus()},
          {"name", s.name()},
          {"euler_characteristic", euler_characteristic(s)}};
}

ClosedSurface surface_from_json(const Json& j) {
  return guarded("surface", [&] {
    if (!j.is_object()) throw ParseError("surface must be an object");
    const long genus = j.at("genus").get<long>();
    if (genus < 0) throw NotASurface("negative genus");
    return ClosedSurface::make(j.at("orientable").get<bool>(), static_cast<unsigned>(genus));
  });
}

Json to_json(const HurwitzData& h) {
  Json handles = Json::array();
  for (const auto& [a, b] : h.handles) handles.push_back(Json::array({to_json(a), to_json(b)}));
  return {{"format", "hurwitz"},
          {"version", document_version},
          {"base", {{"orientable", h.base.orientable()}, {"genus", h.base.genus()}}},
          {"degree", h.degree},
          {"handles", handles},
          {"crosscaps", perms_to_json(h.crosscaps)},
          {"meridians", perms_to_json(h.meridians)}};
}

HurwitzData hurwitz_from_json(const Json& j) {
  return guarded("hurwitz document", [&] {
    expect_format(j, "hurwitz");
    HurwitzData h;
    h.base = surface_from_json(j.at("base"));
    const long degree = j.at("degree").get<long>();
    if (degree <= 0) throw ParseError("degree must be positive");
    h.degree = static_cast<std::size_t>(degree);
    if (j.contains("handles")) {
      for (const Json& pair : j.at("handles")) {
        if (!pair.is_array() || pair.size() != 2) throw ParseError("each handle is a pair of permutations");
        h.handles.emplace_back(perm_from_json(pair[0]), perm_from_json(pair[1]));
      }
    }
    if (j.contains("crosscaps")) h.crosscaps = perms_from_json(j.at("crosscaps"));
    if (j.contains("meridians")) h.meridians = perms_from_json(j.at("meridians"));
    return h;
  });
}

Json to_json(const ExhaustionGraph& g) {
  Json pieces = Json::array();
  for (const Piece& p : g.pieces) {
    Json x = {{"id", p.id}, {"level", p.level}, {"genus", p.genus}, {"inner", p.inner}, {"outer", p.outer}};
    if (!p.orientable) x["orientable"] = false;
    pieces.push_back(std::move(x));
  }
  Json doc = {{"format", "exhaustion"}, {"version", document_version}, {"pieces", pieces}};
  if (g.supplier) doc["supplier"] = {{"family", g.supplier->family()}, {"parameters", g.supplier->parameters()}};
  return doc;
}

ExhaustionGraph exhaustion_from_json(const Json& j) {
  return guarded("exhaustion document", [&] {
    expect_format(j, "exhaustion");
    ExhaustionGraph g;
    if (j.contains("pieces")) {
      for (const Json& x : j.at("pieces")) {
        Piece p;
        p.id = x.at("id").get<std::string>();
        const long level = x.at("level").get<long>();
        const long genus = x.value("genus", 0L);
        if (level <= 0) throw ParseError("piece '" + p.id + "': level must be positive");
        if (genus < 0) throw ParseError("piece '" + p.id + "': genus must be nonnegative");
        p.level = static_cast<std::size_t>(level);
        p.genus = static_cast<unsigned>(genus);
        p.inner = x.value("inner", std::vector<std::string>{});
        p.outer = x.value("outer", std::vector<std::string>{});
        p.orientable = x.value("orientable", true);
        g.pieces.push_back(std::move(p));
      }
    }
    if (j.contains("supplier") && !j.at("supplier").is_null()) {
      const Json& s = j.at("supplier");
      g.supplier = make_supplier(s.at("family").get<std::string>(),
                                 s.value("parameters", std::map<std::string, long>{}));
    }
    return g;
  });
}

Json to_json(const LayeredCover& c) {
  Json blocks = Json::array();
  for (const Block& b : c.blocks) {
    Json labels = Json::array();
    for (const BranchLabel& l : b.labels) labels.push_back(Json::array({l.level, l.index}));
    Json gluings = Json::array();
    for (const Gluing& g : b.gluings) {
      gluings.push_back({{"cycle", g.cycle}, {"circle", g.circle}, {"target", g.target ? Json(*g.target) : Json(nullptr)}});
    }
    blocks.push_back({{"id", b.id},
                      {"level", b.level},
                      {"kind", to_string(b.kind)},
                      {"piece", b.piece},
                      {"genus", b.genus},
                      {"sheets", b.sheets},
                      {"capped", b.capped},
                      {"inbound", to_json(b.inbound)},
                      {"meridians", perms_to_json(b.meridians)},
                      {"outbound", to_json(b.outbound)},
                      {"labels", labels},
                      {"gluings", gluings}});
  }
  return {{"format", "layered"}, {"version", document_version}, {"depth", c.depth}, {"degree", c.degree}, {"blocks", blocks}};
}

LayeredCover layered_from_json(const Json& j) {
  return guarded("layered document", [&] {
    expect_format(j, "layered");
    LayeredCover c;
    c.depth = j.at("depth").get<std::size_t>();
    c.degree = j.at("degree").get<std::size_t>();
    for (const Json& x : j.at("blocks")) {
      Block b;
      b.id = x.at("id").get<std::string>();
      b.level = x.at("level").get<std::size_t>();
      b.kind = block_kind_from_string(x.at("kind").get<std::string>());
      b.piece = x.value("piece", std::string{});
      b.genus = x.value("genus", 0u);
      b.sheets = x.at("sheets").get<std::vector<Sheet>>();
      b.capped = x.value("capped", std::vector<Sheet>{});
      b.inbound = perm_from_json(x.at("inbound"));
      b.meridians = perms_from_json(x.at("meridians"));
      b.outbound = perm_from_json(x.at("outbound"));
      for (const Json& l : x.value("labels", Json::array())) {
        if (!l.is_array() || l.size() != 2) throw ParseError("branch label must be [level, index]");
        b.labels.push_back({l[0].get<std::size_t>(), l[1].get<std::size_t>()});
      }
      for (const Json& g : x.value("gluings", Json::array())) {
        Gluing gl;
        gl.cycle = g.at("cycle").get<std::vector<Sheet>>();
        gl.circle = g.value("circle", std::string{});
        if (g.contains("target") && !g.at("target").is_null()) gl.target = g.at("target").get<std::string>();
        b.gluings.push_back(std::move(gl));
      }
      c.blocks.push_back(std::move(b));
    }
    return c;
  });
}

Json unwrap_document(const Json& j) {
  if (j.is_object() && j.contains("tool") && j.contains("result")) {
    const Json& r = j.at("result");
    if (r.is_object() && r.contains("document")) return r.at("document");
    return r;
  }
  return j;
}

Json to_json(const ValidationReport& r) {
  return {{"ok", r.ok()}, {"violations", violations_to_json(r)}, {"notes", r.notes}};
}

Json to_json(const CoverSummary& s) {
  Json comps = Json::array();
  for (const CoverComponent& c : s.components) {
    comps.push_back({{"surface", to_json(c.surface)}, {"degree", c.degree}, {"sheets", c.sheets}});
  }
  return {{"degree", s.degree},
          {"simple", s.simple},
          {"connected", s.connected()},
          {"components", comps},
          {"branch_point_count", s.branch_point_count},
          {"branching_indices", s.branching_indices}};
}

Json to_json(const CensusRow& row) {
  Json realized = Json::array();
  for (const RealizedSurface& r : row.realized) {
    realized.push_back({{"surface", to_json(r.surface)}, {"raw_count", r.raw_count}, {"classes", r.classes}});
  }
  return {{"base", to_json(row.base)},
          {"degree", row.degree},
          {"branch_points", row.branch_count},
          {"simple_only", row.simple_only},
          {"valid_tuples", row.valid_tuples},
          {"transitive_tuples", row.transitive_tuples},
          {"realized", realized}};
}

Json to_json(const AuditReport& r) {
  Json rows = Json::array();
  for (const AuditRow& a : r.rows) {
    rows.push_back({{"degree", a.degree},
                    {"branch_points", a.branch_points},
                    {"surface", to_json(a.surface)},
                    {"raw_count", a.raw_count},
                    {"classes", a.classes},
                    {"parity_ok", a.parity_ok},
                    {"euler_ok", a.euler_ok}});
  }
  Json odd = Json::array();
  for (const auto& [d, b] : r.odd_branch_violations) odd.push_back(Json::array({d, b}));
  return {{"d_max", r.d_max},
          {"b_max", r.b_max},
          {"relation", "b = d + h - 2"},
          {"rows", rows},
          {"odd_branch_violations", odd},
          {"violations", r.violations},
          {"passed", r.passed}};
}

Json to_json(const UniversalBaseReport& r) {
  Json sphere = Json::array();
  for (const SphereWitness& w : r.sphere) {
    sphere.push_back({{"genus", w.genus},
                      {"degree", w.data.degree},
                      {"branch_points", w.data.meridians.size()},
                      {"validated", w.validated},
                      {"simple", w.simple},
                      {"realizes_target", w.realizes_target},
                      {"data", to_json(w.data)}});
  }
  Json proj = Json::array();
  for (const ProjectiveObstruction& o : r.projective) {
    proj.push_back({{"crosscaps", o.crosscaps}, {"forced_branch_points", o.forced_branch_points}});
  }
  Json out = {{"degree", r.degree},
              {"genus_max", r.genus_max},
              {"sphere", sphere},
              {"projective_obstructions", proj},
              {"sphere_universal", r.sphere_universal},
              {"projective_obstructed", r.projective_obstructed}};
  if (r.exhaustive) {
    out["exhaustive_check"] = {{"degree", r.exhaustive->degree},
                               {"branch_points", r.exhaustive->branch_points},
                               {"target_crosscaps", r.exhaustive->target_crosscaps},
                               {"valid_tuples", r.exhaustive->valid_tuples},
                               {"target_realized", r.exhaustive->target_realized}};
  } else {
    out["exhaustive_check"] = nullptr;
  }
  return out;
}

Json to_json(const NormalizedExhaustion& e) {
  return {{"document", to_json(e.graph)},
          {"source_depth", e.source_depth},
          {"stable_depth", e.stable_depth},
          {"depth", e.depth()},
          {"level_origin", std::vector<std::size_t>(e.level_origin.begin() + (e.level_origin.empty() ? 0 : 1), e.level_origin.end())},
          {"certificate", {{"kind", certificate_name(e.certificate.kind)}, {"last_branching_level", e.certificate.last_branching_level}}},
          {"euler_characteristic", truncation_euler_characteristic(e.graph)}};
}

Json to_json(const EndCount& c) { return {{"kind", kind_name(c.kind)}, {"value", c.value}}; }

Json to_json(const LayeredReport& r) {
  Json checks = Json::array();
  for (const LayeredCheck& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"failures", c.failures}});
  return {{"checks", checks},
          {"degree", r.degree},
          {"branch_points", r.branch_points},
          {"euler_characteristic", r.euler_characteristic},
          {"ends", r.ends},
          {"passed", r.passed}};
}

Json to_json(const ComposedReport& r) {
  Json labels = Json::array();
  for (const ComposedLabel& l : r.labels) labels.push_back({{"source", l.source}, {"level", l.label.level}, {"index", l.label.index}});
  return {{"cover_degree", r.cover_degree},
          {"staircase_depth", r.staircase_depth},
          {"fiber_count", r.fiber_count},
          {"degree_by_depth", r.degree_by_depth},
          {"labels", labels},
          {"potentially_nonsimple", r.potentially_nonsimple}};
}

}  // namespace branchcov
