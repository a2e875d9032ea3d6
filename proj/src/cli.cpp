#include "branchcov/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "branchcov/errors.hpp"
#include "branchcov/serialize.hpp"

namespace branchcov::cli {

namespace {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json parse_json(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

ClosedSurface parse_base(const std::string& name) {
  if (name == "s2" || name == "sphere") return ClosedSurface::sphere();
  if (name == "rp2") return ClosedSurface::projective_plane();
  if (name == "torus") return ClosedSurface::torus();
  if (name == "klein") return ClosedSurface::klein_bottle();
  auto number = [&](std::size_t prefix) {
    const std::string tail = name.substr(prefix);
    if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos || tail.size() > 6) {
      throw InvalidInput("bad base '" + name + "'");
    }
    return static_cast<unsigned>(std::stoul(tail));
  };
  if (name.rfind("genus:", 0) == 0) return ClosedSurface::orientable_genus(number(6));
  if (name.rfind("crosscaps:", 0) == 0) return ClosedSurface::crosscaps(number(10));
  throw InvalidInput("unknown base '" + name + "' (s2, rp2, torus, klein, genus:N, crosscaps:N)");
}

// Options shared by the commands that read a document.
struct Inputs {
  std::string input;
  std::string output;
  // Inline monodromy data.
  std::string base = "s2";
  std::size_t degree = 0;
  std::vector<std::string> meridians, crosscaps, handles;
  // Exhaustion families.
  std::string family;
  std::vector<std::string> params;
  std::size_t levels = 0;
};

void add_output(CLI::App* sub, Inputs& in) {
  sub->add_option("--output", in.output, "Also write the bare result document to this path");
}

void add_hurwitz_inputs(CLI::App* sub, Inputs& in) {
  sub->add_option("--input", in.input, "Hurwitz document (or an envelope holding one)");
  sub->add_option("--base", in.base, "Inline data: base surface (s2, rp2, torus, klein, genus:N, crosscaps:N)");
  sub->add_option("--degree", in.degree, "Inline data: degree");
  sub->add_option("--meridian", in.meridians, "Inline data: meridian in cycle notation, repeatable");
  sub->add_option("--crosscap", in.crosscaps, "Inline data: crosscap image in cycle notation, repeatable");
  sub->add_option("--handle", in.handles, "Inline data: handle pair 'A;B' in cycle notation, repeatable");
}

void add_exhaustion_inputs(CLI::App* sub, Inputs& in) {
  sub->add_option("--input", in.input, "Exhaustion document (or an envelope holding one)");
  sub->add_option("--family", in.family, "Built-in exhaustion family instead of --input");
  sub->add_option("--param", in.params, "Family parameter key=value, repeatable");
  sub->add_option("--levels", in.levels, "Truncation depth J");
}

struct Loaded {
  Json document;
  std::string digest_source;
};

Loaded load(const Inputs& in, const std::vector<std::string>& args) {
  if (!in.input.empty()) {
    const std::string text = read_file(in.input);
    return {unwrap_document(parse_json(text, in.input)), text};
  }
  std::string joined;
  for (const auto& a : args) joined += a + '\n';
  return {Json(nullptr), joined};
}

HurwitzData hurwitz_input(const Inputs& in, const Loaded& l) {
  if (!l.document.is_null()) return hurwitz_from_json(l.document);
  if (in.degree == 0) throw InvalidInput("give --input or inline data with --degree");
  HurwitzData h;
  h.base = parse_base(in.base);
  h.degree = in.degree;
  for (const auto& m : in.meridians) h.meridians.push_back(parse_cycles(m, in.degree));
  for (const auto& c : in.crosscaps) h.crosscaps.push_back(parse_cycles(c, in.degree));
  for (const auto& pair : in.handles) {
    const auto semi = pair.find(';');
    if (semi == std::string::npos) throw InvalidInput("handle '" + pair + "' needs the form 'A;B'");
    h.handles.emplace_back(parse_cycles(pair.substr(0, semi), in.degree), parse_cycles(pair.substr(semi + 1), in.degree));
  }
  return h;
}

ExhaustionGraph exhaustion_input(const Inputs& in, const Loaded& l) {
  ExhaustionGraph g;
  if (!l.document.is_null()) {
    if (!in.family.empty()) throw InvalidInput("give either --input or --family");
    g = exhaustion_from_json(l.document);
  } else {
    if (in.family.empty()) throw InvalidInput("give --input or --family");
    std::map<std::string, long> params;
    for (const auto& p : in.params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos) throw InvalidInput("parameter '" + p + "' is not key=value");
      try {
        std::size_t used = 0;
        params[p.substr(0, eq)] = std::stol(p.substr(eq + 1), &used);
        if (used != p.size() - eq - 1) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw InvalidInput("parameter '" + p + "' needs an integer value");
      }
    }
    g.supplier = make_supplier(in.family, params);
  }
  const std::size_t depth = in.levels != 0 ? in.levels : g.depth();
  if (depth == 0) throw InvalidInput("a supplied family needs --levels");
  return materialize(g, depth);
}

LayeredCover layered_input(const Loaded& l) {
  if (l.document.is_null()) throw InvalidInput("give --input with a layered document");
  return layered_from_json(l.document);
}

void write_output(const std::string& path, const Json& doc) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

Json verification(const LayeredCover& c, bool& ok) {
  const LayeredReport r = verify_layered(c);
  Json out = to_json(r);
  Json restriction = Json::array();
  bool compatible = true;
  for (std::size_t i = 1; r.passed && i < c.depth; ++i) {
    const bool x = restriction_compatibility(c, i);
    compatible = compatible && x;
    restriction.push_back(x);
  }
  out["restriction_compatible"] = restriction;
  ok = r.passed && compatible;
  out["passed"] = ok;
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Branched covers of surfaces: monodromy data, censuses and layered covers of the plane"};
  app.name(tool_name);
  app.set_version_flag("--version", tool_version);
  app.require_subcommand(1, 1);
  Inputs in;

  auto* classify = app.add_subcommand("classify", "Closed surface with the given Euler characteristic");
  long chi = 0;
  std::string orientable = "true";
  classify->add_option("--chi", chi, "Euler characteristic")->required();
  classify->add_option("--orientable", orientable, "true or false")->check(CLI::IsMember({"true", "false"}));

  auto* validate_cmd = app.add_subcommand("validate", "Check monodromy data against the surface relation");
  add_hurwitz_inputs(validate_cmd, in);
  auto* total = app.add_subcommand("total-space", "Components and classification of the total space");
  add_hurwitz_inputs(total, in);

  auto* construct = app.add_subcommand("construct", "Build a standard cover");
  std::string family;
  unsigned genus = 0, crosscaps = 1;
  construct->add_option("--family", family, "hyperelliptic or cyclic-rp2")
      ->required()
      ->check(CLI::IsMember({"hyperelliptic", "cyclic-rp2"}));
  construct->add_option("--genus", genus, "Genus of the hyperelliptic total space");
  construct->add_option("--crosscaps", crosscaps, "Crosscap number of the cyclic cover");
  add_output(construct, in);

  auto* stab = app.add_subcommand("stabilize", "Raise the degree of a simple cover of an orientable surface by one");
  add_hurwitz_inputs(stab, in);
  add_output(stab, in);
  auto* dbl = app.add_subcommand("compose-double", "Compose a cover of the sphere with the double cover of RP^2");
  add_hurwitz_inputs(dbl, in);
  add_output(dbl, in);

  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive census of covers");
  std::string base = "s2";
  std::size_t degree = 0, branch = 0;
  bool simple = false;
  unsigned workers = 1;
  enumerate->add_option("--base", base, "s2, rp2, torus, klein, genus:N or crosscaps:N");
  enumerate->add_option("--degree", degree, "Cover degree")->required();
  enumerate->add_option("--branch-points", branch, "Number of branch points")->required();
  enumerate->add_flag("--simple", simple, "Transposition meridians only");
  enumerate->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* audit = app.add_subcommand("parity-audit", "Simple census over RP^2 checking the parity law");
  std::size_t dmax = 0, bmax = 0;
  audit->add_option("--dmax", dmax, "Largest degree")->required();
  audit->add_option("--bmax", bmax, "Largest branch count")->required();
  audit->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* universal = app.add_subcommand("universal-report", "Sphere witnesses and RP^2 obstructions in degree n");
  unsigned genus_max = 0;
  universal->add_option("--degree", degree, "Degree n >= 2")->required();
  universal->add_option("--genus-max", genus_max, "Largest genus");
  universal->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* norm = app.add_subcommand("normalize", "Normalize a compact exhaustion");
  add_exhaustion_inputs(norm, in);
  add_output(norm, in);

  auto* ends = app.add_subcommand("count-ends", "Count ends of a normalized exhaustion");
  add_exhaustion_inputs(ends, in);
  bool normalize_first = false;
  std::size_t at = 0;
  ends->add_flag("--normalize", normalize_first, "Normalize before counting");
  ends->add_option("--at", at, "Level to count through (default: deepest stable level)");

  auto* build = app.add_subcommand("build-cover", "Layered branched cover of the plane for an exhaustion");
  add_exhaustion_inputs(build, in);
  build->add_flag("--normalize", normalize_first, "Normalize before building");
  build->add_option("--at", at, "Truncation level of the cover (default: deepest stable level)");
  add_output(build, in);

  auto* stair = app.add_subcommand("staircase", "Staircase cover truncated at --levels");
  bool verify_flag = false;
  stair->add_option("--levels", in.levels, "Truncation depth")->required();
  stair->add_flag("--verify", verify_flag, "Attach the verification report");
  add_output(stair, in);

  auto* verify = app.add_subcommand("verify", "Verify a layered cover");
  verify->add_option("--input", in.input, "Layered document")->required();

  auto* compose = app.add_subcommand("compose-staircase", "Bookkeeping of a layered cover composed with the staircase");
  compose->add_option("--input", in.input, "Layered document")->required();
  compose->add_option("--levels", in.levels, "Staircase depth J (0 allowed)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << tool_version << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  int status = 0;
  try {
    const Loaded loaded = load(in, args);
    Json result;
    Json document;  // written by --output

    if (sub == classify) {
      result = to_json(branchcov::classify(chi, orientable == "true"));
    } else if (sub == validate_cmd) {
      const ValidationReport r = branchcov::validate(hurwitz_input(in, loaded));
      result = to_json(r);
      status = r.ok() ? 0 : 1;
    } else if (sub == total) {
      result = to_json(total_space(hurwitz_input(in, loaded)));
    } else if (sub == construct) {
      document = to_json(family == "hyperelliptic" ? construct_hyperelliptic(genus) : construct_cyclic_rp2(crosscaps));
      result = document;
    } else if (sub == stab) {
      document = to_json(stabilize(hurwitz_input(in, loaded)));
      result = document;
    } else if (sub == dbl) {
      document = to_json(compose_orientation_double(hurwitz_input(in, loaded)));
      result = document;
    } else if (sub == enumerate) {
      SearchOptions opt{SearchLimits::from_environment(), workers};
      result = to_json(enumerate_covers(parse_base(base), degree, branch, simple, opt));
    } else if (sub == audit) {
      SearchOptions opt{SearchLimits::from_environment(), workers};
      const AuditReport r = parity_audit(dmax, bmax, opt);
      result = to_json(r);
      status = r.passed ? 0 : 1;
    } else if (sub == universal) {
      SearchOptions opt{SearchLimits::from_environment(), workers};
      const UniversalBaseReport r = universal_base_report_dim2(degree, genus_max, opt);
      result = to_json(r);
      status = r.sphere_universal && r.projective_obstructed ? 0 : 1;
    } else if (sub == norm) {
      const NormalizedExhaustion n = normalize(exhaustion_input(in, loaded));
      result = to_json(n);
      document = result.at("document");
    } else if (sub == ends) {
      const ExhaustionGraph g = exhaustion_input(in, loaded);
      EndCount c;
      std::size_t level = at;
      if (normalize_first) {
        const NormalizedExhaustion n = normalize(g);
        if (level == 0) level = n.stable_depth;
        c = count_ends(n, level);
      } else {
        if (level == 0) level = g.depth();
        c = count_ends(g, level);
      }
      result = to_json(c);
      result["level"] = level;
    } else if (sub == build) {
      const ExhaustionGraph g = exhaustion_input(in, loaded);
      LayeredCover cover;
      if (normalize_first) {
        const NormalizedExhaustion n = normalize(g);
        cover = build_cover(n, at != 0 ? at : n.stable_depth);
      } else {
        cover = build_cover(g, at != 0 ? at : g.depth());
      }
      document = to_json(cover);
      result = document;
    } else if (sub == stair) {
      const LayeredCover c = staircase(in.levels);
      document = to_json(c);
      if (verify_flag) {
        bool ok = false;
        result = {{"document", document}, {"verification", verification(c, ok)}};
        status = ok ? 0 : 1;
      } else {
        result = document;
      }
    } else if (sub == verify) {
      bool ok = false;
      result = verification(layered_input(loaded), ok);
      status = ok ? 0 : 1;
    } else if (sub == compose) {
      result = to_json(compose_with_staircase(layered_input(loaded), in.levels));
    }

    write_output(in.output, document.is_null() ? result : document);
    const Json envelope = {{"tool", tool_name},
                           {"tool_version", tool_version},
                           {"command", command},
                           {"input_digest", "sha256:" + sha256_hex(loaded.digest_source)},
                           {"result", result}};
    out << envelope.dump(2) << '\n';
    return status;
  } catch (const UnverifiedInput& e) {
    err << "verification failure: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace branchcov::cli
