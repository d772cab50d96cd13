#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pillow/pillow.hpp"

namespace {

using namespace pillow;

enum exit_code { ok = 0, input_error = 1, partial_failure = 2 };

struct GenusRange {
  long long lo = 0, hi = 0;
};

GenusRange parse_genus_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      long long g = std::stoll(text);
      return {g, g};
    }
    return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
  } catch (const std::exception&) {
    fail(errc::invalid_input, "genus range must look like 2..4, got '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (const auto& part : detail::split(s, ','))
    if (!part.empty()) out.push_back(part);
  return out;
}

Catalog catalog_with(const std::optional<std::string>& extra) {
  Catalog cat = builtin_catalog();
  if (extra)
    for (auto& e : load_catalog_file(*extra)) cat.push_back(std::move(e));
  return cat;
}

void emit(const std::string& body, const std::optional<std::string>& path) {
  if (path)
    write_text_file(*path, body);
  else
    std::cout << body;
}

int run_search_cmd(const SearchSpec& spec, const std::string& out) {
  auto res = run_search(spec);
  write_search_outputs(res, out);
  std::cout << summary_text(res);
  std::cout << "wrote " << out << "/report.json\n";
  return res.partial_failure() ? partial_failure : ok;
}

struct CertifyArgs {
  std::string group;
  std::optional<std::string> triple, subgroup, catalog, cross_ratio, out, from;
  bool timestamp = false;
};

int run_certify_cmd(const CertifyArgs& a) {
  if (a.from) {
    auto doc = load_document(*a.from);
    auto v = revalidate(doc);
    if (!v.ok) {
      std::cerr << "invalid: " << v.detail << "\n";
      return partial_failure;
    }
    std::cout << "valid: " << doc.content_hash << "\n";
    return ok;
  }
  if (a.group.empty()) fail(errc::invalid_input, "certify needs --group or --from");
  Catalog cat = catalog_with(a.catalog);
  const CatalogEntry* e = find_entry(cat, a.group);
  if (!e) fail(errc::invalid_input, "unknown group '" + a.group + "'");
  const FiniteGroup& g = *e->group;

  std::array<Perm, 3> triple;
  if (a.triple) {
    auto t = parse_perm_list(*a.triple, g.degree());
    if (t.size() != 3) fail(errc::invalid_input, "--triple needs three permutations separated by ';'");
    triple = {t[0], t[1], t[2]};
  } else if (e->triple) {
    triple = *e->triple;
  } else {
    fail(errc::invalid_input, "group '" + a.group + "' has no default triple; pass --triple");
  }
  if (!a.subgroup) fail(errc::invalid_input, "certify needs --subgroup");
  std::vector<Perm> gens;
  if (const auto* labelled = e->subgroup(*a.subgroup))
    gens = *labelled;
  else
    gens = parse_perm_list(*a.subgroup, g.degree());

  auto parent = make_galois(e->group, triple);
  Subgroup h = subgroup_generated(g, std::span<const Perm>(gens));
  auto res = certify_document({e->name, e->descriptor}, parent, h, a.cross_ratio);
  if (!res.document) {
    std::cerr << "rejected: " << res.rejection->describe() << "\n";
    return partial_failure;
  }
  if (a.timestamp) res.document->timestamp = utc_timestamp();
  emit(serialize(*res.document), a.out);
  return ok;
}

int run_compare_cmd(const std::vector<std::string>& paths) {
  if (paths.size() != 2) fail(errc::invalid_input, "compare needs exactly two --cert files");
  auto a = load_document(paths[0]);
  auto b = load_document(paths[1]);
  bool same_parent = a.group_generators == b.group_generators && a.triple == b.triple;
  if (same_parent)
    std::cout << "vanishing loci: " << (a.vanishing_locus == b.vanishing_locus ? "equal" : "distinct") << "\n";
  else
    std::cout << "vanishing loci: incomparable (different parent covers)\n";
  if (a.double_cover_degree != b.double_cover_degree) {
    std::cout << "double covers: CertifiedNonIsomorphic (degrees " << a.double_cover_degree << " and "
              << b.double_cover_degree << ")\n";
    return ok;
  }
  DoubleCoverDatum da, db;
  da.over_base = make_cover(a.double_cover_triple);
  db.over_base = make_cover(b.double_cover_triple);
  auto v = differentials_nonisomorphic(da, db);
  std::cout << "double covers: " << v.name() << "\n";
  if (v.witness) std::cout << "note: " << possibly_isomorphic_note << "\n";
  return ok;
}

int run_flatpic_cmd(const std::string& cert, const std::optional<std::string>& modulus, const std::string& out) {
  auto doc = load_document(cert);
  auto t = pillow_tiling_from_gluings(doc.h1, doc.h2, doc.v);
  std::optional<ellmod::HalfPlanePoint> tau;
  std::optional<std::string> text = modulus;
  if (!text && doc.moduli) text = doc.moduli->tau;
  if (text) {
    auto z = ellmod::parse_number(*text);
    if (z.infinite) fail(errc::not_in_upper_half_plane, "modulus must be finite");
    tau = ellmod::HalfPlanePoint{z.z};
  }
  emit_flat_picture(t, tau, out, doc.content_hash.substr(0, 16));
  std::cout << "wrote " << out << "\n";
  return ok;
}

int run_modulus_cmd(const std::string& x_text) {
  auto m = compute_moduli(x_text);
  std::cout << "x = " << m.cross_ratio << "\n";
  std::cout << "tau ≈ " << m.tau << "\n";
  std::cout << "lambda round-trip residual: " << m.lambda_residual << "\n";
  return ok;
}

bool is_input_error(errc c) {
  switch (c) {
    case errc::invalid_input:
    case errc::degree_mismatch:
    case errc::not_a_subgroup:
    case errc::io_failure:
    case errc::singular_matrix:
    case errc::unsupported_field:
    case errc::order_cap_exceeded:
    case errc::singular_modulus:
    case errc::degenerate_points:
    case errc::not_in_upper_half_plane:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pillowcase: certify multifold uniform pillowcase covers"};
  app.require_subcommand(1);

  auto* search = app.add_subcommand("search", "enumerate triples and report multifold covers");
  std::string groups, genus = "2..2", out_dir = "pillowcase-out", dedup = "conjugacy";
  std::size_t min_n = 2, threads = default_thread_count();
  bool emit_certs = false;
  search->add_option("--groups", groups, "comma separated catalog names or catalog files")->required();
  search->add_option("--genus", genus, "genus range a..b");
  search->add_option("--min-n", min_n, "smallest n to report");
  search->add_option("--threads", threads, "worker threads (default: PILLOWCASE_THREADS or hardware)");
  search->add_option("--out", out_dir, "output directory");
  search->add_option("--dedup", dedup, "conjugacy | conjugacy_and_rotation")
      ->check(CLI::IsMember({"conjugacy", "conjugacy_and_rotation"}));
  search->add_flag("--emit-certs", emit_certs, "also write one certificate per certified subgroup");

  auto* cert = app.add_subcommand("certify", "certify one subgroup quotient, or re-validate a certificate");
  CertifyArgs ca;
  cert->add_option("--group", ca.group, "catalog name");
  cert->add_option("--triple", ca.triple, "three permutations separated by ';'");
  cert->add_option("--subgroup", ca.subgroup, "subgroup label or generators separated by ';'");
  cert->add_option("--catalog", ca.catalog, "extra catalog file");
  cert->add_option("--cross-ratio", ca.cross_ratio, "attach moduli computed from this cross-ratio");
  cert->add_option("--out", ca.out, "write the certificate here instead of stdout");
  cert->add_option("--from", ca.from, "re-validate an existing certificate file");
  cert->add_flag("--timestamp", ca.timestamp, "record the creation time in the provenance block");

  auto* compare = app.add_subcommand("compare", "compare two certificates");
  std::vector<std::string> cert_paths;
  compare->add_option("--cert", cert_paths, "certificate file (twice)")->required();

  auto* flatpic = app.add_subcommand("flatpic", "draw the pillowcase tiling as SVG");
  std::string pic_cert, pic_out;
  std::optional<std::string> pic_modulus;
  flatpic->add_option("--cert", pic_cert, "certificate file")->required();
  flatpic->add_option("--modulus", pic_modulus, "tau for the torus shape");
  flatpic->add_option("--out", pic_out, "SVG path")->required();

  auto* modulus = app.add_subcommand("modulus", "tau from a cross-ratio");
  std::string x_text;
  modulus->add_option("--x", x_text, "cross-ratio, e.g. 15*sqrt(3)-26")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return input_error;
  }

  try {
    if (*search) {
      SearchSpec spec;
      spec.groups = split_list(groups);
      auto r = parse_genus_range(genus);
      spec.genus_lo = r.lo;
      spec.genus_hi = r.hi;
      spec.min_n = min_n;
      spec.threads = threads == 0 ? 1 : threads;
      spec.dedup = dedup == "conjugacy" ? DedupMode::conjugacy : DedupMode::conjugacy_and_rotation;
      spec.out_dir = out_dir;
      spec.emit_certificates = emit_certs;
      return run_search_cmd(spec, out_dir);
    }
    if (*cert) return run_certify_cmd(ca);
    if (*compare) return run_compare_cmd(cert_paths);
    if (*flatpic) return run_flatpic_cmd(pic_cert, pic_modulus, pic_out);
    if (*modulus) return run_modulus_cmd(x_text);
  } catch (const pillow::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? input_error : partial_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return partial_failure;
  }
  return ok;
}
