#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "envvor/annulus.hpp"
#include "envvor/diagrams.hpp"
#include "envvor/generate.hpp"

using namespace envvor;

namespace {

constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct Common {
  std::string family;
  std::string strategy = "randomized";
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool no_three_bisector = false;
  bool no_simple_zone = false;
};

std::uint64_t effective_seed(const Common& c) {
  if (c.seed_given) return c.seed;
  if (const char* env = std::getenv("ENVVOR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, std::string("ENVVOR_SEED is not a number: ") + env);
    }
  }
  return PartitionStrategy{}.seed;
}

PartitionStrategy parse_strategy(const std::string& name, std::uint64_t seed) {
  if (name == "randomized") return PartitionStrategy::randomized(seed);
  if (name == "lex") return PartitionStrategy::lex_sorted();
  if (name == "spatial") return PartitionStrategy::spatial_sorted();
  throw Error(Errc::UnknownKind, "unknown strategy '" + name + "'");
}

MergeOptions merge_options(const Common& c) {
  MergeOptions o;
  o.three_bisector = !c.no_three_bisector;
  o.simple_zone = !c.no_simple_zone;
  return o;
}

struct SiteFile {
  std::vector<DistanceFn> sites;
  SiteFamily family;
};

SiteFile load_sites(const std::string& path, const std::string& family_flag) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  std::optional<SiteFamily> header;
  SiteFile f{read_sites(in, &header), SiteFamily::Points};
  if (f.sites.empty()) throw Error(Errc::EmptyInput, "no sites in '" + path + "'");
  if (!family_flag.empty()) f.family = parse_family(family_flag);
  else if (header) f.family = *header;
  else f.family = family_of(f.sites);
  return f;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::ParseError, "cannot write '" + path + "'");
  out << text;
}

void add_common(CLI::App* cmd, Common& c, bool with_family) {
  if (with_family) cmd->add_option("--family", c.family, "points | power | triangle-area | mobius");
  cmd->add_option("--strategy", c.strategy, "randomized | lex | spatial")
      ->check(CLI::IsMember({"randomized", "lex", "spatial"}));
  cmd->add_option("--seed", c.seed, "partition seed (default: ENVVOR_SEED)")
      ->each([&](const std::string&) { c.seed_given = true; });
  cmd->add_flag("--no-three-bisector", c.no_three_bisector, "disable the on-bisector vertex hint");
  cmd->add_flag("--no-simple-zone", c.no_simple_zone, "disable the convex-face zone shortcut");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// ---------------------------------------------------------------------------

int cmd_generate(const std::string& kind, std::size_t n, const Common& c, const std::string& out_path) {
  DatasetKind k = parse_dataset_kind(kind);
  auto sites = generate_sites(k, n, effective_seed(c));
  std::ostringstream s;
  write_sites(s, sites, family_of(sites));
  if (out_path.empty() || out_path == "-") std::cout << s.str();
  else write_file(out_path, s.str());
  return 0;
}

int cmd_compute(const std::string& input, const Common& c, bool farthest, const std::string& json_path,
                const std::string& svg_path) {
  SiteFile f = load_sites(input, c.family);
  auto traits = make_traits(f.family, f.sites);
  PartitionStrategy strategy = parse_strategy(c.strategy, effective_seed(c));
  reset_filter_counters();
  VoronoiRun run;
  auto t0 = std::chrono::steady_clock::now();
  LabeledDiagram d = farthest ? farthest_voronoi(*traits, strategy, merge_options(c), &run)
                              : voronoi(*traits, strategy, merge_options(c), &run);
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  auto report = d.arrangement.validate();
  if (!report.ok) {
    std::cerr << "invalid diagram: " << report.problems.front() << "\n";
    return kInternalError;
  }
  if (!json_path.empty()) write_file(json_path, to_json(d));
  if (!svg_path.empty()) {
    const Arrangement& arr = d.arrangement;
    write_file(svg_path, to_svg(arr, default_viewport(arr), [&](Id face) {
                 std::string s;
                 for (int site : arr.face(face).data) s += (s.empty() ? "" : ",") + std::to_string(site);
                 return s;
               }));
  }
  FilterCounters fc = filter_counters();
  std::cout << "V=" << d.arrangement.num_vertices() << " E=" << d.arrangement.num_edges()
            << " F=" << d.arrangement.num_faces() << "\n";
  std::cout << "family=" << to_string(f.family) << " mode=" << (farthest ? "farthest" : "nearest")
            << " strategy=" << to_string(strategy.kind) << " seed=" << strategy.seed << " merges=" << run.merges
            << " crossings=" << run.total_crossings << " simplified_zones=" << run.simplified_zones
            << " general_zones=" << run.general_zones << " predicate_calls=" << fc.predicate_calls
            << " exact_fallbacks=" << fc.exact_fallbacks << " ms=" << static_cast<long>(ms) << "\n";
  return 0;
}

struct BenchArgs {
  std::string family;
  std::string kinds = "random-square";
  std::string sizes = "100";
  std::string strategies = "randomized";
  std::string seeds = "1";
  std::string out;
};

int cmd_benchmark(const BenchArgs& a) {
  std::ostringstream csv;
  csv << "family,kind,n,strategy,seed,config,overlay_crossings_total,final_crossings,V,E,F,wall_time_ms,"
         "exact_fallback_count,predicate_call_count\n";
  struct Config {
    const char* name;
    bool three;
    bool simple;
  };
  const Config configs[] = {{"none", false, false}, {"three-bisector", true, false}, {"three-bisector+simple-zone", true, true}};
  for (const std::string& kind : split_list(a.kinds))
    for (const std::string& size : split_list(a.sizes))
      for (const std::string& strat : split_list(a.strategies))
        for (const std::string& seed_text : split_list(a.seeds)) {
          std::size_t n = std::stoul(size);
          std::uint64_t seed = std::stoull(seed_text);
          auto sites = generate_sites(parse_dataset_kind(kind), n, seed);
          SiteFamily family = a.family.empty() ? family_of(sites) : parse_family(a.family);
          auto traits = make_traits(family, sites);
          PartitionStrategy strategy = parse_strategy(strat, seed);
          for (const Config& cfg : configs) {
            MergeOptions o;
            o.three_bisector = cfg.three;
            o.simple_zone = cfg.simple;
            reset_filter_counters();
            VoronoiRun run;
            auto t0 = std::chrono::steady_clock::now();
            LabeledDiagram d = voronoi(*traits, strategy, o, &run);
            auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            FilterCounters fc = filter_counters();
            csv << to_string(family) << ',' << kind << ',' << n << ',' << to_string(strategy.kind) << ',' << seed << ','
                << cfg.name << ',' << run.total_crossings << ',' << run.final_overlay.crossings << ','
                << d.arrangement.num_vertices() << ',' << d.arrangement.num_edges() << ','
                << d.arrangement.num_faces() << ',' << static_cast<long>(ms) << ',' << fc.exact_fallbacks << ','
                << fc.predicate_calls << '\n';
          }
        }
  if (a.out.empty() || a.out == "-") std::cout << csv.str();
  else write_file(a.out, csv.str());
  return 0;
}

int cmd_annulus(const std::string& input, const std::string& json_path, bool oracle) {
  SiteFile f = load_sites(input, "points");
  std::vector<Point2> pts;
  for (const DistanceFn& s : f.sites) pts.push_back(std::get<PointSite>(s).p);
  auto a = min_width_annulus_points(pts);
  std::string report = annulus_report(a);
  if (!json_path.empty()) write_file(json_path, report);
  std::cout << report << "\n";
  if (oracle) {
    auto b = brute_force_annulus(pts);
    bool same = a.has_value() == b.has_value() && (!a || compare_widths(a->width(), b->width()) == Ordering::Equal);
    std::cout << "oracle: " << (same ? "agree" : "DISAGREE") << "\n";
    if (!same) return kInternalError;
  }
  return 0;
}

int cmd_validate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  std::stringstream text;
  text << in.rdbuf();
  ValidationReport r = validate_diagram_json(text.str());
  if (r.ok) {
    std::cout << "valid\n";
    return 0;
  }
  for (const auto& p : r.problems) std::cout << p << "\n";
  return kInternalError;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::PredicateFailure:
    case Errc::IncompatibleExtensions:
    case Errc::NotABisectorPiece:
    case Errc::FallbackRequired: return kInternalError;
    default: return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Voronoi diagrams by divide-and-conquer of lower envelopes"};
  app.require_subcommand(1);

  Common gen_c, comp_c, far_c;
  std::string kind, gen_out;
  std::size_t n = 0;
  auto* gen = app.add_subcommand("generate", "write a synthetic site file");
  gen->add_option("kind", kind, "random-square | grid | on-circle | cross | random-disks | random-mobius")->required();
  gen->add_option("n", n, "number of sites")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_c.seed, "random seed (default: ENVVOR_SEED)")
      ->each([&](const std::string&) { gen_c.seed_given = true; });
  gen->add_option("-o,--out", gen_out, "output path (default: stdout)");

  std::string input, json_path, svg_path;
  bool farthest_flag = false;
  auto* comp = app.add_subcommand("compute", "compute a nearest (or farthest) diagram");
  comp->add_option("input", input, "site file")->required();
  add_common(comp, comp_c, true);
  comp->add_flag("--farthest", farthest_flag, "farthest-site diagram");
  comp->add_option("--json", json_path, "write the labeled diagram as JSON");
  comp->add_option("--svg", svg_path, "write an SVG drawing");

  std::string far_input, far_json, far_svg;
  auto* far = app.add_subcommand("farthest", "compute --farthest");
  far->add_option("input", far_input, "site file")->required();
  add_common(far, far_c, true);
  far->add_option("--json", far_json, "write the labeled diagram as JSON");
  far->add_option("--svg", far_svg, "write an SVG drawing");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("benchmark", "CSV of counters over a matrix of inputs and configurations");
  bench->add_option("--family", bench_args.family, "site family (default: implied by the dataset)");
  bench->add_option("--kinds", bench_args.kinds, "comma-separated dataset kinds");
  bench->add_option("--sizes", bench_args.sizes, "comma-separated sizes");
  bench->add_option("--strategies", bench_args.strategies, "comma-separated strategies");
  bench->add_option("--seeds", bench_args.seeds, "comma-separated seeds");
  bench->add_option("-o,--out", bench_args.out, "CSV path (default: stdout)");

  std::string ann_input, ann_json;
  bool oracle = false;
  auto* ann = app.add_subcommand("annulus", "minimum-width annulus of a point file");
  ann->add_option("input", ann_input, "point site file")->required();
  ann->add_option("--json", ann_json, "write the report");
  ann->add_flag("--oracle", oracle, "cross-check with the brute-force candidate scan (n <= 12)");

  std::string check_input;
  auto* check = app.add_subcommand("validate", "re-check a diagram JSON file");
  check->group("");
  check->add_option("input", check_input, "diagram JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*gen) return cmd_generate(kind, n, gen_c, gen_out);
    if (*comp) return cmd_compute(input, comp_c, farthest_flag, json_path, svg_path);
    if (*far) return cmd_compute(far_input, far_c, true, far_json, far_svg);
    if (*bench) return cmd_benchmark(bench_args);
    if (*ann) return cmd_annulus(ann_input, ann_json, oracle);
    if (*check) return cmd_validate(check_input);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
