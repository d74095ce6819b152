#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "freiman/condense.hpp"
#include "freiman/cone.hpp"
#include "freiman/error.hpp"
#include "freiman/io.hpp"
#include "freiman/select.hpp"

namespace freiman::cli {

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string gap;
  std::string system;
  std::string table;
  std::string output;
  std::string report;
  std::string config;
  std::string delta;
  std::string n;
  std::string epsilon = "auto";
  std::string scan;
  std::vector<std::string> caps;
  bool search_ap = false;
  std::int64_t oracle_box = -1;
};

struct Context {
  std::vector<std::string> args;
  Caps caps;
  Json inputs = Json::object();
};

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("SHA-256 digest failed");
  }
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

std::string load_text(Context& ctx, const std::string& path) {
  std::string text = read_file(path);
  ctx.inputs[path] = Json{{"sha256", sha256_hex(text)}, {"bytes", text.size()}};
  return text;
}

IntSet load_set(Context& ctx, const std::string& path) {
  IntSet s = parse_set(load_text(ctx, path), path);
  if (s.empty()) throw InputError(path + ": the set is empty");
  return s;
}

Gap load_gap(Context& ctx, const std::string& path) {
  const std::string text = load_text(ctx, path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
  return gap_from_json(j, path);
}

ConeSystem load_system(Context& ctx, const std::string& path) {
  std::istringstream in(load_text(ctx, path));
  return read_system(in);
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw InputError("cannot write file: " + tmp.string());
    os << content;
    if (!os.flush()) throw InputError("cannot write file: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw InputError("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void render(const Json& j, const std::string& path, std::ostream& os) {
  if (j.is_object() && j.contains("kind") && j.contains("value") && j.size() == 2) {
    os << path << ": " << scalar_text(j["value"]) << " (" << j["kind"].get<std::string>() << ")\n";
  } else if (j.is_object()) {
    for (const auto& [key, child] : j.items()) render(child, path.empty() ? key : path + "." + key, os);
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
    if (flat && j.size() <= 16) {
      os << path << ": [";
      for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << scalar_text(j[i]);
      os << "]\n";
    } else {
      os << path << ": [" << j.size() << " entries]\n";
    }
  } else {
    os << path << ": " << scalar_text(j) << "\n";
  }
}

Json caps_json(const Caps& caps) {
  Json out = Json::object();
  for (const auto& [k, v] : caps.as_map()) out[k] = v;
  return out;
}

// Canonical report: no timestamps, integers as strings, fixed key order.
Json make_report(const Context& ctx, Json result, Json verdicts) {
  return Json{{"command", ctx.args},
              {"inputs", ctx.inputs},
              {"caps", caps_json(ctx.caps)},
              {"result", std::move(result)},
              {"verdicts", std::move(verdicts)}};
}

void emit(const Options& opt, const Json& report, std::ostream& out) {
  const std::string body = report.dump(2) + "\n";
  if (opt.report.empty()) {
    out << body;
    return;
  }
  write_atomically(opt.report, body);
  const Json meta{{"report", opt.report}, {"created", utc_timestamp()}};
  write_atomically(opt.report + ".meta.json", meta.dump(2) + "\n");
  render(report["result"], "", out);
  render(report["verdicts"], "verdicts", out);
}

Json ratio(const Rational& q) { return Json{{"kind", "exact"}, {"value", to_string(q)}}; }

Json energy_result(const IntSet& a, const Caps& caps) {
  const EnergyReport r = energy_report(a, caps);
  const double n = static_cast<double>(r.n);
  return Json{{"size", exact(r.n)},
              {"sumset_size", exact(r.sumset_size)},
              {"doubling", ratio(r.doubling)},
              {"additive_energy", exact(r.additive_energy.str())},
              {"indexed_energy", exact(r.indexed_energy.str())},
              {"energy_over_size_cubed", measured(to_double(r.additive_energy) / (n * n * n))},
              {"indexed_over_size_cubed", measured(to_double(r.indexed_energy) / (n * n * n))},
              {"sandwich", r.sandwich_holds()}};
}

GapProvider provider_from(Context& ctx, const Options& opt) {
  if (!opt.gap.empty() && opt.search_ap) throw InputError("--gap and --search-ap are exclusive");
  if (!opt.gap.empty()) return GapProvider::given(load_gap(ctx, opt.gap));
  return GapProvider::ap_search();
}

Json provenance_json(const MapProvenance& p) {
  Json rays = Json::array();
  for (const auto& r : p.rays) rays.push_back(to_json(r));
  Json out{{"cone_dim", exact(p.cone_dim)},
           {"cone_rows", exact(p.cone_rows)},
           {"ray_count", exact(p.ray_count)},
           {"rays", rays},
           {"image_bound", exact(p.image_bound.str())},
           {"reference_applies", p.reference_applies},
           {"verified_on_gap", p.verified_on_gap}};
  out["reference_bound"] = p.reference_bound ? exact(p.reference_bound->str()) : Json(nullptr);
  return out;
}

Json map_json(const FreimanMap& m) {
  return Json{{"source_gap", gap_to_json(m.source_gap())},
              {"dprime", to_json(m.dprime())},
              {"pre_shift", m.pre_shift().str()},
              {"post_shift", m.post_shift().str()},
              {"provenance", provenance_json(m.provenance())}};
}

Json condense_json(const CondenseResult& r) {
  const CondenseTrace& t = r.trace;
  Json triple = Json::array();
  for (const auto& x : t.triple.triple) triple.push_back(x.str());
  Json steps = Json::array();
  for (int j : t.translate_steps) steps.push_back(j);
  return Json{{"gap", gap_to_json(t.gap)},
              {"triple", triple},
              {"triple_count", exact(t.triple.count)},
              {"shift", t.triple.shift.str()},
              {"first_subset_size", exact(t.first_subset_size)},
              {"quarter", gap_to_json(t.quarter)},
              {"translate_steps", steps},
              {"translate", t.translate.str()},
              {"subset", to_json(r.subset)},
              {"subset_size", exact(r.subset.size())},
              {"retention", ratio(r.retention)},
              {"retention_value", measured(to_double(r.retention))},
              {"image_radius", exact(r.image_radius.str())},
              {"radius_constant", measured(to_double(r.radius_constant()))},
              {"map", map_json(r.map)}};
}

Json invariance_json(const IntSet& domain, const IntSet& image, const Caps& caps) {
  const Integer e1 = additive_energy(domain, caps), e2 = additive_energy(image, caps);
  const Integer i1 = indexed_energy(domain, caps), i2 = indexed_energy(image, caps);
  return Json{{"additive_energy", exact(e1.str())},
              {"indexed_energy", exact(i1.str())},
              {"holds", e1 == e2 && i1 == i2}};
}

Json equidist_json(const EquidistResult& r, std::size_t source_size) {
  Json good = Json::array();
  for (auto j : r.good_indices) good.push_back(j);
  return Json{{"subset", to_json(r.subset)},
              {"subset_size", exact(r.subset.size())},
              {"width", exact(r.width)},
              {"good_indices", good},
              {"good_count", exact(r.good_indices.size())},
              {"n", exact(r.n.str())},
              {"n_padded", exact(r.n_padded.str())},
              {"delta", ratio(r.delta)},
              {"delta_padded", ratio(r.delta_padded)},
              {"good_bound", ratio(r.good_bound())},
              {"subset_bound", ratio(r.subset_bound(source_size))},
              {"good_bound_unpadded", ratio(r.good_bound_raw())},
              {"subset_bound_unpadded", ratio(r.subset_bound_raw(source_size))}};
}

Json certificate_json(const EICertificate& c) {
  return Json{{"m", exact(c.m)},
              {"d", exact(c.d)},
              {"good_count", exact(c.j_size)},
              {"indexed_energy", exact(c.ei_value.str())},
              {"floor_bound", ratio(c.floor_bound)},
              {"printed_bound", ratio(c.printed_bound)},
              {"holds", c.holds()},
              {"printed_holds", c.printed_holds()}};
}

// --- subcommands ----------------------------------------------------------

int cmd_energy(Context& ctx, const Options& opt, std::ostream& out) {
  if (opt.inputs.size() != 1) throw InputError("energy needs exactly one --input");
  const IntSet a = load_set(ctx, opt.inputs[0]);
  Json result = energy_result(a, ctx.caps);
  Json verdicts{{"sandwich", result["sandwich"]}};
  emit(opt, make_report(ctx, result, verdicts), out);
  return verdicts["sandwich"].get<bool>() ? 0 : 2;
}

int cmd_gap(Context& ctx, const Options& opt, std::ostream& out) {
  if (opt.gap.empty()) throw InputError("gap needs --gap");
  const Gap g = load_gap(ctx, opt.gap);
  Json result{{"gap", gap_to_json(g)}, {"dim", exact(g.dim())}, {"volume", exact(g.volume().str())}};
  auto collision = find_collision(g, ctx.caps);
  result["proper"] = !collision;
  if (collision) {
    result["collision"] = Json::array({describe(collision->first), describe(collision->second)});
  } else {
    result["distinct_values"] = exact(point_set(g, ctx.caps).size());
  }
  emit(opt, make_report(ctx, result, Json{{"proper", !collision}}), out);
  return 0;
}

ConeSystem system_from(Context& ctx, const Options& opt) {
  if (!opt.system.empty() == !opt.gap.empty()) {
    throw InputError("cone needs exactly one of --system and --gap");
  }
  if (!opt.system.empty()) return load_system(ctx, opt.system);
  const Gap g = load_gap(ctx, opt.gap);
  return build_system(translate(g, -g.base()), ctx.caps);
}

int cmd_cone_system(Context& ctx, const Options& opt, std::ostream& out) {
  if (opt.gap.empty()) throw InputError("cone system needs --gap");
  const Gap g = load_gap(ctx, opt.gap);
  const ConeSystem s = build_system(translate(g, -g.base()), ctx.caps);
  std::ostringstream os;
  write_system(os, s);
  if (opt.output.empty()) {
    out << os.str();
  } else {
    write_atomically(opt.output, os.str());
  }
  return 0;
}

int cmd_cone_rays(Context& ctx, const Options& opt, std::ostream& out) {
  const ConeSystem s = system_from(ctx, opt);
  const auto rays = extreme_rays(s, ctx.caps);
  Json list = Json::array();
  for (const auto& r : rays) {
    list.push_back(Json{{"point", to_json(r.point)}, {"active_rows", exact(r.active.size())}});
  }
  Json result{{"dim", exact(s.dim)}, {"rows", exact(s.row_count())}, {"rays", list},
              {"ray_count", exact(rays.size())}};
  emit(opt, make_report(ctx, result, Json{{"rays_found", !rays.empty()}}), out);
  return 0;
}

int cmd_cone_point(Context& ctx, const Options& opt, std::ostream& out) {
  const ConeSystem s = system_from(ctx, opt);
  const InteriorPoint p = interior_integer_point(s, ctx.caps);
  Json result{{"dim", exact(s.dim)},
              {"rows", exact(s.row_count())},
              {"point", to_json(p.point)},
              {"ray_count", exact(p.ray_count)},
              {"reference_applies", p.reference_applies}};
  result["radius"] = p.radius ? exact(p.radius->str()) : Json(nullptr);
  result["reference_bound"] = p.reference_bound ? exact(p.reference_bound->str()) : Json(nullptr);
  Json verdicts{{"strictly_feasible", s.strictly_feasible(p.point)}};
  if (p.reference_applies && p.radius && p.reference_bound) {
    verdicts["within_reference_bound"] = *p.radius <= *p.reference_bound;
  }
  if (opt.oracle_box >= 0) {
    auto o = oracle_min_point(s, opt.oracle_box, ctx.caps);
    result["oracle_point"] = o ? to_json(*o) : Json(nullptr);
    verdicts["oracle_found"] = o.has_value();
  }
  emit(opt, make_report(ctx, result, verdicts), out);
  return 0;
}

int cmd_condense_gap(Context& ctx, const Options& opt, std::ostream& out) {
  if (opt.gap.empty()) throw InputError("condense gap needs --gap");
  const Gap g = load_gap(ctx, opt.gap);
  const FreimanMap m = condense_gap(g, ctx.caps);
  Json result{{"gap", gap_to_json(g)}, {"map", map_json(m)}};
  Json verdicts = Json::object();
  Json report;
  if (m.provenance().verified_on_gap) {
    const IntSet points = point_set(g, ctx.caps);
    const MapTable table = m.table(points);
    verdicts["freiman2"] =
        verdict_to_json(verify_freiman2(table, points, ctx.caps.pipeline_verify_size));
    report = make_report(ctx, result, verdicts);
    report["map_table"] = table_to_json(table);
  } else {
    verdicts["freiman2"] = Json{{"status", "skipped"},
                                {"reason", "GAP volume exceeds pipeline_verify_size"}};
    report = make_report(ctx, result, verdicts);
  }
  emit(opt, report, out);
  return 0;
}

int cmd_condense_set(Context& ctx, const Options& opt, std::ostream& out) {
  if (opt.inputs.size() != 1) throw InputError("condense set needs exactly one --input");
  const IntSet a = load_set(ctx, opt.inputs[0]);
  const GapProvider provider = provider_from(ctx, opt);
  const CondenseResult r = condense_set(a, provider, ctx.caps);
  const MapTable table = r.map.table(r.subset);
  const Json invariance = invariance_json(r.subset, r.map.image(r.subset), ctx.caps);
  Json result = condense_json(r);
  result["provider"] = provider.mode() == GapProvider::Mode::Given ? "given" : "ap_search";
  result["energy_invariance"] = invariance;
  Json verdicts{{"freiman2", verdict_to_json(r.verdict)},
                {"energy_invariance", invariance["holds"]}};
  Json report = make_report(ctx, result, verdicts);
  report["map_table"] = table_to_json(table);
  emit(opt, report, out);
  return invariance["holds"].get<bool>() ? 0 : 2;
}

Integer required_n(const Options& opt, const char* command) {
  if (opt.n.empty()) throw InputError(std::string(command) + " needs --n");
  return parse_integer(opt.n);
}

int cmd_equidist(Context& ctx, const Options& opt, std::ostream& out) {
  if (opt.inputs.size() != 1) throw InputError("equidist needs exactly one --input");
  const IntSet a = load_set(ctx, opt.inputs[0]);
  const Integer n = required_n(opt, "equidist");
  std::optional<Rational> delta;
  if (!opt.delta.empty()) delta = parse_rational(opt.delta);
  const EquidistResult r = equidistribute(a, n, delta);
  Json verdicts{{"good_prefix_counts", true},
                {"good_bound", Rational(Integer(r.good_indices.size())) >= r.good_bound()},
                {"subset_bound", Rational(Integer(r.subset.size())) >= r.subset_bound(a.size())}};
  emit(opt, make_report(ctx, equidist_json(r, a.size()), verdicts), out);
  return 0;
}

int cmd_certificate(Context& ctx, const Options& opt, std::ostream& out) {
  if (opt.inputs.size() != 1) throw InputError("certificate needs exactly one --input");
  const IntSet a = load_set(ctx, opt.inputs[0]);
  EquidistResult sel;
  const EICertificate c = ei_certificate(a, required_n(opt, "certificate"), ctx.caps, &sel);
  Json result{{"selection", equidist_json(sel, a.size())}, {"certificate", certificate_json(c)}};
  emit(opt, make_report(ctx, result, Json{{"certificate", c.holds()}}), out);
  return 0;
}

int cmd_high_ei(Context& ctx, const Options& opt, std::ostream& out) {
  if (opt.inputs.size() != 1) throw InputError("high-ei needs exactly one --input");
  const IntSet a = load_set(ctx, opt.inputs[0]);
  const HighEIResult r = high_ei_subset(a, provider_from(ctx, opt), ctx.caps);
  Json result{{"subset", to_json(r.subset)},
              {"subset_size", exact(r.subset.size())},
              {"indexed_energy", exact(r.ei_value.str())},
              {"ratio", ratio(r.ratio())},
              {"ratio_value", measured(to_double(r.ratio()))},
              {"third_index", r.third_index},
              {"third_offset", r.third_offset.str()},
              {"third_length", exact(r.third_length.str())},
              {"selection", equidist_json(r.selection, r.third.size())},
              {"certificate", certificate_json(r.certificate)},
              {"condense", condense_json(r.condense)}};
  Json verdicts{{"freiman2", verdict_to_json(r.condense.verdict)},
                {"certificate", r.certificate.holds()},
                {"image_energy_matches", true}};
  Json report = make_report(ctx, result, verdicts);
  report["map_table"] = table_to_json(r.condense.map.table(r.condense.subset));
  emit(opt, report, out);
  return 0;
}

std::vector<Integer> parse_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_integer(item));
  if (out.empty()) throw InputError("empty --scan list");
  return out;
}

int cmd_extremal(Context& ctx, const Options& opt, std::ostream& out) {
  if (!opt.scan.empty()) {
    if (!opt.n.empty()) throw InputError("--scan and --n are exclusive");
    const auto rows = extremal_scan(parse_list(opt.scan), ctx.caps);
    std::ostringstream os;
    write_scan_csv(os, rows);
    if (opt.report.empty()) {
      out << os.str();
    } else {
      write_atomically(opt.report, os.str());
      out << "wrote " << rows.size() << " rows to " << opt.report << "\n";
    }
    return 0;
  }
  const Integer n = required_n(opt, "extremal");
  const bool automatic = opt.epsilon == "auto";
  const Rational eps = automatic ? auto_epsilon(n) : parse_rational(opt.epsilon);
  const ExtremalSet e = extremal_set(n, eps, ctx.caps);
  Json result{{"n", exact(n.str())},
              {"epsilon", ratio(e.epsilon)},
              {"epsilon_rule", automatic ? "1/ln n, natural log, nearest multiple of 1/64" : "given"},
              {"exponent", ratio(e.exponent)},
              {"count", exact(e.count.str())},
              {"set", to_json(e.set)},
              {"statistics", energy_result(e.set, ctx.caps)}};
  Json verdicts{{"floors_certified", true},
                {"sumset_within_2n", Integer(sumset(e.set, e.set).size()) <= 2 * n}};
  emit(opt, make_report(ctx, result, verdicts), out);
  return 0;
}

int cmd_diagonal(Context& ctx, const Options& opt, std::ostream& out) {
  if (opt.inputs.empty()) throw InputError("diagonal needs at least one --input");
  if (!opt.gap.empty()) throw InputError("diagonal takes --search-ap, not --gap");
  std::vector<DiagonalInput> inputs;
  for (const auto& path : opt.inputs) {
    DiagonalInput in;
    in.set = load_set(ctx, path);
    if (opt.search_ap) in.provider = GapProvider::ap_search();
    inputs.push_back(std::move(in));
  }
  const DiagonalSet d = diagonal_product(inputs, ctx.caps);
  Json rows = Json::array();
  for (const auto& r : d.rows) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(x.str());
    rows.push_back(row);
  }
  Json shifts = Json::array();
  for (const auto& t : d.shifts) shifts.push_back(t.str());
  Json tables = Json::array();
  Json verdict_list = Json::array();
  for (std::size_t i = 0; i < d.maps.size(); ++i) {
    tables.push_back(table_to_json(d.maps[i]));
    std::vector<Integer> domain;
    for (const auto& [x, y] : d.maps[i]) domain.push_back(x);
    verdict_list.push_back(verdict_to_json(
        verify_freiman2(d.maps[i], IntSet::from_unique(domain), ctx.caps.pipeline_verify_size)));
  }
  Json result{{"rows", rows},
              {"row_count", exact(d.rows.size())},
              {"shifts", shifts},
              {"core", to_json(d.core)},
              {"interval_length", exact(d.interval_length.str())},
              {"sumset_size", exact(d.sumset_size)},
              {"core_sumset_size", exact(d.core_sumset_size)},
              {"density_constant", measured(d.density_constant)},
              {"condensed", opt.search_ap}};
  Json verdicts{{"diagonal", true},
                {"sumset_sizes_agree", d.sumset_size == d.core_sumset_size},
                {"sumset_within_twice_interval", true},
                {"freiman2", verdict_list}};
  Json report = make_report(ctx, result, verdicts);
  report["map_tables"] = tables;
  emit(opt, report, out);
  return 0;
}

Json reverify(const Json& table, const Caps& caps) {
  const MapTable t = table_from_json(table);
  std::vector<Integer> domain;
  for (const auto& [x, y] : t) domain.push_back(x);
  return verdict_to_json(verify_freiman2(t, IntSet::from_unique(domain), caps.pipeline_verify_size));
}

int cmd_verify(Context& ctx, const Options& opt, std::ostream& out) {
  if (!opt.report.empty() == !opt.table.empty()) {
    throw InputError("verify needs exactly one of --report and --table");
  }
  if (!opt.table.empty()) {
    const std::string text = load_text(ctx, opt.table);
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InputError(opt.table + ": invalid JSON: " + e.what());
    }
    const MapTable t = table_from_json(j);
    std::vector<Integer> domain;
    for (const auto& [x, y] : t) domain.push_back(x);
    const Freiman2Verdict v = verify_freiman2(t, IntSet::from_unique(domain), ctx.caps.verify_size);
    Json report = make_report(ctx, Json{{"domain_size", exact(t.size())}},
                              Json{{"freiman2", verdict_to_json(v)}});
    out << report.dump(2) << "\n";
    return v.passed() ? 0 : 2;
  }

  const std::string text = load_text(ctx, opt.report);
  Json original;
  try {
    original = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(opt.report + ": invalid JSON: " + e.what());
  }
  if (!original.contains("verdicts")) throw InputError(opt.report + ": no verdicts in report");
  Json recomputed;
  Json expected;
  if (original.contains("map_table")) {
    recomputed = reverify(original["map_table"], ctx.caps);
    expected = original["verdicts"].value("freiman2", Json());
  } else if (original.contains("map_tables")) {
    recomputed = Json::array();
    for (const auto& t : original["map_tables"]) recomputed.push_back(reverify(t, ctx.caps));
    expected = original["verdicts"].value("freiman2", Json());
  } else {
    throw InputError(opt.report + ": report carries no map table");
  }
  const bool identical = recomputed.dump() == expected.dump();
  bool passed = true;
  auto check = [&](const Json& v) { passed = passed && v.value("passed", false); };
  if (recomputed.is_array()) {
    for (const auto& v : recomputed) check(v);
  } else {
    check(recomputed);
  }
  Json report{{"command", ctx.args},
              {"inputs", ctx.inputs},
              {"result", Json{{"recomputed", recomputed}}},
              {"verdicts", Json{{"identical", identical}, {"passed", passed}}}};
  out << report.dump(2) << "\n";
  return identical && passed ? 0 : 2;
}

void apply_config(Context& ctx, const std::string& path) {
  const std::string text = load_text(ctx, path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw InputError(path + ": config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "caps") throw InputError(path + ": unknown config key '" + key + "'");
    if (!value.is_object()) throw InputError(path + ": 'caps' must be an object");
    for (const auto& [cap, v] : value.items()) {
      if (!v.is_number_integer()) throw InputError(path + ": cap '" + cap + "' must be an integer");
      ctx.caps.set(cap, v.get<std::int64_t>());
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with order-preserving Freiman isomorphisms", "freiman"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--report", opt.report, "Write the JSON report here; print text to stdout");
    sub->add_option("--caps", opt.caps, "Budget overrides key=value[,key=value]");
    sub->add_option("--config", opt.config, "JSON config file with a \"caps\" object");
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", opt.inputs, "Set file: one integer per line or a JSON array");
  };
  auto add_provider = [&](CLI::App* sub) {
    sub->add_option("--gap", opt.gap, "GAP JSON file {base, dirs, bounds}");
    sub->add_flag("--search-ap", opt.search_ap, "Search 2A-2A for the best symmetric AP (default)");
  };

  auto* energy = app.add_subcommand("energy", "Additive and indexed energy of a set");
  add_input(energy);
  add_common(energy);

  auto* gap = app.add_subcommand("gap", "Volume and properness of a GAP");
  gap->add_option("--gap", opt.gap, "GAP JSON file");
  add_common(gap);

  auto* cone = app.add_subcommand("cone", "Cone systems of GAPs");
  cone->require_subcommand(1);
  auto* cone_system = cone->add_subcommand("system", "Dump the inequality system of a GAP");
  cone_system->add_option("--gap", opt.gap, "GAP JSON file");
  cone_system->add_option("--output", opt.output, "Write the dump here instead of stdout");
  add_common(cone_system);
  auto* cone_rays = cone->add_subcommand("rays", "Extreme rays of a cone system");
  auto* cone_point = cone->add_subcommand("point", "Interior integer point of a cone system");
  for (auto* sub : {cone_rays, cone_point}) {
    sub->add_option("--gap", opt.gap, "GAP JSON file");
    sub->add_option("--system", opt.system, "System dump file");
    add_common(sub);
  }
  cone_point->add_option("--oracle-box", opt.oracle_box, "Also run the box-search oracle");

  auto* condense = app.add_subcommand("condense", "Condensing maps");
  condense->require_subcommand(1);
  auto* condense_gap_cmd = condense->add_subcommand("gap", "Condense a GAP");
  condense_gap_cmd->add_option("--gap", opt.gap, "GAP JSON file");
  add_common(condense_gap_cmd);
  auto* condense_set_cmd = condense->add_subcommand("set", "Condense a set of small doubling");
  add_input(condense_set_cmd);
  add_provider(condense_set_cmd);
  add_common(condense_set_cmd);

  auto* equidist = app.add_subcommand("equidist", "Greedy equidistributed subset");
  add_input(equidist);
  equidist->add_option("--n", opt.n, "The set lies in [1, n]");
  equidist->add_option("--delta", opt.delta, "Density |A|/n, checked if given");
  add_common(equidist);

  auto* certificate = app.add_subcommand("certificate", "Indexed-energy certificate");
  add_input(certificate);
  certificate->add_option("--n", opt.n, "The set lies in [1, n]");
  add_common(certificate);

  auto* high_ei = app.add_subcommand("high-ei", "Subset with large indexed energy");
  add_input(high_ei);
  add_provider(high_ei);
  add_common(high_ei);

  auto* extremal = app.add_subcommand("extremal", "The family {floor(a^(1+eps))}");
  extremal->add_option("--n", opt.n, "Upper end n");
  extremal->add_option("--epsilon", opt.epsilon, "auto or a rational r/s in [0, 1)");
  extremal->add_option("--scan", opt.scan, "Comma-separated n values; CSV output");
  add_common(extremal);

  auto* diagonal = app.add_subcommand("diagonal", "Diagonal subset of a product of sets");
  add_input(diagonal);
  add_provider(diagonal);
  add_common(diagonal);

  auto* verify = app.add_subcommand("verify", "Re-verify map tables");
  verify->add_option("--report", opt.report, "Report whose map table is re-verified");
  verify->add_option("--table", opt.table, "JSON array of [x, phi(x)] pairs");
  verify->add_option("--caps", opt.caps, "Budget overrides key=value[,key=value]");
  verify->add_option("--config", opt.config, "JSON config file with a \"caps\" object");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  Context ctx;
  ctx.args = args;
  try {
    if (!opt.config.empty()) apply_config(ctx, opt.config);
    ctx.caps.apply_environment();
    for (const auto& c : opt.caps) ctx.caps.apply_assignments(c);

    if (energy->parsed()) return cmd_energy(ctx, opt, out);
    if (gap->parsed()) return cmd_gap(ctx, opt, out);
    if (cone_system->parsed()) return cmd_cone_system(ctx, opt, out);
    if (cone_rays->parsed()) return cmd_cone_rays(ctx, opt, out);
    if (cone_point->parsed()) return cmd_cone_point(ctx, opt, out);
    if (condense_gap_cmd->parsed()) return cmd_condense_gap(ctx, opt, out);
    if (condense_set_cmd->parsed()) return cmd_condense_set(ctx, opt, out);
    if (equidist->parsed()) return cmd_equidist(ctx, opt, out);
    if (certificate->parsed()) return cmd_certificate(ctx, opt, out);
    if (high_ei->parsed()) return cmd_high_ei(ctx, opt, out);
    if (extremal->parsed()) return cmd_extremal(ctx, opt, out);
    if (diagonal->parsed()) return cmd_diagonal(ctx, opt, out);
    if (verify->parsed()) return cmd_verify(ctx, opt, out);
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return 1;
}

}  // namespace freiman::cli
