// k3walls: exact wall-and-chamber computations for moduli of sheaves on K3
// surfaces.  Every subcommand prints deterministic JSON (or an aligned text
// table) built from arbitrary-precision arithmetic only.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "k3walls/cones.hpp"
#include "k3walls/flops.hpp"
#include "k3walls/hilb.hpp"
#include "k3walls/jsonio.hpp"
#include "k3walls/rank2.hpp"

using namespace k3walls;

namespace {

struct GoldenMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

void print_aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    std::cout << line << "\n";
  }
}

ordered_json json_pair2(const Pair2& p) {
  return ordered_json::array({json_int(p.first), json_int(p.second)});
}

ordered_json wall_info_json(const WallInfo& w) {
  ordered_json j;
  j["normal"] = json_vec(w.normal);
  j["witness"] = json_vec(w.witness);
  j["witness_square"] = json_int(w.witness_square);
  j["witness_pairing"] = json_int(w.witness_pairing);
  j["kind"] = wall_kind_name(w.kind);
  j["totally_semistable"] = tss_name(w.tss);
  j["label"] = wall_label(w.kind, w.tss);
  return j;
}

ordered_json wall_list_json(const WallList& wl) {
  ordered_json j;
  j["walls"] = ordered_json::array();
  for (const auto& w : wl.walls) j["walls"].push_back(wall_info_json(w));
  j["complete"] = wl.complete;
  return j;
}

void wall_list_table(const WallList& wl) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"normal", "witness", "square", "pairing", "type"});
  for (const auto& w : wl.walls)
    rows.push_back({vec_to_string(w.normal), vec_to_string(w.witness), w.witness_square.str(),
                    w.witness_pairing.str(), wall_label(w.kind, w.tss)});
  print_aligned(rows);
  if (!wl.complete) std::cout << "(enumeration truncated: listing may be incomplete)\n";
}

ordered_json movable_hilb_json(const Int& d, const Int& n, const MovableHilb& m) {
  ordered_json j;
  j["d"] = json_int(d);
  j["n"] = json_int(n);
  j["case"] = m.case_id;
  j["gamma"] = json_rat(m.gamma);
  j["witness"] = json_vec(m.witness);
  j["witness_kind"] = m.witness_kind;
  j["pell_x"] = json_int(m.pell_x);
  j["pell_y"] = json_int(m.pell_y);
  return j;
}

ordered_json nef2_json(const Int& d, const NefHilb2& nf) {
  ordered_json j;
  j["d"] = json_int(d);
  j["equals_movable"] = nf.equals_movable;
  j["gamma"] = json_rat(nf.gamma);
  j["witness"] = json_vec(nf.witness);
  j["pell_x"] = json_int(nf.pell_x);
  j["pell_y"] = json_int(nf.pell_y);
  return j;
}

ordered_json walls_table_json(const WallTable& T) {
  ordered_json j;
  j["d"] = json_int(T.d);
  j["n"] = json_int(T.n);
  j["movable"] = movable_hilb_json(T.d, T.n, T.movable);
  j["spherical_pairing_cap"] = json_int(T.spherical_pairing_cap);
  j["rows"] = ordered_json::array();
  for (const auto& r : T.rows) {
    ordered_json row;
    row["gamma"] = json_rat(r.gamma);
    row["witness"] = json_vec(r.witness);
    row["witness_square"] = json_int(r.witness_square);
    row["witness_pairing"] = json_int(r.witness_pairing);
    row["kind"] = wall_kind_name(r.kind);
    row["totally_semistable"] = tss_name(r.tss);
    row["label"] = wall_label(r.kind, r.tss);
    j["rows"].push_back(row);
  }
  return j;
}

void walls_table_table(const WallTable& T) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"gamma", "witness", "square", "pairing", "type"});
  for (const auto& r : T.rows)
    rows.push_back({rat_to_string(r.gamma), vec_to_string(r.witness), r.witness_square.str(),
                    r.witness_pairing.str(), wall_label(r.kind, r.tss)});
  print_aligned(rows);
  std::cout << "movable boundary: gamma = " << rat_to_string(T.movable.gamma) << " (case "
            << T.movable.case_id << ", " << T.movable.witness_kind << ")\n";
}

ordered_json flops_json(const Pair2& v, const Int& vsq, const FlopStrata& F) {
  ordered_json j;
  j["v"] = json_pair2(v);
  j["v_square"] = json_int(vsq);
  j["spherical_free"] = F.spherical_free;
  j["isotropic_free"] = F.isotropic_free;
  j["partitions"] = ordered_json::array();
  for (const auto& P : F.partitions) {
    ordered_json parts = ordered_json::array();
    for (const auto& p : P.parts) parts.push_back(json_pair2(p));
    j["partitions"].push_back(parts);
  }
  j["nontrivial"] = F.nontrivial.size();
  j["two_part"] = ordered_json::array();
  for (const auto& s : F.two_part) {
    ordered_json t;
    t["a"] = json_pair2(s.a);
    t["b"] = json_pair2(s.b);
    t["codim"] = json_int(s.codim);
    j["two_part"].push_back(t);
  }
  j["components"] = F.components;
  j["component_of"] = ordered_json::array();
  for (long c : F.component_of) j["component_of"].push_back(c);
  j["maximal"] = ordered_json::array();
  for (size_t i : F.maximal) j["maximal"].push_back(i);
  return j;
}

std::string pair2_str(const Pair2& p) {
  return "(" + p.first.str() + "," + p.second.str() + ")";
}

void flops_table(const FlopStrata& F) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"partition", "parts", "component", "maximal"});
  for (size_t i = 0; i < F.nontrivial.size(); ++i) {
    std::string parts;
    for (const auto& p : F.nontrivial[i].parts) parts += pair2_str(p);
    bool mx = false;
    for (size_t m : F.maximal)
      if (m == i) mx = true;
    rows.push_back({std::to_string(i), parts, std::to_string(F.component_of[i]),
                    mx ? "yes" : "no"});
  }
  print_aligned(rows);
  std::cout << "components: " << F.components << "\n";
  std::cout << "two-part strata:\n";
  for (const auto& s : F.two_part)
    std::cout << "  " << pair2_str(s.a) << " + " << pair2_str(s.b) << "  codim "
              << s.codim.str() << "\n";
}

// ---- golden payloads --------------------------------------------------------

ordered_json golden_payload(const std::string& name) {
  if (name == "ex13_4") return walls_table_json(walls_table(1, 7));
  if (name == "ex13_2") {
    ordered_json j;
    j["nef2"] = nef2_json(31, nef_hilb_n2(31));
    j["movable"] = movable_hilb_json(31, 2, movable_hilb(31, 2));
    return j;
  }
  if (name == "prop13_1_grid") {
    ordered_json j;
    j["rows"] = ordered_json::array();
    for (Int n = 3; n <= 50; ++n) {
      Int d = n - 2;
      MovableHilb m = movable_hilb(d, n);
      ordered_json row;
      row["n"] = json_int(n);
      row["d"] = json_int(d);
      row["case"] = m.case_id;
      row["gamma"] = json_rat(m.gamma);
      row["pell_x"] = json_int(m.pell_x);
      row["pell_y"] = json_int(m.pell_y);
      j["rows"].push_back(row);
    }
    return j;
  }
  if (name == "rank2_examples") {
    ordered_json j;
    j["divisorial_witnesses"] = ordered_json::array();
    for (const auto& w : rank2_divisorial_witnesses(20))
      j["divisorial_witnesses"].push_back(ordered_json::array({w[0], w[1], w[2]}));
    Rank2FlopScan scan = rank2_flop_scan(50);
    ordered_json s;
    s["bound"] = 50;
    s["spherical_found"] = scan.spherical_found;
    s["splittings"] = json_int(scan.splittings);
    s["non_divisorial_splittings"] = json_int(scan.non_divisorial_splittings);
    s["candidates_checked"] = json_int(scan.candidates_checked);
    j["flop_scan"] = s;
    ordered_json cert;
    cert["modulus"] = 4;
    cert["insoluble"] = rank2_flop_residue_certificate(4);
    j["residue_certificate"] = cert;
    return j;
  }
  if (name == "ex14_3") {
    Mat gram{{2, 10}, {10, 2}};
    Pair2 v{1, 2};
    FlopStrata F = flop_strata(gram, v, false);
    return flops_json(v, pf2(form_of_gram(gram), v), F);
  }
  if (name == "ex14_4") {
    ordered_json j;
    j["cases"] = ordered_json::array();
    for (Int m : {Int(3), Int(5), Int(7)}) {
      Int M = 10 * m;
      Mat gram{{-4, 2 * M}, {2 * M, 4}};
      Pair2 v{m, 2};
      FlopStrata F = flop_strata(gram, v, false);
      ordered_json c;
      c["m"] = json_int(m);
      c["M"] = json_int(M);
      c["strata"] = flops_json(v, pf2(form_of_gram(gram), v), F);
      j["cases"].push_back(c);
    }
    return j;
  }
  throw InputError("unknown golden name '" + name +
                   "' (expected one of ex13_2, ex13_4, prop13_1_grid, rank2_examples, "
                   "ex14_3, ex14_4)");
}

const std::vector<std::string> kGoldenNames = {"ex13_2",         "ex13_4", "prop13_1_grid",
                                               "rank2_examples", "ex14_3", "ex14_4"};

void json_diff(const ordered_json& want, const ordered_json& got, const std::string& path,
               std::vector<std::string>& out) {
  if (out.size() >= 20) return;
  if (want == got) return;
  if (want.is_object() && got.is_object()) {
    for (auto it = want.begin(); it != want.end(); ++it) {
      if (!got.contains(it.key()))
        out.push_back(path + "." + it.key() + ": missing (expected " + it.value().dump() + ")");
      else
        json_diff(it.value(), got.at(it.key()), path + "." + it.key(), out);
    }
    for (auto it = got.begin(); it != got.end(); ++it)
      if (!want.contains(it.key()))
        out.push_back(path + "." + it.key() + ": unexpected field " + it.value().dump());
    return;
  }
  if (want.is_array() && got.is_array()) {
    if (want.size() != got.size())
      out.push_back(path + ": length " + std::to_string(got.size()) + ", expected " +
                    std::to_string(want.size()));
    size_t n = std::min(want.size(), got.size());
    for (size_t i = 0; i < n; ++i)
      json_diff(want[i], got[i], path + "[" + std::to_string(i) + "]", out);
    return;
  }
  out.push_back(path + ": expected " + want.dump() + ", got " + got.dump());
}

void golden_write(const std::string& dir, const std::string& name) {
  std::string path = dir + "/" + name + ".json";
  std::ofstream f(path);
  if (!f) throw InputError("cannot write golden file '" + path + "'");
  f << golden_payload(name).dump(2) << "\n";
  std::cout << "wrote " << path << "\n";
}

void golden_check(const std::string& dir, const std::string& name) {
  std::string path = dir + "/" + name + ".json";
  std::ifstream f(path);
  if (!f) throw GoldenMismatch("golden file '" + path + "' is missing\n");
  std::ostringstream ss;
  ss << f.rdbuf();
  std::string stored = ss.str();
  std::string fresh = golden_payload(name).dump(2) + "\n";
  if (stored == fresh) {
    std::cout << name << ": ok\n";
    return;
  }
  std::string report = "golden mismatch for '" + name + "'\n";
  ordered_json stored_j = ordered_json::parse(stored, nullptr, false);
  if (stored_j.is_discarded()) {
    report += "  stored file is not valid JSON\n";
  } else {
    std::vector<std::string> diffs;
    json_diff(stored_j, ordered_json::parse(fresh), name, diffs);
    if (diffs.empty()) diffs.push_back(name + ": formatting differs (semantically equal)");
    for (const auto& d : diffs) report += "  " + d + "\n";
  }
  throw GoldenMismatch(report);
}

// minimal positive solution of q = n from the full representation data:
// prefer x > 0, then small x, then y > 0, then small |y|
std::optional<std::pair<Int, Int>> repr_minimal_positive(const BinaryForm& Q, const Int& n) {
  RepresentResult r = represent(Q, n);
  std::vector<std::pair<Int, Int>> cands;
  auto add = [&](const std::pair<Int, Int>& s) {
    cands.push_back(s);
    cands.push_back({-s.first, -s.second});
  };
  switch (r.kind) {
    case RepKind::Empty: return std::nullopt;
    case RepKind::Plane: return std::make_pair(Int(0), Int(0));
    case RepKind::Finite:
      for (const auto& s : r.sols) add(s);
      break;
    case RepKind::Classes: {
      Mat M = form_automorph(Q), Minv = inv2(M);
      for (const auto& s : r.sols) {
        Pair2 cur{s.first, s.second};
        for (int k = 0; k <= 64; ++k) {
          add(cur);
          cur = apply2(M, cur);
        }
        cur = {s.first, s.second};
        for (int k = 0; k < 64; ++k) {
          cur = apply2(Minv, cur);
          add(cur);
        }
      }
      break;
    }
    case RepKind::Lines:
      for (const auto& ln : r.lines)
        for (Int k = -64; k <= 64; ++k)
          add({ln.base.first + k * ln.dir.first, ln.base.second + k * ln.dir.second});
      break;
  }
  if (cands.empty()) return std::nullopt;
  auto key = [](const std::pair<Int, Int>& s) {
    return std::make_tuple(s.first <= 0, s.first, s.second <= 0, abs_int(s.second));
  };
  auto best = cands[0];
  for (const auto& s : cands)
    if (key(s) < key(best)) best = s;
  return best;
}

const char* rep_kind_name(RepKind k) {
  switch (k) {
    case RepKind::Empty: return "empty";
    case RepKind::Finite: return "finite";
    case RepKind::Classes: return "classes";
    case RepKind::Lines: return "lines";
    default: return "plane";
  }
}

void key_value_table(const ordered_json& j, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_object()) {
      std::cout << indent << it.key() << ":\n";
      key_value_table(it.value(), indent + "  ");
    } else {
      std::cout << indent << it.key() << ": " << it.value().dump() << "\n";
    }
  }
}

void render(const ordered_json& j, const std::string& format) {
  if (format == "table")
    key_value_table(j);
  else
    emit(j);
}

BinaryForm parse_gram3(const std::string& s) {
  Vec g = parse_vec(s);
  if (g.size() != 3) throw InputError("form needs exactly three entries a,b,c");
  return BinaryForm{g[0], g[1], g[2]};
}

Pair2 parse_pair(const std::string& s) {
  Vec g = parse_vec(s);
  if (g.size() != 2) throw InputError("expected an integer pair x,y");
  return {g[0], g[1]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact wall-and-chamber computations for moduli of sheaves on K3 surfaces"};
  app.require_subcommand(1);

  std::string lattice_arg, v_arg, a_arg, u_arg, w_arg, region_arg, ample_arg;
  std::string format = "json";
  std::string gram_arg, mode_arg, orientation_arg = "plus";
  std::string divisor_arg, exceptional_arg, d_arg, n_arg, bound_arg = "100";
  std::string box_arg = "25", count_arg = "5";
  bool strict = false;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "output format: json or table")
        ->check(CLI::IsMember({"json", "table"}));
  };

  // pair
  auto* c_pair = app.add_subcommand("pair", "Mukai pairing and squares of classes");
  c_pair->add_option("--lattice", lattice_arg, "lattice JSON (inline or file path)")->required();
  c_pair->add_option("--u", u_arg, "first class, comma-separated")->required();
  c_pair->add_option("--w", w_arg, "second class (omit to just square --u)");
  add_format(c_pair);
  c_pair->callback([&] {
    Lattice L = parse_lattice(lattice_arg);
    Vec u = parse_vec(u_arg);
    ordered_json j;
    if (w_arg.empty()) {
      j["square"] = json_int(norm2(L, u));
    } else {
      Vec w = parse_vec(w_arg);
      j["pairing"] = json_int(pairing(L, u, w));
      j["u_square"] = json_int(norm2(L, u));
      j["w_square"] = json_int(norm2(L, w));
    }
    render(j, format);
  });

  // classify
  auto* c_cls = app.add_subcommand("classify", "classify the wall spanned by v and a class a");
  c_cls->add_option("--lattice", lattice_arg)->required();
  c_cls->add_option("--v", v_arg, "primitive class with positive square")->required();
  c_cls->add_option("--a", a_arg, "class spanning the wall with v")->required();
  add_format(c_cls);
  c_cls->callback([&] {
    Lattice L = parse_lattice(lattice_arg);
    Vec v = parse_vec(v_arg), a = parse_vec(a_arg);
    auto W = make_wall_lattice(L, v, a);
    if (!W)
      throw InputError(
          "the span of v and a is not hyperbolic: the pair defines no wall");
    WallClassification c = classify(*W);
    ordered_json j;
    j["kind"] = wall_kind_name(c.kind);
    j["totally_semistable"] = tss_name(c.tss);
    j["label"] = wall_label(c.kind, c.tss);
    j["gram2"] = ordered_json::array();
    for (const auto& row : W->sub.gram) j["gram2"].push_back(json_vec(row));
    j["v_coords"] = json_pair2(W->v);
    j["witnesses"] = ordered_json::array();
    for (const auto& [cond, cls] : c.witnesses) {
      ordered_json wj;
      wj["condition"] = cond;
      wj["class"] = json_vec(cls);
      j["witnesses"].push_back(wj);
    }
    render(j, format);
  });

  // minimal
  auto* c_min = app.add_subcommand("minimal", "Weyl-reflect a class into the fundamental chamber");
  c_min->add_option("--gram2", gram_arg, "rank-2 gram entries a,b,c for [[a,b],[b,c]]")
      ->required();
  c_min->add_option("--v", v_arg, "integer pair x,y")->required();
  c_min->add_option("--orientation", orientation_arg, "plus or minus")
      ->check(CLI::IsMember({"plus", "minus"}));
  add_format(c_min);
  c_min->callback([&] {
    BinaryForm Q = parse_gram3(gram_arg);
    if (form_disc4(Q) <= 0) throw InputError("the form must be hyperbolic");
    Pair2 v = parse_pair(v_arg);
    if (pf2(Q, v) <= 0) throw InputError("v^2 must be positive");
    Orientation ori =
        orientation_arg == "minus" ? Orientation::MinusSide : Orientation::PlusSide;
    EffCone cone = effective_cone_core(Q, v, ori);
    auto [v0, word] = minimal_class_core(Q, v, cone);
    ordered_json j;
    j["v0"] = json_pair2(v0);
    j["word"] = ordered_json::array();
    for (const auto& s : word) j["word"].push_back(json_pair2(s));
    j["cone_rays"] = ordered_json::array();
    for (const auto& r : cone.rays) j["cone_rays"].push_back(json_pair2(r));
    j["spherical_rays"] = ordered_json::array();
    for (const auto& r : cone.spherical_rays) j["spherical_rays"].push_back(json_pair2(r));
    j["irrational_boundary"] = cone.irrational_boundary;
    render(j, format);
  });

  // orbit
  auto* c_orb = app.add_subcommand("orbit", "reflection orbit of a class, slope-ordered");
  c_orb->add_option("--gram2", gram_arg)->required();
  c_orb->add_option("--v", v_arg)->required();
  c_orb->add_option("--count", count_arg, "elements on each side of v0");
  c_orb->add_option("--orientation", orientation_arg)->check(CLI::IsMember({"plus", "minus"}));
  add_format(c_orb);
  c_orb->callback([&] {
    BinaryForm Q = parse_gram3(gram_arg);
    if (form_disc4(Q) <= 0) throw InputError("the form must be hyperbolic");
    Pair2 v = parse_pair(v_arg);
    if (pf2(Q, v) <= 0) throw InputError("v^2 must be positive");
    Int count = parse_int(count_arg);
    if (count < 0 || count > 10000) throw InputError("count must lie in [0, 10000]");
    Orientation ori =
        orientation_arg == "minus" ? Orientation::MinusSide : Orientation::PlusSide;
    EffCone cone = effective_cone_core(Q, v, ori);
    auto [v0, word] = minimal_class_core(Q, v, cone);
    auto elems = orbit_list_core(Q, v0, static_cast<long>(count), cone);
    ordered_json j;
    j["v0"] = json_pair2(v0);
    j["count"] = json_int(count);
    j["elements"] = ordered_json::array();
    for (const auto& e : elems) j["elements"].push_back(json_pair2(e));
    render(j, format);
  });

  // nef / movable / effective / mori
  auto* c_nef = app.add_subcommand("nef", "walls of the nef cone inside a chamber region");
  auto* c_mov = app.add_subcommand("movable", "walls of the movable cone");
  auto* c_eff = app.add_subcommand("effective", "extremal effective divisor classes");
  auto* c_mor = app.add_subcommand("mori", "extremal curve classes dual to the nef walls");
  for (CLI::App* c : {c_nef, c_mov, c_eff, c_mor}) {
    c->add_option("--lattice", lattice_arg)->required();
    c->add_option("--v", v_arg)->required();
    c->add_option("--region", region_arg, "semicolon-separated rational rays of v-perp");
    c->add_option("--ample", ample_arg, "rational ample class in v-perp");
    add_format(c);
  }
  c_eff->add_option("--box", box_arg, "coordinate bound for rank >= 3 scans");

  auto need = [](const std::string& s, const char* what) {
    if (s.empty()) throw InputError(std::string(what) + " is required for this subcommand");
  };
  c_nef->callback([&] {
    need(region_arg, "--region");
    need(ample_arg, "--ample");
    Lattice L = parse_lattice(lattice_arg);
    Vec v = parse_vec(v_arg);
    SearchRegion R{parse_region(region_arg)};
    WallList wl = nef_walls(L, v, R, parse_ratvec(ample_arg));
    if (format == "table")
      wall_list_table(wl);
    else
      emit(wall_list_json(wl));
  });
  c_mov->callback([&] {
    need(region_arg, "--region");
    Lattice L = parse_lattice(lattice_arg);
    Vec v = parse_vec(v_arg);
    SearchRegion R{parse_region(region_arg)};
    WallList wl = movable_walls(L, v, R);
    if (format == "table")
      wall_list_table(wl);
    else
      emit(wall_list_json(wl));
  });
  c_eff->callback([&] {
    need(ample_arg, "--ample");
    Lattice L = parse_lattice(lattice_arg);
    Vec v = parse_vec(v_arg);
    EffectiveGenerators eg =
        effective_generators(L, v, parse_ratvec(ample_arg), parse_int(box_arg));
    ordered_json j;
    j["generators"] = ordered_json::array();
    for (const auto& g : eg.generators) j["generators"].push_back(json_vec(g));
    j["positive_cone"] = eg.positive_cone;
    j["irrational_boundary"] = eg.irrational_boundary;
    j["complete"] = eg.complete;
    render(j, format);
  });
  c_mor->callback([&] {
    need(region_arg, "--region");
    need(ample_arg, "--ample");
    Lattice L = parse_lattice(lattice_arg);
    Vec v = parse_vec(v_arg);
    SearchRegion R{parse_region(region_arg)};
    MoriGenerators mg = mori_generators(L, v, R, parse_ratvec(ample_arg));
    ordered_json j;
    j["generators"] = ordered_json::array();
    for (const auto& g : mg.generators) j["generators"].push_back(json_vec(g));
    j["positive_curve_cone"] = mg.positive_curve_cone;
    j["complete"] = mg.complete;
    render(j, format);
  });

  // fibration
  auto* c_fib = app.add_subcommand("fibration", "isotropic classes of v-perp (fibration data)");
  c_fib->add_option("--lattice", lattice_arg)->required();
  c_fib->add_option("--v", v_arg)->required();
  c_fib->add_option("--box", box_arg);
  add_format(c_fib);
  c_fib->callback([&] {
    Lattice L = parse_lattice(lattice_arg);
    Vec v = parse_vec(v_arg);
    FibrationClasses fc = fibration_classes(L, v, parse_int(box_arg));
    ordered_json j;
    j["classes"] = ordered_json::array();
    for (const auto& c : fc.classes) j["classes"].push_back(json_vec(c));
    j["nonempty"] = !fc.classes.empty();
    j["complete"] = fc.complete;
    render(j, format);
  });

  // weyl
  auto* c_weyl =
      app.add_subcommand("weyl", "reflect a divisor class into the movable chamber");
  c_weyl->add_option("--lattice", lattice_arg)->required();
  c_weyl->add_option("--v", v_arg)->required();
  c_weyl->add_option("--divisor", divisor_arg, "rational divisor class (ambient coordinates)")
      ->required();
  c_weyl->add_option("--exceptional", exceptional_arg,
                     "semicolon-separated integer exceptional classes")
      ->required();
  add_format(c_weyl);
  c_weyl->callback([&] {
    Lattice L = parse_lattice(lattice_arg);
    Vec v = parse_vec(v_arg);
    RatVec D = parse_ratvec(divisor_arg);
    std::vector<Vec> exc;
    for (const auto& part : split_on(exceptional_arg, ';'))
      if (!part.empty()) exc.push_back(parse_vec(part));
    auto [image, word] = weyl_map_to_movable(L, v, D, exc);
    ordered_json j;
    j["image"] = json_ratvec(image);
    j["word"] = ordered_json::array();
    for (const auto& e : word) j["word"].push_back(json_vec(e));
    render(j, format);
  });

  // hilb
  auto* c_hilb = app.add_subcommand("hilb", "Hilbert scheme of points on a degree-2d K3");
  c_hilb->require_subcommand(1);
  auto* c_hm = c_hilb->add_subcommand("movable", "movable-cone boundary slope");
  auto* c_hn = c_hilb->add_subcommand("nef2", "nef-cone boundary slope for n = 2");
  auto* c_ht = c_hilb->add_subcommand("table", "all walls with slope in [0, movable boundary]");
  for (CLI::App* c : {c_hm, c_hn, c_ht}) {
    c->add_option("--d", d_arg, "polarization degree parameter, H^2 = 2d")->required();
    add_format(c);
  }
  c_hm->add_option("--n", n_arg, "number of points")->required();
  c_ht->add_option("--n", n_arg, "number of points")->required();
  c_hm->callback([&] {
    Int d = parse_int(d_arg), n = parse_int(n_arg);
    render(movable_hilb_json(d, n, movable_hilb(d, n)), format);
  });
  c_hn->callback([&] {
    Int d = parse_int(d_arg);
    if (d < 1) throw InputError("degree parameter d must be >= 1");
    render(nef2_json(d, nef_hilb_n2(d)), format);
  });
  c_ht->callback([&] {
    Int d = parse_int(d_arg), n = parse_int(n_arg);
    WallTable T = walls_table(d, n);
    if (format == "table")
      walls_table_table(T);
    else
      emit(walls_table_json(T));
  });

  // pell
  auto* c_pell = app.add_subcommand("pell", "fundamental solution of x^2 - D y^2 = 1");
  std::string pell_d;
  c_pell->add_option("D", pell_d, "positive nonsquare integer")->required();
  add_format(c_pell);
  c_pell->callback([&] {
    PellSolution f = pell_fundamental(parse_int(pell_d));
    ordered_json j;
    j["x"] = f.x.str();
    j["y"] = f.y.str();
    render(j, format);
  });

  // represent
  auto* c_rep = app.add_subcommand("represent", "solve q(x,y) = n for a binary form q");
  c_rep->add_option("--gram", gram_arg, "form entries a,b,c of ax^2+2bxy+cy^2")->required();
  c_rep->add_option("--n", n_arg, "target value")->required();
  c_rep->add_option("--mode", mode_arg, "minimal_positive, all_in_box, or orbit_representatives")
      ->required()
      ->check(CLI::IsMember({"minimal_positive", "all_in_box", "orbit_representatives"}));
  c_rep->add_option("--bound", bound_arg, "coordinate bound for all_in_box");
  add_format(c_rep);
  c_rep->callback([&] {
    BinaryForm Q = parse_gram3(gram_arg);
    Int n = parse_int(n_arg);
    ordered_json j;
    auto sol_pair = [](const Int& x, const Int& y) {
      return ordered_json::array({x.str(), y.str()});
    };
    if (mode_arg == "minimal_positive") {
      auto best = repr_minimal_positive(Q, n);
      j["solutions"] = ordered_json::array();
      if (best) j["solutions"].push_back(sol_pair(best->first, best->second));
    } else if (mode_arg == "all_in_box") {
      Int bound = parse_int(bound_arg);
      if (bound < 0) throw InputError("bound must be non-negative");
      auto sols = represent_box(Q, n, bound);
      std::sort(sols.begin(), sols.end());
      j["bound"] = json_int(bound);
      j["solutions"] = ordered_json::array();
      for (const auto& s : sols) j["solutions"].push_back(sol_pair(s.first, s.second));
    } else {
      RepresentResult r = represent(Q, n);
      j["kind"] = rep_kind_name(r.kind);
      j["solutions"] = ordered_json::array();
      for (const auto& s : r.sols) j["solutions"].push_back(sol_pair(s.first, s.second));
      ordered_json aut;
      aut["t"] = r.t.str();
      aut["u"] = r.u.str();
      j["automorph"] = aut;
    }
    render(j, format);
  });

  // flops
  auto* c_flops = app.add_subcommand("flops", "stratification of a flopping contraction");
  c_flops->add_option("--lattice", lattice_arg, "rank-2 lattice JSON (kind gram)")->required();
  c_flops->add_option("--v", v_arg, "integer pair x,y")->required();
  c_flops->add_flag("--strict", strict, "fail unless the lattice has no spherical or isotropic classes");
  add_format(c_flops);
  c_flops->callback([&] {
    Lattice L = parse_lattice(lattice_arg);
    if (L.rank() != 2) throw InputError("flops needs a rank-2 lattice");
    Pair2 v = parse_pair(v_arg);
    FlopStrata F = flop_strata(L.gram, v, strict);
    if (format == "table")
      flops_table(F);
    else
      emit(flops_json(v, pf2(form_of_gram(L.gram), v), F));
  });

  // golden
  auto* c_gold = app.add_subcommand("golden", "regenerate or verify the shipped golden files");
  c_gold->require_subcommand(1);
  std::string g_name, g_dir = "tests/golden";
  auto* c_gw = c_gold->add_subcommand("write", "write golden file(s)");
  auto* c_gc = c_gold->add_subcommand("check", "compare regenerated output to stored files");
  for (CLI::App* c : {c_gw, c_gc}) {
    c->add_option("name,--name", g_name, "golden name, or 'all'")->required();
    c->add_option("--dir", g_dir, "golden directory");
  }
  c_gw->callback([&] {
    if (g_name == "all")
      for (const auto& nm : kGoldenNames) golden_write(g_dir, nm);
    else
      golden_write(g_dir, g_name);
  });
  c_gc->callback([&] {
    if (g_name == "all")
      for (const auto& nm : kGoldenNames) golden_check(g_dir, nm);
    else
      golden_check(g_dir, g_name);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << "\n";
    return 1;
  } catch (const GoldenMismatch& e) {
    std::cerr << e.what();
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
