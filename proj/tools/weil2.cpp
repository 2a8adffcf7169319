// weil2: command-line front end for the GR(4,d) Weil representation toolkit.

#include "weil2/report.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace weil2;

namespace {

constexpr int kCliMaxDegree = 4;

struct Options {
  JobConfig cfg;
  std::string mode = "exhaustive";
  std::string out;
  std::string format = "json";
};

void add_job_flags(CLI::App* app, Options& o) {
  app->add_option("--d", o.cfg.d, "ring degree")->check(CLI::PositiveNumber);
  app->add_option("--n", o.cfg.n, "symplectic rank")->check(CLI::PositiveNumber);
  app->add_option("--seed", o.cfg.seed, "sampling seed");
  app->add_option("--mode", o.mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
  app->add_option("--sample-count", o.cfg.sample_count, "samples per sampled check")->check(CLI::PositiveNumber);
  app->add_option("--out", o.out, "output path");
  app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void finalize(Options& o) {
  o.cfg.sampled = o.mode == "sampled";
  if (o.cfg.d > kCliMaxDegree && !size_caps_disabled()) {
    throw CapExceeded("weil2: d > " + std::to_string(kCliMaxDegree) + " refused (set WEIL2_UNSAFE_DISABLE_CAPS=1)");
  }
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  if (fs::path(o.out).has_parent_path()) fs::create_directories(fs::path(o.out).parent_path());
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidInput("weil2: cannot write " + o.out);
  f << text;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw InvalidInput("weil2: cannot write " + p.string());
  f << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

long parse_int(const std::string& t) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t, &used);
  } catch (const std::exception&) {
    throw InvalidInput("weil2: bad integer '" + t + "'");
  }
  if (used != t.size()) throw InvalidInput("weil2: bad integer '" + t + "'");
  return v;
}

// "a,b;c,d" -> rows.
std::vector<std::vector<std::string>> parse_rows(const std::string& s) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : split(s, ';')) rows.push_back(split(r, ','));
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw InvalidInput("weil2: matrix must be square");
  }
  return rows;
}

SymForm parse_gram(const std::string& s) {
  std::vector<std::vector<int>> rows;
  for (const auto& r : parse_rows(s)) {
    std::vector<int> row;
    for (const auto& t : r) row.push_back(static_cast<int>(parse_int(t)));
    rows.push_back(row);
  }
  SymForm f = SymForm::from_rows(rows);
  require_nondegenerate(f);
  return f;
}

// An entry is an integer or power-basis coordinates "c0:c1:...".
RingElem parse_ring_elem(const GaloisRing& R, const std::string& t) {
  std::vector<int> c;
  for (const auto& x : split(t, ':')) c.push_back(static_cast<int>(parse_int(x)));
  if (c.size() > static_cast<std::size_t>(R.degree())) throw InvalidInput("weil2: too many coordinates in '" + t + "'");
  return R.from_coords(c);
}

json coords_json(const GaloisRing& R, RingElem a) {
  json j = json::array();
  for (int c : R.coords(a)) j.push_back(c);
  return j;
}

json matk_json(const SympSpace& s, const MatK& g) {
  json j = json::array();
  for (VecV c : g.cols) {
    json col = json::array();
    for (FieldElem x : s.coords(c)) col.push_back(x.code);
    j.push_back(col);
  }
  return j;
}

json matrt_json(const SympSpace& s, const MatRt& g) {
  json j = json::array();
  for (const auto& c : g.cols) {
    json col = json::array();
    for (RingElem x : c) col.push_back(coords_json(s.ring(), x));
    j.push_back(col);
  }
  return j;
}

json asp_json(const SympSpace& s, const AspElem& a) {
  json j;
  j["g_columns"] = matk_json(s, a.g);
  json al = json::array();
  for (RingElem x : a.alpha) al.push_back(x.code);
  j["alpha"] = al;
  return j;
}

// ---------------------------------------------------------------------------

int cmd_ring_info(Options& o) {
  finalize(o);
  RingPtr R = make_ring(o.cfg.d);
  std::set<int> traces;
  json witness;
  for (RingElem a : R->elements()) {
    traces.insert(R->trace(a));
    if (witness.is_null() && R->trace(a) == 1) witness = coords_json(*R, a);
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["d"] = o.cfg.d;
  j["modulus"] = R->modulus_string();
  j["ring_size"] = R->size();
  j["residue_field_size"] = R->field_size();
  j["unit_count"] = R->unit_count();
  j["trace_one_witness"] = witness;
  j["trace_surjective"] = traces.size() == 4;
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_witt(Options& o, const std::string& action, const std::string& gram, const std::string& gram2) {
  SymForm f = parse_gram(gram);
  json j;
  if (action == "classify") {
    j = witt_record(f);
  } else if (action == "gauss") {
    j["gram"] = to_string(f);
    j["gauss"] = gauss(f).to_string();
  } else {
    if (gram2.empty()) throw InvalidInput("weil2: isometric needs --gram2");
    SymForm g = parse_gram(gram2);
    j["gram"] = to_string(f);
    j["gram2"] = to_string(g);
    j["isometric"] = is_isometric(f, g);
  }
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_cocycle_table(Options& o) {
  finalize(o);
  SympSpace s(make_ring(o.cfg.d), o.cfg.n);
  Context ctx(s);
  Rng rng(o.cfg.seed);
  Sampling smp{!o.cfg.sampled, o.cfg.sample_count, &rng};
  auto rows = cocycle_table(ctx, smp);
  if (o.format == "csv") {
    emit(o, cocycle_table_csv(ctx, rows));
  } else {
    json j;
    j["header"] = header(o.cfg);
    j["rows"] = cocycle_table_json(ctx, rows);
    emit(o, j.dump(2) + "\n");
  }
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.pass;
  return ok ? 0 : 1;
}

int cmd_verify(Options& o, const std::string& suite) {
  finalize(o);
  auto rs = run_suites(suite, o.cfg);
  if (o.format == "csv") {
    emit(o, report_csv(rs));
  } else {
    emit(o, report_json(o.cfg, rs).dump(2) + "\n");
  }
  if (!o.out.empty()) {
    for (const auto& r : rs) {
      for (const auto& c : r.checks) {
        std::cerr << (c.ok() ? "ok   " : "FAIL ") << c.name << " (" << c.count << ")";
        if (!c.ok()) std::cerr << " first: " << c.first_counterexample;
        std::cerr << "\n";
      }
    }
  }
  return passed(rs) ? 0 : 1;
}

int cmd_emit_corpus(Options& o) {
  finalize(o);
  if (o.out.empty()) throw InvalidInput("weil2: emit-corpus needs --out DIR");
  const fs::path dir(o.out);
  fs::create_directories(dir);
  SympSpace s(make_ring(o.cfg.d), o.cfg.n);
  Context ctx(s);
  Rng rng(o.cfg.seed);
  Sampling smp{!o.cfg.sampled, o.cfg.sample_count, &rng};
  if (smp.exhaustive && !size_caps_disabled() && s.d() * s.n() > 1) {
    throw CapExceeded("weil2: exhaustive corpus is limited to n = d = 1; use sampled mode");
  }

  json manifest;
  manifest["header"] = header(o.cfg);
  manifest["files"] = json::array();
  auto put = [&](const std::string& name, const json& body) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["header"] = header(o.cfg);
    j["data"] = body;
    write_file(dir / name, j.dump(2) + "\n");
    manifest["files"].push_back(name);
  };

  // Enhanced Lagrangians and the cocycle table.
  auto rows = cocycle_table(ctx, smp);
  std::vector<int> enh;
  if (smp.exhaustive) {
    enh = ctx.register_all_enhanced();
  } else {
    std::set<int> seen;
    for (const auto& r : rows) seen.insert({r.N, r.M, r.L});
    enh.assign(seen.begin(), seen.end());
  }
  json ej = json::array();
  for (int id : enh) ej.push_back(describe(ctx.enhanced(id)));
  json eb;
  eb["count"] = enh.size();
  eb["complete"] = smp.exhaustive;
  eb["members"] = ej;
  put("enhanced_lagrangians.json", eb);
  put("cocycle_table.json", cocycle_table_json(ctx, rows));
  write_file(dir / "cocycle_table.csv", cocycle_table_csv(ctx, rows));
  manifest["files"].push_back("cocycle_table.csv");

  // Witt classifications, rank <= 3.
  json wj = json::array();
  for (int r = 1; r <= 3; ++r) {
    for (const auto& f : enumerate_forms(r)) wj.push_back(witt_record(f));
  }
  put("witt_classifications.json", wj);

  // Weil matrices on the base model.
  const int L0 = ctx.base_enhanced(0);
  GerbeObject obj{L0, {}};
  SplitGerbeObject sobj{ctx.oid({ctx.canonical_lift(0), s.ring().one()}), {}};
  std::vector<AspElem> elems;
  std::vector<MatRt> tildes;
  if (smp.exhaustive) {
    elems = enumerate_asp(s);
    tildes = enumerate_sp_tilde(s);
  } else {
    const long m = std::min<long>(o.cfg.sample_count, 12);
    for (long k = 0; k < m; ++k) tildes.push_back(detail::random_sp_tilde(s, rng));
    for (const auto& gt : tildes) {
      elems.push_back(asp_mul(s, lift_sp(s, gt), translation(s, translation_sigma(s, rng.below(translation_count(s))))));
    }
  }
  json wm = json::array();
  for (const auto& a : elems) {
    json x = asp_json(s, a);
    x["matrix"] = to_json(weil_operator(ctx, obj, a));
    wm.push_back(x);
  }
  json sm = json::array();
  for (const auto& g : tildes) {
    json x;
    x["g_columns"] = matrt_json(s, g);
    x["matrix"] = to_json(split_weil_operator(ctx, sobj, g));
    sm.push_back(x);
  }
  json wb;
  wb["base"] = describe(ctx.enhanced(L0));
  wb["weil"] = wm;
  wb["split_weil"] = sm;
  put("weil_matrices.json", wb);

  // Cocycle tables. At n = d = 1 the element lists are whole groups, so the
  // split table can be tested for being a coboundary.
  json ct;
  json proj = json::array();
  for (const auto& a : elems) {
    json row = json::array();
    for (const auto& b : elems) row.push_back(to_string(*proj_cocycle(ctx, obj, a, b).mu4()));
    proj.push_back(row);
  }
  ct["projective"] = proj;
  auto signs = split_cocycle_table(ctx, sobj, tildes);
  ct["split"] = signs;
  if (smp.exhaustive) {
    auto f = sign_coboundary(s, tildes, signs);
    ct["split_is_coboundary"] = f.has_value();
    ct["split_trivializing_signs"] = f ? json(*f) : json(nullptr);
  } else {
    ct["split_is_coboundary"] = nullptr;
  }
  put("cocycle_tables.json", ct);

  // Root tables, over everything the matrices touched.
  json lt = json::array();
  for (const auto& [id, x] : obj.lambdas) {
    json r;
    r["enhanced"] = describe(ctx.enhanced(id));
    r["lambda"] = x.to_string();
    lt.push_back(r);
  }
  json mt = json::array();
  for (const auto& [id, x] : sobj.mus) {
    json r;
    r["oriented"] = to_json(ctx.oriented(id));
    r["mu"] = x.to_string();
    mt.push_back(r);
  }
  json rb;
  rb["lambda"] = lt;
  rb["mu"] = mt;
  put("root_tables.json", rb);

  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.pass;
  return ok ? 0 : 1;
}

int cmd_weil_matrix(Options& o, const std::string& matrix, const std::string& sigma) {
  finalize(o);
  SympSpace s(make_ring(o.cfg.d), o.cfg.n);
  const GaloisRing& R = s.ring();
  auto rows = parse_rows(matrix);
  if (static_cast<int>(rows.size()) != s.dim()) throw InvalidInput("weil2: matrix must be 2n x 2n");
  MatRt g;
  for (int c = 0; c < s.dim(); ++c) {
    VecR col(s.dim());
    for (int r = 0; r < s.dim(); ++r) col[r] = parse_ring_elem(R, rows[r][c]);
    g.cols.push_back(col);
  }
  if (!is_symplectic(s, g)) throw InvalidInput("weil2: matrix is not symplectic");
  AspElem a = lift_sp(s, g);
  if (!sigma.empty()) {
    std::vector<FieldElem> sig;
    for (const auto& t : split(sigma, ',')) {
      long v = parse_int(t);
      if (v < 0 || v >= static_cast<long>(R.field_size())) throw InvalidInput("weil2: sigma entry out of range");
      sig.push_back({static_cast<std::uint16_t>(v)});
    }
    if (static_cast<int>(sig.size()) != 2 * s.d() * s.n()) throw InvalidInput("weil2: sigma needs 2dn entries");
    a = asp_mul(s, a, translation(s, sig));
  }
  Context ctx(s);
  const int L0 = ctx.base_enhanced(0);
  GerbeObject obj{L0, {}};
  json j;
  j["header"] = header(o.cfg);
  j["base"] = describe(ctx.enhanced(L0));
  j["element"] = asp_json(s, a);
  j["weil_matrix"] = to_json(weil_operator(ctx, obj, a));
  if (sigma.empty()) {
    SplitGerbeObject sobj{ctx.oid({ctx.canonical_lift(0), R.one()}), {}};
    j["split_weil_matrix"] = to_json(split_weil_operator(ctx, sobj, g));
  }
  emit(o, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil representation over GR(4,d)"};
  app.require_subcommand(1);
  Options o;
  int rc = 0;

  auto* ring = app.add_subcommand("ring-info", "ring parameters and trace witness");
  ring->add_option("--d", o.cfg.d, "ring degree")->check(CLI::PositiveNumber);
  ring->add_option("--out", o.out, "output path");
  ring->callback([&] { rc = cmd_ring_info(o); });

  std::string witt_action, gram, gram2;
  auto* witt = app.add_subcommand("witt", "classify, gauss or isometric on Gram matrices over Z/4");
  witt->add_option("action", witt_action, "classify | gauss | isometric")
      ->required()
      ->check(CLI::IsMember({"classify", "gauss", "isometric"}));
  witt->add_option("--gram", gram, "rows separated by ';', entries by ','")->required();
  witt->add_option("--gram2", gram2, "second Gram matrix for isometric");
  witt->add_option("--out", o.out, "output path");
  witt->callback([&] { rc = cmd_witt(o, witt_action, gram, gram2); });

  auto* table = app.add_subcommand("cocycle-table", "C over pairwise-transversal enhanced triples");
  add_job_flags(table, o);
  table->callback([&] { rc = cmd_cocycle_table(o); });

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run identity suites; exit 0 iff every check passes");
  add_job_flags(verify, o);
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suites));
  verify->callback([&] { rc = cmd_verify(o, suite); });

  auto* corpus = app.add_subcommand("emit-corpus", "write the regression corpus to --out DIR");
  add_job_flags(corpus, o);
  corpus->callback([&] { rc = cmd_emit_corpus(o); });

  std::string matrix, sigma;
  auto* wm = app.add_subcommand("weil-matrix", "Weil operator of an element of Sp(V~), optionally times a translation");
  add_job_flags(wm, o);
  wm->add_option("--matrix", matrix, "2n x 2n over R; entries are integers or coordinates c0:c1:...")->required();
  wm->add_option("--sigma", sigma, "translation: 2dn residue-field codes on the standard F2 basis");
  wm->callback([&] { rc = cmd_weil_matrix(o, matrix, sigma); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const weil2::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return rc;
}
