#include "hadlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "hadlab/catalog.hpp"
#include "hadlab/constructors.hpp"
#include "hadlab/cycles.hpp"
#include "hadlab/defect.hpp"
#include "hadlab/group.hpp"
#include "hadlab/io.hpp"
#include "hadlab/mcnulty_weigert.hpp"
#include "hadlab/profile.hpp"
#include "hadlab/quantum.hpp"

namespace hadlab {

using nlohmann::json;

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string fmt(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

struct Result {
  json data;
  std::string text;
  int code = kExitOk;
  std::string input;  // primary input file, hashed into the catalog record
};

struct Options {
  bool json_out = false;
  std::string catalog;
  std::string file;
  std::string output;
  double tol = 0.0;
  double confidence = 1e6;
  std::string method = "direct";
  bool exact = false;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = kDefaultNodeBudget;
  std::size_t cap = kDefaultClosureCap;
  std::size_t p = 0;
  std::int64_t n = 0, m = 0, k = 1, q = 0, prime = 0;
  std::size_t min_rows = 1;
  std::size_t max_rows = 0;
  std::vector<std::int64_t> orders;
  std::vector<std::string> rows;
  std::vector<double> pvec, rvec;
  std::vector<std::int64_t> s, t;
  std::string qturn;
  std::string outer, inner, params, base;
  std::string form = "dita";
};

std::vector<std::int64_t> parse_element(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(part, &used));
      if (used != part.size()) throw InvalidInput("");
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse group element '" + text + "'");
    }
  }
  return out;
}

PHMatrix load_verified(const std::string& path, std::optional<Provenance>* provenance = nullptr) {
  MatrixDocument doc = read_matrix_file(path);
  if (provenance) *provenance = doc.provenance;
  return doc.matrix;
}

json report_json(const DefectReport& r) {
  json j{{"defect", r.defect},
         {"method", to_string(r.method)},
         {"rows", r.rows},
         {"cols", r.cols},
         {"unknowns", r.unknowns},
         {"rank", r.rank},
         {"smallest_kept", num(r.smallest_kept)},
         {"largest_dropped", num(r.largest_dropped)},
         {"gap_ratio", num(r.gap_ratio)},
         {"tolerance", r.tolerance},
         {"ambiguous", r.ambiguous}};
  if (r.split) j["split"] = {{"dim_kernel", r.split->dim_kernel}, {"dim_image", r.split->dim_image}};
  return j;
}

std::string report_text(const DefectReport& r) {
  std::ostringstream s;
  s << "defect: " << r.defect << "\n"
    << "method: " << to_string(r.method) << "\n"
    << "size: " << r.rows << "x" << r.cols << "\n"
    << "rank: " << r.rank << " of " << r.unknowns << " unknowns\n"
    << "gap ratio: " << fmt(r.gap_ratio) << (r.ambiguous ? " (AMBIGUOUS)" : "") << "\n";
  if (r.split) s << "split: dim K = " << r.split->dim_kernel << ", dim I = " << r.split->dim_image << "\n";
  return s.str();
}

// Rows S of F_{Z_N} when every row of h is a character row; nullopt otherwise.
std::optional<std::vector<std::int64_t>> infer_cyclic_rows(const PHMatrix& h) {
  const auto form = detect_butson(h, static_cast<std::int64_t>(std::max<std::size_t>(h.cols(), 1)));
  if (!form) return std::nullopt;
  const auto n = static_cast<std::int64_t>(h.cols());
  if (n % form->order != 0) return std::nullopt;
  const std::int64_t scale = n / form->order;
  std::vector<std::int64_t> rows;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const std::int64_t s = n > 1 ? form->exponent(i, 1) * scale % n : 0;
    for (std::size_t k = 0; k < h.cols(); ++k)
      if (form->exponent(i, k) * scale % n != s * static_cast<std::int64_t>(k) % n) return std::nullopt;
    rows.push_back(s);
  }
  return rows;
}

DefectOptions defect_options(const Options& o) {
  DefectOptions d;
  if (o.tol > 0) d.tol = o.tol;
  d.confidence = o.confidence;
  return d;
}

Result cmd_gen(const std::string& kind, const Options& o) {
  PHMatrix h;
  std::optional<Provenance> prov;
  if (kind == "fourier") {
    h = fourier_cyclic(o.n);
    Provenance p{"fourier", {o.n}, {}, fourier_master_spec(o.n)};
    for (std::int64_t i = 0; i < o.n; ++i) p.rows.push_back({i});
    prov = p;
  } else if (kind == "fourier-group") {
    h = fourier_group(o.orders);
    Provenance p{"fourier-group", o.orders, {}, std::nullopt};
    const FiniteAbelianGroup g(o.orders);
    for (std::size_t a = 0; a < g.size(); ++a) p.rows.push_back(g.element(a));
    if (o.orders.size() == 1) p.master = fourier_master_spec(o.orders[0]);
    prov = p;
  } else if (kind == "truncated-fourier") {
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& r : o.rows) rows.push_back(parse_element(r));
    h = truncated_fourier(rows, o.orders);
    prov = Provenance{"truncated-fourier", o.orders, rows, std::nullopt};
  } else if (kind == "dita") {
    h = dita_deformation({load_verified(o.outer), load_verified(o.inner), load_verified(o.params)});
  } else if (kind == "f22q") {
    const Phase q = parse_turns(o.qturn);
    h = f22q(q);
    if (auto spec = f22q_master_spec(q)) prov = Provenance{"f22q", {}, {}, spec};
  } else if (kind == "petrescu") {
    h = petrescu(parse_turns(o.qturn));
  } else if (kind == "master-dita") {
    const std::vector<double> p = o.pvec.empty() ? std::vector<double>(static_cast<std::size_t>(std::max<std::int64_t>(o.m, 0)), 0.0) : o.pvec;
    const std::vector<double> r = o.rvec.empty() ? std::vector<double>(static_cast<std::size_t>(std::max<std::int64_t>(o.n, 0)), 0.0) : o.rvec;
    const MasterDita md = master_dita(o.n, o.m, o.k, p, r);
    if (o.form != "dita" && o.form != "master") throw InvalidInput("--form must be dita or master");
    h = o.form == "dita" ? md.dita : md.master;
    prov = Provenance{"master-dita", {}, {}, md.spec};
  } else if (kind == "mw") {
    h = mw_construct({o.q, o.s, o.t, load_verified(o.base)});
  } else {
    throw InvalidInput("unknown generator " + kind);
  }
  const json doc = matrix_to_json(h, prov);
  const std::string dumped = doc.dump(1);
  Result res;
  res.data = {{"generator", kind}, {"rows", h.rows()}, {"cols", h.cols()}, {"label", h.label()},
              {"matrix_hash", fnv1a_hex(dumped)}};
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    if (!out) throw InvalidInput("cannot write " + o.output);
    out << dumped << "\n";
    res.data["output"] = o.output;
    res.text = "wrote " + h.label() + " (" + std::to_string(h.rows()) + "x" + std::to_string(h.cols()) + ") to " +
               o.output + "\n";
  } else {
    res.text = dumped + "\n";
    res.data["matrix"] = doc;
  }
  return res;
}

Result cmd_verify(const Options& o) {
  PHMatrix h = load_verified(o.file);
  const auto r = check_partial_hadamard(h, o.tol > 0 ? o.tol : kDefaultTol);
  Result res;
  res.data = {{"is_hadamard", r.is_hadamard},
              {"max_inner_product", r.max_inner_product},
              {"max_modulus_deviation", r.max_modulus_deviation},
              {"tolerance", r.tolerance},
              {"rows", h.rows()},
              {"cols", h.cols()}};
  res.text = std::string("hadamard: ") + (r.is_hadamard ? "yes" : "no") + "\nmax inner product residual: " +
             fmt(r.max_inner_product) + "\nmax modulus deviation: " + fmt(r.max_modulus_deviation) + "\n";
  res.code = r.is_hadamard ? kExitOk : kExitPropertyFalse;
  return res;
}

Result cmd_defect(const Options& o) {
  std::optional<Provenance> prov;
  const PHMatrix h = load_verified(o.file, &prov);
  require_hadamard(h, "defect");
  const auto method = parse_defect_method(o.method);
  const DefectOptions opts = defect_options(o);
  DefectReport rep;
  if (!method || *method == DefectMethod::direct) {
    if (!method) throw InvalidInput("unknown method " + o.method);
    rep = defect(h, opts);
  } else if (*method == DefectMethod::extension) {
    rep = defect_via_extension(h, opts, o.seed);
  } else if (*method == DefectMethod::split) {
    if (prov && !prov->orders.empty() && !prov->rows.empty()) {
      rep = defect_split_truncated_fourier(prov->rows, prov->orders, opts);
    } else if (auto rows = infer_cyclic_rows(h)) {
      rep = defect_split_truncated_fourier(*rows, static_cast<std::int64_t>(h.cols()), opts);
    } else {
      throw InvalidInput("split method needs a truncated Fourier matrix");
    }
  } else if (*method == DefectMethod::master) {
    if (!prov || !prov->master) throw InvalidInput("master method needs master data in the file provenance");
    rep = defect_master(*prov->master, opts);
  } else {
    throw InvalidInput("method " + o.method + " is not available here; use --exact");
  }
  Result res;
  res.data = report_json(rep);
  res.text = report_text(rep);
  if (o.exact) {
    const auto e = exact_defect(h);
    res.data["exact_defect"] = e ? json(*e) : json(nullptr);
    res.text += "exact defect: " + (e ? std::to_string(*e) : std::string("unavailable")) + "\n";
  }
  res.code = rep.ambiguous ? kExitAmbiguous : kExitOk;
  return res;
}

Result cmd_isolated(const Options& o) {
  const PHMatrix h = load_verified(o.file);
  const auto cert = isolation_certificate(h, defect_options(o));
  Result res;
  res.data = {{"status", to_string(cert.status)},
              {"defect", cert.report.defect},
              {"minimal_defect", cert.minimal_defect},
              {"gap_ratio", num(cert.report.gap_ratio)},
              {"ambiguous", cert.report.ambiguous}};
  res.text = "status: " + to_string(cert.status) + "\ndefect: " + std::to_string(cert.report.defect) +
             " (minimal " + std::to_string(cert.minimal_defect) + ")\ngap ratio: " + fmt(cert.report.gap_ratio) + "\n";
  if (cert.report.ambiguous)
    res.code = kExitAmbiguous;
  else
    res.code = cert.status == IsolationStatus::certified_isolated ? kExitOk : kExitPropertyFalse;
  return res;
}

Result cmd_regularity(const Options& o) {
  const PHMatrix h = load_verified(o.file);
  const double tol = o.tol > 0 ? o.tol : kCycleTol;
  const auto profile = cycle_structure_profile(h, tol, o.budget);
  const Regularity verdict = regularity(profile);
  Result res;
  json pairs = json::array();
  std::string text;
  for (const auto& p : profile) {
    pairs.push_back({{"i", p.i}, {"j", p.j}, {"label", p.label}, {"status", to_string(p.status)}});
    text += "rows " + std::to_string(p.i) + "," + std::to_string(p.j) + ": " + p.label + "\n";
  }
  res.data = {{"pairs", pairs}, {"verdict", to_string(verdict)}, {"tolerance", tol}, {"budget", o.budget}};
  res.text = text + "verdict: " + to_string(verdict) + "\n";
  res.code = verdict == Regularity::regular ? kExitOk
             : verdict == Regularity::irregular ? kExitPropertyFalse
                                                : kExitAmbiguous;
  return res;
}

Result cmd_semigroup(const Options& o) {
  const PHMatrix h = load_verified(o.file);
  if (h.rows() > kMaxClosureSize) throw InvalidInput("semigroup: at most 8 rows supported");
  const double tol = o.tol > 0 ? o.tol : 1e-9;
  Result res;
  const bool classical = classicality_test(h, tol);
  res.data = {{"classical", classical}};
  res.text = std::string("classical: ") + (classical ? "yes" : "no") + "\n";
  if (!classical) {
    res.data["pre_latin_square"] = nullptr;
    res.code = kExitPropertyFalse;
    return res;
  }
  const auto sq = pre_latin_square(h, tol);
  if (!sq) throw InvalidInput("semigroup: proportionality classes do not form a pre-Latin square");
  json square = json::array();
  std::string sqtext;
  for (std::size_t i = 0; i < sq->m; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < sq->m; ++j) {
      row.push_back((*sq)(i, j));
      sqtext += (j ? " " : "") + std::to_string((*sq)(i, j));
    }
    square.push_back(row);
    sqtext += "\n";
  }
  const auto closure = semigroup_closure(square_generators(*sq), o.cap);
  json elements = json::array();
  std::map<std::size_t, std::size_t> by_kappa;
  std::string elemtext;
  for (const auto& e : closure.elements) {
    elements.push_back(e.str());
    by_kappa[e.kappa()] += 1;
    elemtext += (elemtext.empty() ? "" : " ") + e.str();
  }
  json kappa = json::object();
  std::string kappatext;
  for (const auto& [k, c] : by_kappa) {
    kappa[std::to_string(k)] = c;
    kappatext += "  kappa " + std::to_string(k) + ": " + std::to_string(c) + "\n";
  }
  res.data["pre_latin_square"] = square;
  res.data["labels"] = sq->label_count;
  res.data["elements"] = elements;
  res.data["count"] = closure.elements.size();
  res.data["counts_by_kappa"] = kappa;
  res.data["rounds"] = closure.rounds;
  res.data["cap_hit"] = closure.cap_hit;
  res.text += "pre-Latin square:\n" + sqtext + "elements (" + std::to_string(closure.elements.size()) + "): " +
              elemtext + "\n" + kappatext + (closure.cap_hit ? "cap hit: closure incomplete\n" : "");
  res.code = closure.cap_hit ? kExitAmbiguous : kExitOk;
  return res;
}

Result cmd_moments(const Options& o) {
  const PHMatrix h = load_verified(o.file);
  const double tol = o.tol > 0 ? o.tol : 1e-8;
  const auto r = moment(h, o.p, tol);
  Result res;
  res.data = {{"p", o.p},
              {"moment", r.value},
              {"dimension", r.dimension},
              {"nearest_excluded", num(r.nearest_excluded)},
              {"max_imaginary", r.max_imaginary},
              {"ambiguous", r.ambiguous},
              {"formal", r.formal},
              {"tolerance", tol}};
  res.text = std::string(r.formal ? "formal moment" : "moment") + " p=" + std::to_string(o.p) + ": " +
             std::to_string(r.value) + "\nT_p dimension: " + std::to_string(r.dimension) +
             "\nnearest excluded |lambda-1|: " + fmt(r.nearest_excluded) + (r.ambiguous ? " (AMBIGUOUS)" : "") + "\n";
  res.code = r.ambiguous ? kExitAmbiguous : kExitOk;
  return res;
}

Result cmd_profile(const Options& o) {
  const PHMatrix h = load_verified(o.file);
  ProfileOptions po;
  po.budget = o.budget;
  const auto p = equivalence_profile(h, po);
  Result res;
  res.data = {{"rows", p.rows},
              {"cols", p.cols},
              {"defect", p.defect ? json(*p.defect) : json(nullptr)},
              {"pair_labels", p.pair_labels},
              {"butson_order", p.butson_order ? json(*p.butson_order) : json(nullptr)}};
  std::string labels;
  for (const auto& l : p.pair_labels) labels += (labels.empty() ? "" : " ") + l;
  res.text = "size: " + std::to_string(p.rows) + "x" + std::to_string(p.cols) +
             "\ndefect: " + (p.defect ? std::to_string(*p.defect) : std::string("n/a")) + "\npair labels: " + labels +
             "\nbutson order: " + (p.butson_order ? std::to_string(*p.butson_order) : std::string("none")) + "\n";
  return res;
}

Result cmd_probe_truncation(const Options& o) {
  const std::size_t max_rows = o.max_rows ? o.max_rows : static_cast<std::size_t>(std::max<std::int64_t>(o.prime, 0));
  std::vector<std::size_t> sizes;
  for (std::size_t m = o.min_rows; m <= max_rows; ++m) sizes.push_back(m);
  const auto rows = truncation_probe(o.prime, sizes, defect_options(o));
  Result res;
  json arr = json::array();
  std::string text = "M  defect  minimal  gap\n";
  bool ambiguous = false;
  for (const auto& r : rows) {
    arr.push_back({{"rows", r.rows},
                   {"defect", r.defect},
                   {"minimal_defect", r.minimal_defect},
                   {"minimal", r.minimal},
                   {"gap_ratio", num(r.gap_ratio)},
                   {"ambiguous", r.ambiguous},
                   {"exact_defect", r.exact ? json(*r.exact) : json(nullptr)}});
    text += std::to_string(r.rows) + "  " + std::to_string(r.defect) + "  " + (r.minimal ? "yes" : "no") + "  " +
            fmt(r.gap_ratio) + "\n";
    ambiguous = ambiguous || r.ambiguous;
  }
  res.data = {{"probe", "truncation"}, {"p", o.prime}, {"rows", arr}};
  res.text = text;
  res.code = ambiguous ? kExitAmbiguous : kExitOk;
  return res;
}

Result cmd_probe_arithmetic(const Options& o) {
  const MWSpec spec{o.q, o.s, o.t, load_verified(o.base)};
  const auto row = arithmetic_isolation_probe(spec, defect_options(o));
  Result res;
  res.input = o.base;
  res.data = {{"probe", "arithmetic-isolation"},
              {"p", row.p},
              {"q", row.q},
              {"s_size", row.s_size},
              {"t_size", row.t_size},
              {"defect", row.report.defect},
              {"minimal_defect", row.minimal_defect},
              {"minimal", row.minimal},
              {"gap_ratio", num(row.report.gap_ratio)},
              {"ambiguous", row.report.ambiguous},
              {"warnings", row.warnings}};
  std::string text;
  for (const auto& w : row.warnings) text += "warning: " + w + "\n";
  text += "p=" + std::to_string(row.p) + " q=" + std::to_string(row.q) + " |S|=" + std::to_string(row.s_size) +
          " |T|=" + std::to_string(row.t_size) + " defect=" + std::to_string(row.report.defect) + " minimal=" +
          std::to_string(row.minimal_defect) + (row.minimal ? " (minimal)" : "") + " gap=" + fmt(row.report.gap_ratio) +
          "\n";
  res.text = text;
  res.code = row.report.ambiguous ? kExitAmbiguous : kExitOk;
  return res;
}

Result cmd_probe_weak(const Options& o) {
  const PHMatrix h = load_verified(o.file);
  const auto r = weak_isolation_probe(h, o.tol > 0 ? o.tol : kCycleTol);
  Result res;
  res.data = {{"probe", "weak-isolation"},
              {"regularity", to_string(r.regularity)},
              {"isolation", to_string(r.isolation.status)},
              {"defect", r.isolation.report.defect},
              {"minimal_defect", r.isolation.minimal_defect},
              {"butson_order", r.butson_order ? json(*r.butson_order) : json(nullptr)},
              {"counterexample_candidate", r.counterexample_candidate}};
  res.text = (r.counterexample_candidate ? std::string("*** COUNTEREXAMPLE CANDIDATE: regular, isolated, not Butson ***\n")
                                         : std::string()) +
             "regularity: " + to_string(r.regularity) + "\nisolation: " + to_string(r.isolation.status) +
             "\nbutson order: " + (r.butson_order ? std::to_string(*r.butson_order) : std::string("none")) + "\n";
  res.code = r.isolation.report.ambiguous ? kExitAmbiguous : kExitOk;
  return res;
}

Result cmd_replay(const Options& o) {
  const auto records = read_catalog(o.file);
  Result res;
  std::size_t matched = 0;
  json rows = json::array();
  std::string text;
  for (std::size_t idx = 0; idx < records.size(); ++idx) {
    const auto& rec = records[idx];
    std::vector<std::string> args(rec.argv.begin() + (rec.argv.empty() ? 0 : 1), rec.argv.end());
    std::ostringstream out, err;
    args.push_back("--json");
    RunContext ctx;
    ctx.catalog_enabled = false;
    const int code = run_command(args, out, err, ctx);
    bool same = false;
    std::string reason;
    try {
      const json again = json::parse(out.str());
      same = again == rec.result;
      if (!same) reason = "result differs";
    } catch (const std::exception&) {
      reason = "command failed (exit " + std::to_string(code) + ")";
    }
    matched += same ? 1 : 0;
    rows.push_back({{"index", idx}, {"command", rec.command_line()}, {"match", same}});
    text += std::string(same ? "match   " : "MISMATCH ") + rec.command_line() + (same ? "" : "  [" + reason + "]") + "\n";
  }
  res.data = {{"records", records.size()}, {"matched", matched}, {"replays", rows}};
  res.text = text + std::to_string(matched) + "/" + std::to_string(records.size()) + " records reproduced\n";
  res.code = matched == records.size() ? kExitOk : kExitPropertyFalse;
  return res;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const RunContext& context) {
  CLI::App app{"hadlab: partial complex Hadamard matrices", "hadlab"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json_out, "machine-readable output");
    sub->add_option("--catalog", o.catalog, "append a record to this JSON-lines catalog");
  };
  auto file_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "phm-v1 matrix file")->required(); };

  auto* gen = app.add_subcommand("gen", "build a matrix");
  gen->require_subcommand(1);
  common(gen);
  std::map<std::string, CLI::App*> gens;
  auto gen_sub = [&](const std::string& name, const std::string& help) {
    auto* s = gen->add_subcommand(name, help);
    common(s);
    s->add_option("-o,--output", o.output, "write the matrix here instead of stdout");
    gens[name] = s;
    return s;
  };
  gen_sub("fourier", "F_N")->add_option("--n", o.n)->required();
  gen_sub("fourier-group", "F_G for G = Z_N1 x ...")->add_option("--orders", o.orders)->delimiter(',')->required();
  {
    auto* s = gen_sub("truncated-fourier", "rows S of F_G");
    s->add_option("--orders", o.orders)->delimiter(',')->required();
    s->add_option("--rows", o.rows, "elements, coordinates separated by ':'")->delimiter(',')->required();
  }
  {
    auto* s = gen_sub("dita", "H (x)_Q K");
    s->add_option("--outer", o.outer)->required();
    s->add_option("--inner", o.inner)->required();
    s->add_option("--params", o.params, "Q as a phm-v1 file")->required();
  }
  gen_sub("f22q", "F_{2,2}^q")->add_option("--q", o.qturn, "turn, p/q or decimal")->required();
  gen_sub("petrescu", "7x7 Petrescu matrix")->add_option("--q", o.qturn, "turn, p/q or decimal")->required();
  {
    auto* s = gen_sub("master-dita", "F_N (x)_Q F_M with its master data");
    s->add_option("--n", o.n)->required();
    s->add_option("--m", o.m)->required();
    s->add_option("--k", o.k);
    s->add_option("--p", o.pvec)->delimiter(',');
    s->add_option("--r", o.rvec)->delimiter(',');
    s->add_option("--form", o.form, "dita or master");
  }
  {
    auto* s = gen_sub("mw", "Gauss-sum MUB construction");
    s->add_option("--base", o.base)->required();
    s->add_option("--q", o.q)->required();
    s->add_option("--s", o.s)->delimiter(',')->required();
    s->add_option("--t", o.t)->delimiter(',')->required();
  }

  auto* verify = app.add_subcommand("verify", "check row orthogonality");
  common(verify);
  file_arg(verify);
  verify->add_option("--tol", o.tol);

  auto* defect_cmd = app.add_subcommand("defect", "defect of a matrix");
  common(defect_cmd);
  file_arg(defect_cmd);
  defect_cmd->add_option("--method", o.method, "direct|extension|split|master");
  defect_cmd->add_option("--tol", o.tol);
  defect_cmd->add_option("--confidence", o.confidence, "gap ratio below which the result is ambiguous");
  defect_cmd->add_flag("--exact", o.exact, "also compute the exact-arithmetic defect when possible");
  defect_cmd->add_option("--seed", o.seed, "seed for the unitary completion (extension method)");

  auto* isolated = app.add_subcommand("isolated", "isolation certificate");
  common(isolated);
  file_arg(isolated);
  isolated->add_option("--tol", o.tol);
  isolated->add_option("--confidence", o.confidence);

  auto* reg = app.add_subcommand("regularity", "cycle decompositions of row pairs");
  common(reg);
  file_arg(reg);
  reg->add_option("--tol", o.tol);
  reg->add_option("--budget", o.budget);

  auto* semi = app.add_subcommand("semigroup", "partial permutation semigroup");
  common(semi);
  file_arg(semi);
  semi->add_option("--cap", o.cap);
  semi->add_option("--tol", o.tol);

  auto* mom = app.add_subcommand("moments", "spectral moment via T_p");
  common(mom);
  file_arg(mom);
  mom->add_option("--p", o.p)->required();
  mom->add_option("--tol", o.tol);

  auto* prof = app.add_subcommand("profile", "equivalence fingerprint");
  common(prof);
  file_arg(prof);
  prof->add_option("--budget", o.budget);

  auto* probe = app.add_subcommand("probe", "report-only experiments");
  probe->require_subcommand(1);
  common(probe);
  auto* trunc = probe->add_subcommand("truncation", "defects of F_{M,p}");
  common(trunc);
  trunc->add_option("--p", o.prime)->required();
  trunc->add_option("--min-rows", o.min_rows);
  trunc->add_option("--max-rows", o.max_rows);
  trunc->add_option("--tol", o.tol);
  auto* arith = probe->add_subcommand("arithmetic-isolation", "defect of a Gauss-sum construction");
  common(arith);
  arith->add_option("--base", o.base)->required();
  arith->add_option("--q", o.q)->required();
  arith->add_option("--s", o.s)->delimiter(',')->required();
  arith->add_option("--t", o.t)->delimiter(',')->required();
  arith->add_option("--tol", o.tol);
  auto* weak = probe->add_subcommand("weak-isolation", "regular + isolated + Butson check");
  common(weak);
  file_arg(weak);
  weak->add_option("--tol", o.tol);

  auto* cat = app.add_subcommand("catalog", "catalog tools");
  cat->require_subcommand(1);
  auto* replay = cat->add_subcommand("replay", "re-run every record and compare results");
  replay->add_option("file", o.file, "catalog path")->required();
  replay->add_flag("--json", o.json_out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalidInput;
  }

  Result res;
  bool is_probe = false;
  try {
    if (gen->parsed()) {
      for (const auto& [name, sub] : gens)
        if (sub->parsed()) res = cmd_gen(name, o);
    } else if (verify->parsed()) {
      res = cmd_verify(o);
    } else if (defect_cmd->parsed()) {
      res = cmd_defect(o);
    } else if (isolated->parsed()) {
      res = cmd_isolated(o);
    } else if (reg->parsed()) {
      res = cmd_regularity(o);
    } else if (semi->parsed()) {
      res = cmd_semigroup(o);
    } else if (mom->parsed()) {
      res = cmd_moments(o);
    } else if (prof->parsed()) {
      res = cmd_profile(o);
    } else if (probe->parsed()) {
      is_probe = true;
      if (trunc->parsed())
        res = cmd_probe_truncation(o);
      else if (arith->parsed())
        res = cmd_probe_arithmetic(o);
      else
        res = cmd_probe_weak(o);
    } else if (replay->parsed()) {
      res = cmd_replay(o);
      out << (o.json_out ? res.data.dump(2) + "\n" : res.text);
      return res.code;
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  out << (o.json_out ? res.data.dump(2) + "\n" : res.text);

  if (context.catalog_enabled) {
    std::string path = o.catalog;
    if (path.empty())
      if (const char* env = std::getenv("HADLAB_CATALOG")) path = env;
    if (path.empty() && is_probe) path = "hadlab_catalog.jsonl";
    if (!path.empty()) {
      CatalogRecord rec;
      rec.timestamp = utc_timestamp();
      rec.argv.push_back("hadlab");
      for (std::size_t i = 0; i < args.size(); ++i) {
        // --catalog is bookkeeping, not part of the computation.
        if (args[i] == "--catalog") {
          ++i;
          continue;
        }
        if (args[i].rfind("--catalog=", 0) == 0 || args[i] == "--json") continue;
        rec.argv.push_back(args[i]);
      }
      const std::string input = !res.input.empty() ? res.input : o.file;
      if (!input.empty()) rec.input_hash = file_hash(input);
      rec.result = res.data;
      rec.tool_version = kToolVersion;
      try {
        append_catalog(rec, path);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
      }
    }
  }
  return res.code;
}

}  // namespace hadlab
