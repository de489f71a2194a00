#include "whitdim/cli.hpp"

#include "whitdim/parahoric.hpp"
#include "whitdim/whittaker.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace whitdim::cli {

namespace {

Int json_to_int(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    Int v;
    if (!s.empty() && v.set_str(s, 10) == 0) return v;
  }
  fail(ErrorKind::malformed, "field \"" + field + "\" must contain integers");
}

IntMat json_to_mat(const Json& j, const std::string& field) {
  if (!j.is_array()) fail(ErrorKind::malformed, "field \"" + field + "\" must be an array of integer arrays");
  IntMat m;
  for (const auto& row : j) {
    if (!row.is_array()) fail(ErrorKind::malformed, "field \"" + field + "\" must be an array of integer arrays");
    IntVec v;
    for (const auto& x : row) v.push_back(json_to_int(x, field));
    m.push_back(std::move(v));
  }
  return m;
}

const Json& require_field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) fail(ErrorKind::malformed, std::string("cover document is missing \"") + name + "\"");
  return *it;
}

Int parse_integer_flag(const std::string& text, const char* flag) {
  Int v;
  std::string s = text;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty() || v.set_str(s, 10) != 0)
    fail(ErrorKind::malformed, std::string("--") + flag + " expects an integer, got \"" + text + "\"");
  return v;
}

std::size_t parse_rank_flag(const std::string& text) {
  const Int r = parse_integer_flag(text, "r");
  if (r < 1 || r > 64) fail(ErrorKind::constraint, "--r must be between 1 and 64");
  return r.get_ui();
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

Json glr_summary(std::size_t r, const Int& bold_p, const Int& bold_q, const Int& n) {
  Json out = Json::object();
  const auto tag = classify_glr_family(bold_p, bold_q);
  const Int m = m_qr(r, bold_p, bold_q);
  out["family"] = to_string(tag.family);
  out["two_p_minus_q"] = json_int(tag.value);
  out["m_qr"] = json_int(m);
  out["dimension_bound"] = json_int(Int(n / gcd(n, m)));
  return out;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::malformed: return exit_malformed;
    case ErrorKind::constraint: return exit_constraint;
    case ErrorKind::not_general_position: return exit_not_general_position;
    case ErrorKind::internal: return exit_internal;
  }
  return exit_internal;
}

// Documents ----------------------------------------------------------------

CoverDocument parse_cover_document(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::malformed, "cover document must be a JSON object");
  CoverDocument doc;
  const Json& rank = require_field(j, "rank");
  if (!rank.is_number_unsigned() || rank.get<unsigned long>() == 0)
    fail(ErrorKind::malformed, "\"rank\" must be a positive integer");
  doc.rank = rank.get<std::size_t>();
  doc.roots = json_to_mat(require_field(j, "roots"), "roots");
  doc.coroots = json_to_mat(require_field(j, "coroots"), "coroots");
  const Json& simple = require_field(j, "simple");
  if (!simple.is_array()) fail(ErrorKind::malformed, "\"simple\" must be an array of root indices");
  for (const auto& s : simple) {
    if (!s.is_number_unsigned()) fail(ErrorKind::malformed, "\"simple\" must be an array of root indices");
    doc.simple.push_back(s.get<std::size_t>());
  }
  if (auto it = j.find("frobenius"); it != j.end() && !it->is_null())
    doc.frobenius = json_to_mat(*it, "frobenius");
  doc.bq = json_to_mat(require_field(j, "bq"), "bq");
  doc.n = json_to_int(require_field(j, "n"), "n");
  doc.q = json_to_int(require_field(j, "q"), "q");

  require_rectangular(doc.roots, doc.rank, "roots");
  require_rectangular(doc.coroots, doc.rank, "coroots");
  if (doc.bq.size() != doc.rank) fail(ErrorKind::malformed, "\"bq\" must be rank x rank");
  require_rectangular(doc.bq, doc.rank, "bq");
  if (doc.frobenius) {
    if (doc.frobenius->size() != doc.rank) fail(ErrorKind::malformed, "\"frobenius\" must be rank x rank");
    require_rectangular(*doc.frobenius, doc.rank, "frobenius");
  }
  return doc;
}

Json to_json(const CoverDocument& doc) {
  Json j = Json::object();
  j["rank"] = doc.rank;
  j["roots"] = json_mat(doc.roots);
  j["coroots"] = json_mat(doc.coroots);
  j["simple"] = doc.simple;
  if (doc.frobenius) j["frobenius"] = json_mat(*doc.frobenius);
  j["bq"] = json_mat(doc.bq);
  j["n"] = json_int(doc.n);
  j["q"] = json_int(doc.q);
  return j;
}

CoverSpec to_cover(const CoverDocument& doc) {
  FrobeniusAction fr = doc.frobenius ? FrobeniusAction(*doc.frobenius) : FrobeniusAction::trivial(doc.rank);
  BasedRootDatum rd(doc.rank, doc.roots, doc.coroots, doc.simple, std::move(fr));
  return CoverSpec(std::move(rd), WeylInvariantForm(doc.bq), doc.n, doc.q);
}

CoverSpec load_cover_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::malformed, "cannot open cover file \"" + path + "\"");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::malformed, "cover file \"" + path + "\" is not valid JSON: " + e.what());
  }
  return to_cover(parse_cover_document(j));
}

// Output records -----------------------------------------------------------

Json json_int(const Int& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Json json_vec(const IntVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(json_int(x));
  return out;
}

Json json_mat(const IntMat& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(json_vec(row));
  return out;
}

Json OutputRecord::to_json() const {
  Json j = Json::object();
  j["command"] = command;
  j["inputs"] = inputs;
  j["results"] = results;
  j["version"] = version;
  return j;
}

OutputRecord OutputRecord::from_json(const Json& j) {
  OutputRecord r;
  try {
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.results = j.at("results");
    r.version = j.at("version").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::malformed, std::string("not an output record: ") + e.what());
  }
  return r;
}

std::string OutputRecord::to_text() const {
  std::ostringstream os;
  os << "# whitdim " << version << " " << command << "\n";
  for (const auto& [key, value] : inputs.items()) os << "# " << key << ": " << scalar_text(value) << "\n";
  for (const auto& [key, value] : results.items()) {
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      os << key << ":\n";
      for (const auto& entry : value) {
        os << " ";
        for (const auto& [k, v] : entry.items()) os << " " << k << "=" << scalar_text(v);
        os << "\n";
      }
    } else {
      os << key << ": " << scalar_text(value) << "\n";
    }
  }
  return os.str();
}

// Commands -----------------------------------------------------------------

OutputRecord run_info(const CoverSpec& cover, const std::string& source) {
  OutputRecord rec;
  rec.command = "info";
  rec.inputs["cover_file"] = source;
  rec.inputs["n"] = json_int(cover.n());
  rec.inputs["q"] = json_int(cover.q());
  const BasedRootDatum& rd = cover.datum();
  rec.results["rank"] = rd.rank();
  rec.results["semisimple_rank"] = rd.semisimple_rank();
  rec.results["derived_simply_connected"] = is_derived_simply_connected(rd);
  if (auto inv = glr_invariants(cover)) {
    const Json summary = glr_summary(rd.rank(), inv->bold_p, inv->bold_q, cover.n());
    rec.results["bold_p"] = json_int(inv->bold_p);
    rec.results["bold_q"] = json_int(inv->bold_q);
    rec.results["family"] = summary["family"];
    rec.results["q_e0"] = json_int(q_of_e0(rd.rank(), inv->bold_p, inv->bold_q));
    rec.results["m_qr"] = summary["m_qr"];
  }
  rec.results["q_alpha"] = json_vec(q_of_coroot(cover.form(), rd));
  rec.results["y_qn_basis"] = json_mat(y_qn(cover).basis());
  rec.results["central_index"] = json_int(central_index(cover));
  const SqueezeBounds bounds = squeeze_bounds(cover);
  rec.results["squeeze_lower"] = json_int(bounds.lower);
  rec.results["squeeze_upper"] = json_int(bounds.upper);
  return rec;
}

OutputRecord run_residual(const CoverSpec& cover, const std::string& source, const std::string& point) {
  OutputRecord rec;
  rec.command = "residual";
  rec.inputs["cover_file"] = source;
  rec.inputs["point"] = point;
  const ApartmentPoint x = parse_point(point);
  const BasedRootDatum& rd = cover.datum();
  const ResidualRootData res = residual_extension(cover, x);
  Json phi = Json::array();
  for (std::size_t k : res.phi_x) phi.push_back(k);
  rec.results["phi_x"] = phi;
  Json iota = Json::array();
  for (std::size_t i = 0; i < res.phi_x.size(); ++i) {
    Json entry = Json::object();
    entry["root"] = res.phi_x[i];
    entry["coroot"] = json_vec(rd.coroots()[res.phi_x[i]]).dump();
    entry["iota"] = json_vec(res.iota[i]).dump();
    iota.push_back(entry);
  }
  rec.results["iota"] = iota;
  rec.results["hyperspecial"] = is_hyperspecial(rd, x);
  rec.results["vertex"] = is_vertex(rd, x);
  rec.results["residual_simply_connected"] = residual_derived_simply_connected(cover, x);
  rec.results["residual_splits"] = residual_splits(cover, x);
  return rec;
}

OutputRecord run_whittaker(std::size_t r, const Int& q, const Int& n, const Int& bold_p,
                           const Int& bold_q, const Int& a, bool oracle) {
  OutputRecord rec;
  rec.command = "whittaker";
  rec.inputs["r"] = r;
  rec.inputs["q"] = json_int(q);
  rec.inputs["n"] = json_int(n);
  rec.inputs["pp"] = json_int(bold_p);
  rec.inputs["qq"] = json_int(bold_q);
  rec.inputs["a"] = json_int(a);
  const CoverSpec cover = glr_cover(r, q, n, bold_p, bold_q);
  const LusztigParameter param = glr_coxeter_parameter(r, q, a, n);
  const bool general = is_general_position(GLrCharacter{r, q, a});
  if (!general)
    fail(ErrorKind::not_general_position, "a = " + to_string(a) + " is not in general position");
  const Json summary = glr_summary(r, bold_p, bold_q, n);
  for (const auto& [k, v] : summary.items()) rec.results[k] = v;
  rec.results["general_position"] = general;
  const Int dim = wh_dim_glr_closed(r, q, n, bold_p, bold_q, a);
  rec.results["dimension"] = json_int(dim);
  if (oracle) {
    const Int brute = wh_dim_oracle(r, q, n, bold_p, bold_q, a);
    const Int orbit = WhittakerContext(cover).y_x_rho(param).index;
    rec.results["oracle_dimension"] = json_int(brute);
    rec.results["orbit_dimension"] = json_int(orbit);
    rec.results["agree"] = brute == dim && orbit == dim;
  }
  return rec;
}

OutputRecord run_table(std::size_t r, const Int& q, const Int& n, const Int& bold_p, const Int& bold_q) {
  OutputRecord rec;
  rec.command = "table";
  rec.inputs["r"] = r;
  rec.inputs["q"] = json_int(q);
  rec.inputs["n"] = json_int(n);
  rec.inputs["pp"] = json_int(bold_p);
  rec.inputs["qq"] = json_int(bold_q);
  const GLrTable table = enumerate_glr_table(r, q, n, bold_p, bold_q);
  const Json summary = glr_summary(r, bold_p, bold_q, n);
  for (const auto& [k, v] : summary.items()) rec.results[k] = v;
  rec.results["classes"] = table.rows.size();
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json entry = Json::object();
    entry["representative"] = json_int(row.representative);
    entry["class_size"] = row.class_size;
    entry["dimension"] = json_int(row.dimension);
    rows.push_back(entry);
  }
  Json histogram = Json::array();
  for (const auto& [dim, count] : table.histogram) {
    Json entry = Json::object();
    entry["dimension"] = json_int(dim);
    entry["classes"] = count;
    histogram.push_back(entry);
  }
  rec.results["histogram"] = histogram;
  rec.results["rows"] = rows;
  return rec;
}

// Dispatch -----------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Whittaker dimensions and lattice invariants of depth-zero covers", "whitdim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version);

  std::string format = "text";
  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };

  std::string cover_file, point;
  std::string r_flag, q_flag, n_flag, pp_flag, qq_flag, a_flag;
  bool oracle = false;

  auto* info = app.add_subcommand("info", "Summarize the invariants of a cover file");
  info->add_option("cover_file", cover_file, "Cover specification (JSON)")->required();
  add_format(info);

  auto* residual = app.add_subcommand("residual", "Residual extension data at an apartment point");
  residual->add_option("cover_file", cover_file, "Cover specification (JSON)")->required();
  residual->add_option("--point", point, "Comma-separated rationals, e.g. 1/2,-1/2")->required();
  add_format(residual);

  auto add_glr_flags = [&](CLI::App* sub) {
    sub->add_option("--r", r_flag, "Rank r of GL_r")->required();
    sub->add_option("--q", q_flag, "Residue field size")->required();
    sub->add_option("--n", n_flag, "Cover degree (must divide q-1)")->required();
    sub->add_option("--pp", pp_flag, "Invariant p = Q(e_i)")->required();
    sub->add_option("--qq", qq_flag, "Invariant q = B(e_i, e_j)")->required();
    add_format(sub);
  };
  auto* whittaker = app.add_subcommand("whittaker", "Whittaker dimension for a GL_r Coxeter character");
  add_glr_flags(whittaker);
  whittaker->add_option("--a", a_flag, "Exponent of the character of F_{q^r}^x")->required();
  whittaker->add_flag("--oracle", oracle, "Cross-check with brute force and orbit search");

  auto* table = app.add_subcommand("table", "Dimensions over all general-position classes");
  add_glr_flags(table);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return exit_ok;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_malformed;
  }

  try {
    OutputRecord rec;
    if (*info) {
      rec = run_info(load_cover_file(cover_file), cover_file);
    } else if (*residual) {
      rec = run_residual(load_cover_file(cover_file), cover_file, point);
    } else {
      const std::size_t r = parse_rank_flag(r_flag);
      const Int q = parse_integer_flag(q_flag, "q");
      const Int n = parse_integer_flag(n_flag, "n");
      const Int pp = parse_integer_flag(pp_flag, "pp");
      const Int qq = parse_integer_flag(qq_flag, "qq");
      if (*whittaker)
        rec = run_whittaker(r, q, n, pp, qq, parse_integer_flag(a_flag, "a"), oracle);
      else
        rec = run_table(r, q, n, pp, qq);
    }
    if (format == "json")
      out << rec.to_json().dump(2) << "\n";
    else
      out << rec.to_text();
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace whitdim::cli
