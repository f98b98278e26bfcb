#include "gl3trace/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

// Rendering conventions, shared by every command: exact arithmetic results
// (sums, sizes, multiplicities) are decimal strings so nothing is ever
// squeezed through a float; structural indices (field codes, orbit ids,
// case numbers) are plain JSON integers.  Key order is fixed, so equal
// configs render byte-identical reports.

namespace gl3trace {

namespace {

using ojson = nlohmann::ordered_json;

ojson header_block(const char* command) {
  ojson j;
  j["tool"] = "gl3trace";
  j["command"] = command;
  j["library_version"] = kLibraryVersion;
  j["schema"] = kReportSchema;
  return j;
}

ojson config_block(const RunConfig& cfg, const Tower& t) {
  ojson j;
  j["p"] = cfg.p;
  j["n"] = cfg.n;
  j["q"] = t.q;
  if (cfg.poly.empty()) {
    j["poly"] = "built-in";
  } else {
    j["poly"] = cfg.poly;
  }
  j["delta"] = t.delta;
  j["delta_rule"] = cfg.delta_rule;
  j["seed"] = cfg.seed;
  j["num_f"] = cfg.num_f;
  j["budget"] = cfg.budget;
  return j;
}

const std::vector<uint64_t>* poly_ptr(const RunConfig& cfg) {
  return cfg.poly.empty() ? nullptr : &cfg.poly;
}

// q mod 3 without building anything: the congruence gate for commands that
// never touch the half-space but still live under the standing hypothesis.
void require_q_1_mod_3(uint64_t p, unsigned n) {
  uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) r = (r * (p % 3)) % 3;
  if (r != 1)
    throw NotCongruent1Mod3Error(
        "q = p^n must be congruent to 1 mod 3 (got q = " + std::to_string(p) +
        "^" + std::to_string(n) + " = 2 mod 3); no cube nonresidue exists");
}

struct NamedFn {
  std::string name;
  SphericalFn f;
};

std::vector<NamedFn> test_functions(const RunConfig& cfg, const HalfSpace& h) {
  std::vector<NamedFn> fns;
  fns.push_back({"constant_one", SphericalFn::constant(h, Rat(1))});
  fns.push_back({"base_point_delta", SphericalFn::delta_p0(h)});
  if (!cfg.f_table.empty())
    fns.push_back({"table", SphericalFn::from_table(h, cfg.f_table)});
  for (unsigned k = 0; k < cfg.num_f; ++k)
    fns.push_back({"random_" + std::to_string(k),
                   SphericalFn::random(h, cfg.seed + k)});
  return fns;
}

std::string render(const ojson& j) { return j.dump(2) + "\n"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ojson mat2_codes(const Mat2& m) {
  return ojson::array({m.e[0], m.e[1], m.e[2], m.e[3]});
}

ojson mat3_codes(const Mat3& m) {
  ojson a = ojson::array();
  for (uint64_t v : m.e) a.push_back(v);
  return a;
}

ojson discrepancy_json(const Discrepancy& d) {
  ojson j;
  j["location"] = d.location;
  j["claimed"] = d.claimed;
  j["computed"] = d.computed;
  j["context"] = d.context;
  return j;
}

ojson checksums_json(const SpectralChecksums& cs) {
  ojson j;
  j["dual_size"] = to_str(cs.dual_size);
  j["class_number"] = to_str(cs.class_number);
  j["sum_count_dim2"] = to_str(cs.sum_count_dim2);
  j["group_order"] = to_str(cs.group_order);
  j["dual_ok"] = cs.dual_ok;
  j["regime_supported"] = cs.regime_supported;
  if (cs.regime_supported) {
    j["sum_m_dim"] = to_str(cs.sum_m_dim);
    j["index"] = to_str(cs.index);
    j["index_ok"] = cs.index_ok;
    j["sum_m_sq"] = to_str(cs.sum_m_sq);
  }
  return j;
}

}  // namespace

const ClassDescriptor& find_class(const Tower& t, const Field& fq2,
                                  const ConjClasses& cc,
                                  const std::string& descriptor) {
  auto colon = descriptor.find(':');
  if (colon == std::string::npos)
    throw Error("class descriptor needs the form kind:codes, e.g. hyp2:1,2,3");
  const std::string kind_s = descriptor.substr(0, colon);

  ClassKind kind = ClassKind::Central;
  bool known = false;
  for (ClassKind k :
       {ClassKind::Central, ClassKind::Hyp1, ClassKind::Hyp2, ClassKind::Par1,
        ClassKind::Par2, ClassKind::Par3, ClassKind::EllQuadScalar,
        ClassKind::EllCubic}) {
    if (kind_s == class_kind_name(k)) {
      kind = k;
      known = true;
      break;
    }
  }
  if (!known)
    throw Error("unknown class kind '" + kind_s +
                "'; expected one of central, hyp1, hyp2, par1, par2, par3, "
                "ell_quad_scalar, ell_cubic");

  std::vector<uint64_t> params;
  std::string rest = descriptor.substr(colon + 1);
  std::istringstream in(rest);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != tok.size())
      throw Error("bad field code '" + tok + "'");
    params.push_back(v);
  }
  if (params.empty()) throw Error("class descriptor lists no field codes");

  // eigenvalue codes of the elliptic kinds may be any Galois conjugate
  if (kind == ClassKind::Hyp2) {
    std::sort(params.begin(), params.end());
  } else if (kind == ClassKind::EllQuadScalar && params.size() == 2) {
    params[0] = std::min(params[0], fq2.pow(params[0], t.q));
  } else if (kind == ClassKind::EllCubic && params.size() == 1) {
    uint64_t a = params[0];
    uint64_t b = t.frob_q(a);
    uint64_t c = t.frob_q(b);
    params[0] = std::min(a, std::min(b, c));
  }

  for (const auto& d : cc.classes)
    if (d.kind == kind && d.params == params) return d;
  throw Error("no conjugacy class matches descriptor '" + descriptor +
              "' (codes must be valid field codes at the right level; "
              "eigenvalues nonzero and distinct where the kind demands)");
}

RunResult run_verify(const RunConfig& cfg) {
  TraceContext ctx =
      TraceContext::build(cfg.p, cfg.n, poly_ptr(cfg), cfg.delta_rule,
                          cfg.budget);
  const Tower& t = ctx.tower;
  const BigInt g_order = gl3_order(BigInt(t.q));
  const BigInt sub_order = gl3_order(BigInt(t.p));

  std::vector<NamedFn> fns = test_functions(cfg, ctx.h);
  std::vector<Discrepancy> disc;
  bool oracles_ok = true;

  ojson rep = header_block("verify");
  rep["config"] = config_block(cfg, t);

  ojson names = ojson::array();
  for (const auto& nf : fns) names.push_back(nf.name);
  rep["test_functions"] = names;

  // geometric side vs direct trace, per test function
  ojson geo = ojson::array();
  bool first_f = true;
  for (const auto& nf : fns) {
    GeometricSide side = geometric_side(ctx, nf.f);
    if (!side.identity_ok || !side.oracles_agree) oracles_ok = false;

    ojson jf;
    jf["f"] = nf.name;
    jf["direct"] = to_str(side.direct);
    jf["oracle_total"] = to_str(side.oracle_total);
    jf["identity_ok"] = side.identity_ok;
    jf["oracles_agree"] = side.oracles_agree;
    jf["closed_total"] = to_str(side.closed_total);
    jf["closed_complete"] = side.closed_complete;

    ojson rows = ojson::array();
    for (const GeomRow& row : side.rows) {
      ojson jr;
      jr["gamma"] = row.gamma_label;
      jr["g_class"] = row.g_label;
      jr["kind"] = class_kind_name(row.kind);
      jr["gamma_size"] = to_str(row.gamma_class_size);
      jr["g_size"] = to_str(row.g_class_size);
      jr["weight"] = to_str(row.weight);
      jr["centralizers_match_closed"] = row.centralizers_match_closed;
      jr["oracle"] = to_str(row.oracle);
      jr["oracle_scan"] = to_str(row.oracle_scan);
      if (row.has_closed) {
        jr["closed"] = to_str(row.closed);
        jr["closed_matches"] = row.closed_matches;
        if (row.closed_undefined_terms)
          jr["undefined_summands"] = row.closed_undefined_terms;
      } else {
        jr["closed"] = nullptr;
      }
      rows.push_back(std::move(jr));

      if (first_f && !row.centralizers_match_closed) {
        oracles_ok = false;
        disc.push_back({"class_size_consistency/" + row.g_label,
                        "closed centralizer orders",
                        "orbit-census class sizes",
                        "internal consistency check failed"});
      }
      if (row.has_closed && !row.closed_matches) {
        std::string context = "f = " + nf.name;
        if (row.closed_undefined_terms)
          context += ", undefined summands = " +
                     std::to_string(row.closed_undefined_terms);
        disc.push_back({"orbital_closed/" +
                            std::string(class_kind_name(row.kind)) + "/" +
                            row.g_label,
                        to_str(row.closed), to_str(row.oracle),
                        std::move(context)});
      }
    }
    jf["rows"] = std::move(rows);
    geo.push_back(std::move(jf));
    first_f = false;
  }
  rep["geometric"] = std::move(geo);

  // induced character: closed form vs the fixed-coset oracle on every class,
  // then the Frobenius-reciprocity cross-check against the point stabilizer
  {
    const BigInt index = g_order / sub_order;
    BigInt orth = 0;
    BigInt cross_num = 0;
    BigInt identity_oracle = 0;
    unsigned mismatches = 0;
    for (const auto& d : ctx.cc_q.classes) {
      Rat chi = chi_rho(t, ctx.fq2, d);
      BigInt oracle = induced_char_gamma_oracle(ctx.h, ctx.cosets, d.rep);
      BigInt kappa = induced_char_k_oracle(ctx.h, d.rep);
      if (chi != Rat(oracle)) {
        ++mismatches;
        disc.push_back({"induced_character/" + d.label(t.fq), to_str(chi),
                        to_str(Rat(oracle)), "per-class value"});
      }
      orth += d.size * oracle;
      cross_num += d.size * oracle * kappa;
      if (d.kind == ClassKind::Central && d.params[0] == 1)
        identity_oracle = oracle;
    }
    const Rat cross = Rat(cross_num) / Rat(g_order);
    const BigInt orbit_count = gamma_orbit_count_on_halfspace(ctx.h);
    const bool identity_matches = identity_oracle == index;
    const bool orthogonality_ok = orth == g_order;
    const bool cross_ok = cross == Rat(orbit_count);
    if (!identity_matches || !orthogonality_ok || !cross_ok)
      oracles_ok = false;

    ojson jc;
    jc["classes_checked"] = ctx.cc_q.classes.size();
    jc["closed_mismatch_count"] = mismatches;
    jc["index"] = to_str(index);
    jc["identity_value"] = to_str(identity_oracle);
    jc["identity_matches"] = identity_matches;
    jc["orthogonality_sum"] = to_str(orth);
    jc["group_order"] = to_str(g_order);
    jc["orthogonality_ok"] = orthogonality_ok;
    jc["cross_inner_product"] = to_str(cross);
    jc["subgroup_orbit_count"] = to_str(orbit_count);
    jc["cross_ok"] = cross_ok;
    rep["induced_character"] = std::move(jc);
  }

  // double cosets; the two-sided count walks |subgroup| * index products, so
  // it can exceed the budget without invalidating anything above
  {
    ojson jd;
    try {
      jd["two_sided"] =
          to_str(gamma_double_coset_count(ctx.h, ctx.cosets, cfg.budget));
    } catch (const BudgetExceededError& e) {
      jd["two_sided_skipped"] = e.what();
    }
    jd["point_side"] = to_str(gamma_orbit_count_on_halfspace(ctx.h));
    rep["double_cosets"] = std::move(jd);
  }

  // dual-side checksums; transcription failures here are recorded, not fatal
  {
    SpectralChecksums cs = spectral_checksums(cfg.p, cfg.n);
    rep["spectral_checksums"] = checksums_json(cs);
    if (!cs.dual_ok)
      disc.push_back({"dual_checksum/sum_count_dim2", to_str(cs.sum_count_dim2),
                      to_str(cs.group_order),
                      "character-count census vs group order"});
    if (cs.regime_supported && !cs.index_ok)
      disc.push_back({"dual_checksum/sum_m_dim", to_str(cs.sum_m_dim),
                      to_str(cs.index), "multiplicity-dimension sum vs index"});
  }

  // worked identities
  {
    ConstantFunctionIdentity ci = constant_function_identity(ctx);
    if (!ci.matches) oracles_ok = false;
    ojson je;
    je["direct"] = to_str(ci.direct_total);
    je["group_order"] = to_str(ci.group_order);
    je["matches"] = ci.matches;
    rep["constant_function_identity"] = std::move(je);

    BasePointMassIdentity bi = base_point_mass_identity(ctx);
    if (!bi.oracle_integral || !bi.orbit_count_matches) oracles_ok = false;
    ojson jb;
    jb["oracle"] = to_str(bi.oracle);
    jb["oracle_integral"] = bi.oracle_integral;
    jb["subgroup_orbit_count"] = to_str(bi.gamma_orbits);
    jb["orbit_count_matches"] = bi.orbit_count_matches;
    jb["printed_main"] = to_str(bi.printed_main);
    jb["printed_extra"] = to_str(bi.printed_extra);
    jb["printed_total"] = to_str(bi.printed_total);
    jb["printed_matches"] = bi.printed_matches;
    rep["base_point_mass_identity"] = std::move(jb);
    if (!bi.printed_matches)
      disc.push_back({"point_mass_count/printed_total",
                      to_str(bi.printed_total), to_str(bi.oracle),
                      "base-point mass of the constant function"});
  }

  // the two printed chains for the three-distinct-eigenvalue total weight
  {
    Hyp2TotalConstants hc = hyp2_total_constants(cfg.p, cfg.n);
    ojson jh;
    jh["main_text"] = to_str(hc.main_text);
    jh["appendix"] = to_str(hc.appendix);
    jh["weight"] = to_str(hc.weight);
    rep["hyp2_total_weight"] = std::move(jh);
    if (hc.main_text != hc.weight)
      disc.push_back({"hyp2_total_weight/main_text_chain", to_str(hc.main_text),
                      to_str(hc.weight), "per-class weight constant"});
    if (hc.appendix != hc.weight)
      disc.push_back({"hyp2_total_weight/appendix_chain", to_str(hc.appendix),
                      to_str(hc.weight), "per-class weight constant"});
  }

  ojson jd = ojson::array();
  for (const auto& d : disc) jd.push_back(discrepancy_json(d));
  rep["discrepancies"] = std::move(jd);

  ojson sum;
  sum["oracle_identities_ok"] = oracles_ok;
  sum["discrepancy_count"] = disc.size();
  rep["summary"] = std::move(sum);

  RunResult out;
  out.exit_code = oracles_ok ? 0 : 1;
  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "# gl3trace verify p=" << cfg.p << " n=" << cfg.n
        << " seed=" << cfg.seed << "\n";
    csv << "# oracle_identities_ok=" << (oracles_ok ? "true" : "false")
        << " discrepancies=" << disc.size() << "\n";
    csv << "f,gamma,g_class,kind,weight,oracle,closed,closed_matches\n";
    for (const auto& jf : rep["geometric"])
      for (const auto& jr : jf["rows"]) {
        csv << jf["f"].get<std::string>() << ','
            << jr["gamma"].get<std::string>() << ','
            << jr["g_class"].get<std::string>() << ','
            << jr["kind"].get<std::string>() << ','
            << jr["weight"].get<std::string>() << ','
            << jr["oracle"].get<std::string>() << ',';
        if (jr["closed"].is_null())
          csv << ",";
        else
          csv << jr["closed"].get<std::string>() << ','
              << (jr["closed_matches"].get<bool>() ? "true" : "false");
        csv << "\n";
      }
    out.body = csv.str();
  } else {
    out.body = render(rep);
  }
  return out;
}

RunResult run_orbital(const RunConfig& cfg, const std::string& descriptor) {
  Tower t = Tower::build(cfg.p, cfg.n, poly_ptr(cfg), cfg.delta_rule);
  HalfSpace h = HalfSpace::build(t, cfg.budget);
  Field fq2 = build_quadratic_extension(t.fq);
  ConjClasses cc = ConjClasses::build(t.fq, fq2, t.fq3);
  const ClassDescriptor& d = find_class(t, fq2, cc, descriptor);

  ojson rep = header_block("orbital");
  rep["config"] = config_block(cfg, t);

  ojson jc;
  jc["descriptor"] = descriptor;
  jc["label"] = d.label(t.fq);
  jc["kind"] = class_kind_name(d.kind);
  jc["params"] = d.params;
  jc["size"] = to_str(d.size);
  jc["centralizer_order"] = to_str(d.centralizer_order);
  jc["rep"] = mat3_codes(d.rep);
  rep["class"] = std::move(jc);

  ojson evals = ojson::array();
  for (const auto& nf : test_functions(cfg, h)) {
    ojson e;
    e["f"] = nf.name;

    bool has_closed = false;
    Rat closed;
    try {
      ClosedOrbital co = orbital_sum_closed(h, nf.f, d);
      has_closed = true;
      closed = co.value;
      e["closed"] = to_str(co.value);
      if (co.undefined_terms) e["undefined_summands"] = co.undefined_terms;
      ojson hf = ojson::array();
      for (const Mat2& k : co.hf_inputs) hf.push_back(mat2_codes(k));
      e["hf_inputs"] = std::move(hf);
    } catch (const WrongBranchError& w) {
      e["closed"] = nullptr;
      e["branch_note"] = w.what();
    }

    bool has_conj = false;
    Rat conj;
    if (d.kind == ClassKind::EllCubic) {
      conj = orbital_sum_cubic_conjugation(h, nf.f, d.params[0]);
      has_conj = true;
      e["conjugation_route"] = to_str(conj);
    }

    try {
      Rat oracle = orbital_sum_oracle(h, nf.f, d.rep, cfg.budget);
      e["oracle"] = to_str(oracle);
      if (has_closed) e["closed_matches"] = closed == oracle;
      if (has_conj) e["conjugation_route_matches"] = conj == oracle;
    } catch (const BudgetExceededError& b) {
      e["oracle_skipped"] = b.what();
    }
    evals.push_back(std::move(e));
  }
  rep["evaluations"] = std::move(evals);

  RunResult out;
  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "# gl3trace orbital " << d.label(t.fq) << " p=" << cfg.p
        << " n=" << cfg.n << "\n";
    csv << "f,closed,oracle,closed_matches\n";
    for (const auto& e : rep["evaluations"]) {
      csv << e["f"].get<std::string>() << ',';
      if (e.contains("closed") && !e["closed"].is_null())
        csv << e["closed"].get<std::string>();
      csv << ',';
      if (e.contains("oracle")) csv << e["oracle"].get<std::string>();
      csv << ',';
      if (e.contains("closed_matches"))
        csv << (e["closed_matches"].get<bool>() ? "true" : "false");
      csv << "\n";
    }
    out.body = csv.str();
  } else {
    out.body = render(rep);
  }
  return out;
}

RunResult run_decompose(const RunConfig& cfg) {
  require_q_1_mod_3(cfg.p, cfg.n);
  MultiplicityReport mr = multiplicity_report(cfg.p, cfg.n);
  SpectralChecksums cs = spectral_checksums(cfg.p, cfg.n);

  ojson rep = header_block("decompose");
  ojson jc;
  jc["p"] = cfg.p;
  jc["n"] = cfg.n;
  jc["q"] = to_str(mr.q);
  rep["config"] = std::move(jc);

  ojson rows = ojson::array();
  for (const MultiplicityRow& r : mr.rows) {
    ojson jr;
    jr["family"] = irrep_family_name(r.family);
    jr["case"] = r.case_id;
    jr["condition"] = r.condition;
    jr["count"] = to_str(r.count);
    jr["dimension"] = to_str(r.dimension);
    jr["multiplicity"] = to_str(r.m);
    jr["integral"] = r.is_integer;
    jr["nonnegative"] = r.is_nonnegative;
    rows.push_back(std::move(jr));
  }
  rep["rows"] = std::move(rows);
  rep["all_populated_integral"] = mr.all_populated_integral;
  rep["checksums"] = checksums_json(cs);

  RunResult out;
  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "# gl3trace decompose p=" << cfg.p << " n=" << cfg.n << "\n";
    csv << "family,case,condition,count,dimension,multiplicity\n";
    for (const MultiplicityRow& r : mr.rows)
      csv << irrep_family_name(r.family) << ',' << r.case_id << ','
          << csv_field(r.condition) << ',' << to_str(r.count) << ','
          << to_str(r.dimension) << ',' << to_str(r.m) << "\n";
    out.body = csv.str();
  } else {
    out.body = render(rep);
  }
  return out;
}

RunResult run_orbits(const RunConfig& cfg) {
  Tower t = Tower::build(cfg.p, cfg.n, poly_ptr(cfg), cfg.delta_rule);
  HalfSpace h = HalfSpace::build(t, cfg.budget);

  uint64_t total = 0;
  for (uint32_t s : h.orbit_sizes) total += s;
  if (total != h.num_points)
    throw Error("orbit sizes do not tile the half-space");

  RunResult out;
  if (cfg.format == "json") {
    ojson rep = header_block("orbits");
    rep["config"] = config_block(cfg, t);
    ojson rows = ojson::array();
    for (size_t i = 0; i < h.orbit_reps.size(); ++i) {
      uint64_t pt = h.orbit_reps[i];
      ojson jr;
      jr["orbit"] = i;
      jr["alpha"] = t.fq3.coords(h.alpha_of(pt));
      jr["beta"] = t.fq3.coords(h.beta_of(pt));
      jr["size"] = h.orbit_sizes[i];
      rows.push_back(std::move(jr));
    }
    rep["orbits"] = std::move(rows);
    rep["total_points"] = to_str(BigInt(total));
    out.body = render(rep);
  } else {
    std::ostringstream csv;
    csv << "# gl3trace orbits p=" << cfg.p << " n=" << cfg.n << " q=" << t.q
        << " total_points=" << total << "\n";
    csv << "orbit,a1,a2,a3,b1,b2,b3,size\n";
    for (size_t i = 0; i < h.orbit_reps.size(); ++i) {
      uint64_t pt = h.orbit_reps[i];
      auto a = t.fq3.coords(h.alpha_of(pt));
      auto b = t.fq3.coords(h.beta_of(pt));
      csv << i << ',' << a[0] << ',' << a[1] << ',' << a[2] << ',' << b[0]
          << ',' << b[1] << ',' << b[2] << ',' << h.orbit_sizes[i] << "\n";
    }
    out.body = csv.str();
  }
  return out;
}

RunResult run_chars(const RunConfig& cfg) {
  Tower t = Tower::build(cfg.p, cfg.n, poly_ptr(cfg), cfg.delta_rule);
  Field fq2 = build_quadratic_extension(t.fq);
  ConjClasses cc = ConjClasses::build(t.fq, fq2, t.fq3);

  RunResult out;
  if (cfg.format == "json") {
    ojson rep = header_block("chars");
    rep["config"] = config_block(cfg, t);
    ojson rows = ojson::array();
    for (const auto& d : cc.classes) {
      ojson jr;
      jr["label"] = d.label(t.fq);
      jr["kind"] = class_kind_name(d.kind);
      jr["params"] = d.params;
      jr["size"] = to_str(d.size);
      jr["chi"] = to_str(chi_rho(t, fq2, d));
      rows.push_back(std::move(jr));
    }
    rep["classes"] = std::move(rows);
    out.body = render(rep);
  } else {
    std::ostringstream csv;
    csv << "# gl3trace chars p=" << cfg.p << " n=" << cfg.n << " q=" << t.q
        << "\n";
    csv << "label,kind,size,chi\n";
    for (const auto& d : cc.classes)
      csv << d.label(t.fq) << ',' << class_kind_name(d.kind) << ','
          << to_str(d.size) << ',' << to_str(chi_rho(t, fq2, d)) << "\n";
    out.body = csv.str();
  }
  return out;
}

}  // namespace gl3trace
