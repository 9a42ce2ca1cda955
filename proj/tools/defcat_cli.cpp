// defcat — exact deformation-theory toolkit for finite linear categories.
//
// Subcommands operate on JSON descriptions of base rings, surjections,
// categories, modules, cochains, deformations, and finite ringed spaces.
// Exit codes: 0 success, 1 mathematical negative, 2 input error, 3 internal
// invariant violation.

#include "defcat/report.hpp"
#include "defcat/selftest.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace defcat;

namespace {

struct Options {
  std::vector<std::string> files;
  std::string out;
  bool text = false;
  unsigned long long seed = 1;
  int degree = 2;
  int degree_cap = 3;
  int effort = 1;
  int tor_degree = 1;
  std::string lift_op = "iso";
  std::vector<std::string> morphism_files;
};

void emit(const Report& rep, const Options& opt) {
  json j = rep.to_json();
  std::ostream* os = &std::cout;
  std::ofstream fout;
  if (!opt.out.empty()) {
    fout.open(opt.out);
    os = &fout;
  }
  if (opt.text) {
    render_text(*os, j);
  } else {
    *os << j.dump(2) << "\n";
  }
}

long long detect_characteristic(const std::vector<json>& files) {
  long long p = -1;
  std::function<bool(const json&, long long&)> scan = [&](const json& j, long long& out) {
    if (j.is_object()) {
      if (j.contains("field") && j["field"].is_object() && j["field"].contains("characteristic")) {
        out = j["field"]["characteristic"].get<long long>();
        return true;
      }
      for (const auto& [k, v] : j.items())
        if (scan(v, out)) return true;
    } else if (j.is_array()) {
      for (const auto& v : j)
        if (scan(v, out)) return true;
    }
    return false;
  };
  for (const auto& f : files) {
    long long q = -1;
    if (scan(f, q)) {
      if (p >= 0 && q != p) throw SchemaError("inputs", "mixed field characteristics");
      p = q;
    }
  }
  if (p < 0) throw SchemaError("inputs", "no field.characteristic found in any input");
  return p;
}

template <class K>
FieldContext<K> field_for(long long p);
template <>
FieldContext<Fp> field_for<Fp>(long long p) {
  if (!is_probable_prime(p)) throw SchemaError("field", "characteristic must be 0 or prime");
  return FieldContext<Fp>{p};
}
template <>
FieldContext<Rat> field_for<Rat>(long long) {
  return FieldContext<Rat>{};
}

// run fn<K> with the scalar type matching the characteristic
template <class Fn>
int with_field(long long p, Fn&& fn) {
  if (p == 0) return fn(FieldContext<Rat>{});
  return fn(field_for<Fp>(p));
}

Workspace make_workspace(const std::vector<json>& files) {
  Workspace ws;
  for (const auto& f : files) ws.register_definitions(f);
  return ws;
}

std::vector<json> load_inputs(const Options& opt, Report& rep, size_t expected = 0) {
  std::vector<json> files;
  for (const auto& f : opt.files) {
    json j = load_json_file(f);
    check_version(j, f);
    rep.input_digests.push_back(digest(j));
    files.push_back(std::move(j));
  }
  if (expected && files.size() != expected)
    throw SchemaError("inputs", "expected " + std::to_string(expected) + " input file(s)");
  return files;
}

// ---------------------------------------------------------------------------
// subcommand bodies
// ---------------------------------------------------------------------------

template <class K>
int cmd_validate(FieldContext<K> field, const std::vector<json>& files, const Workspace& ws, Report& rep) {
  json results = json::array();
  bool all_ok = true;
  for (size_t i = 0; i < files.size(); ++i) {
    const json& j = files[i];
    std::string kind = j.value("kind", "");
    std::string path = "input[" + std::to_string(i) + "]";
    json entry;
    entry["kind"] = kind;
    ValidationReport v;
    if (kind == "ring") {
      auto r = parse_ring<K>(j, ws, field, path);
      v = validate_base_ring<K>(*r);
      if (v.ok()) entry["nilpotency_order"] = max_ideal_nilpotency<K>(*r);
    } else if (kind == "surjection") {
      auto s = parse_surjection<K>(j, ws, field, path);
      v = validate_surjection<K>(s);
      if (v.ok()) {
        auto chain = kernel_filtration<K>(s);
        json dims = json::array();
        for (const auto& m : chain) dims.push_back((int)m.cols());
        entry["kernel_filtration_dims"] = dims;
        entry["nilpotency_order"] = (int)chain.size();
      }
    } else if (kind == "category") {
      auto c = parse_category<K>(j, ws, field, path);
      v = validate_category<K>(*c);
    } else if (kind == "module") {
      auto m = parse_module<K>(j, ws, field, path);
      v = validate_fp_module<K>(m);
      if (v.ok()) {
        RingModuleContext<K> ctx(m.ring);
        entry["k_dimension"] = k_dimension<K>(ctx, m);
      }
    } else if (kind == "deformation") {
      auto d = parse_deformation<K>(j, ws, field, path);
      v = validate_deformation<K>(d);
      entry["strict"] = d.strict;
      if (v.ok() && d.strict) entry["strict_tables_match"] = strict_tables_match<K>(d);
    } else if (kind == "space") {
      bool minimal = false;
      auto o = parse_space<K>(j, ws, field, path, &minimal);
      v = validate_presheaf<K>(o);
      entry["minimal_open_basis"] = minimal;
    } else {
      throw SchemaError(path, "unknown kind '" + kind + "'");
    }
    entry["valid"] = v.ok();
    entry["violations"] = v.violations;
    all_ok = all_ok && v.ok();
    results.push_back(entry);
  }
  rep.results["objects"] = results;
  return all_ok ? 0 : 1;
}

template <class K>
int cmd_tor_ext(bool tor, int degree, FieldContext<K> field, const std::vector<json>& files,
                const Workspace& ws, Report& rep) {
  auto x = parse_module<K>(files.at(0), ws, field, "input[0]");
  auto m = parse_module<K>(files.at(1), ws, field, "input[1]");
  RingModuleContext<K> ctx(x.ring);
  FpModule<K> result = tor ? tor_fp<K>(ctx, degree, x, m) : ext_fp<K>(ctx, degree, x, m);
  rep.results["degree"] = degree;
  rep.results["k_dimension"] = k_dimension<K>(ctx, result);
  rep.results["module"] = emit_module<K>(result);
  return 0;
}

template <class K>
int cmd_flat(FieldContext<K> field, const std::vector<json>& files, const Workspace& ws, Report& rep) {
  auto m = parse_module<K>(files.at(0), ws, field, "input[0]");
  RingModuleContext<K> ctx(m.ring);
  bool flat = is_flat<K>(ctx, m);
  bool coflat = is_coflat<K>(ctx, m);
  rep.results["flat"] = flat;
  rep.results["coflat"] = coflat;
  rep.results["k_dimension"] = k_dimension<K>(ctx, m);
  return flat ? 0 : 1;
}

template <class K>
int cmd_basechange(FieldContext<K> field, const std::vector<json>& files, const Workspace& ws,
                   Report& rep) {
  auto c = parse_category<K>(files.at(0), ws, field, "input[0]");
  auto s = parse_surjection<K>(files.at(1), ws, field, "input[1]");
  auto v = validate_surjection<K>(s);
  if (!v.ok()) throw SchemaError("input[1]", "invalid surjection: " + v.summary());
  LinCategory<K> out = base_change_category<K>(*c, s);
  auto vc = validate_category<K>(out);
  rep.results["category"] = emit_category<K>(out);
  rep.results["valid"] = vc.ok();
  if (!vc.ok()) throw std::domain_error("base change produced an invalid category: " + vc.summary());
  return 0;
}

template <class K>
int cmd_gr(FieldContext<K> field, const std::vector<json>& files, const Workspace& ws, Report& rep) {
  auto m = parse_module<K>(files.at(0), ws, field, "input[0]");
  auto s = parse_surjection<K>(files.at(1), ws, field, "input[1]");
  // realize the fp module over the one-object category of the ring, whose
  // category algebra is R itself in the same basis order
  auto total = std::make_shared<LinCategory<K>>(matrix_category<K>(s.source, {1}));
  BaseChange<K> bc = make_base_change<K>(total, s);
  RingModuleContext<K> rctx(m.ring);
  auto cp = concrete_module<K>(rctx, m);
  if (bc.up->lambda->dim() != (int)cp.mod.act.size())
    throw std::domain_error("gr: unexpected category algebra dimension");
  AlgebraModule<K> lam;
  lam.alg = bc.up->lambda;
  lam.dim = cp.mod.dim;
  lam.act = cp.mod.act;
  auto grr = gr_module<K>(bc, lam);
  rep.results["layer_dims"] = grr.layer_dims;
  rep.results["total_dim"] = grr.mod.dim;
  rep.results["input_dim"] = cp.mod.dim;
  return 0;
}

template <class K>
int cmd_hh(int degree, FieldContext<K> field, const std::vector<json>& files, const Workspace& ws,
           Report& rep) {
  auto c = parse_category<K>(files.at(0), ws, field, "input[0]");
  auto v = validate_category<K>(*c);
  if (!v.ok()) throw SchemaError("input[0]", "invalid category: " + v.summary());
  auto h = make_hh_context<K>(c);
  auto result = hh<K>(h, degree);
  rep.results["degree"] = degree;
  rep.results["dimension"] = result.dim;
  json reps = json::array();
  for (const auto& cls : result.basis) reps.push_back(emit_cochain<K>(cls.representative));
  rep.results["representatives"] = reps;
  return 0;
}

template <class K>
int cmd_classify(FieldContext<K> field, const std::vector<json>& files, const Workspace& ws, Report& rep) {
  auto c = parse_category<K>(files.at(0), ws, field, "input[0]");
  auto v = validate_category<K>(*c);
  if (!v.ok()) throw SchemaError("input[0]", "invalid category: " + v.summary());
  auto h = make_hh_context<K>(c);
  auto cl = classify<K>(h);
  rep.results["hh1_dimension"] = cl.hh1_dim;
  rep.results["hh2_dimension"] = cl.hh2_dim;
  rep.results["rigid"] = cl.hh2_dim == 0;
  rep.results["pairwise_inequivalent"] = cl.pairwise_inequivalent;
  json defs = json::array();
  for (size_t i = 0; i < cl.deformations.size(); ++i) {
    json entry;
    entry["trivial"] = i == 0;
    entry["valid"] = validate_deformation<K>(cl.deformations[i]).ok();
    entry["deformation"] = emit_deformation<K>(cl.deformations[i]);
    defs.push_back(entry);
  }
  rep.results["deformations"] = defs;
  if (!cl.pairwise_inequivalent) throw std::domain_error("classification produced equivalent classes");
  return 0;
}

template <class K>
int cmd_deform(FieldContext<K> field, const std::vector<json>& files, const Workspace& ws, Report& rep) {
  auto c = parse_category<K>(files.at(0), ws, field, "input[0]");
  auto h = make_hh_context<K>(c);
  auto cochain = parse_cochain<K>(files.at(1), ws, h, "input[1]");
  LinearDeformation<K> d = first_order_deformation<K>(h, cochain);
  auto v = validate_deformation<K>(d);
  rep.results["valid"] = v.ok();
  rep.results["strict"] = d.strict;
  rep.results["deformation"] = emit_deformation<K>(d);
  if (!v.ok()) throw std::domain_error("constructed deformation invalid: " + v.summary());
  return 0;
}

template <class K>
int cmd_equiv(FieldContext<K> field, const std::vector<json>& files, const Workspace& ws, Report& rep) {
  auto c = parse_category<K>(files.at(0), ws, field, "input[0]/category");
  auto h = make_hh_context<K>(c);
  auto c1 = parse_cochain<K>(files.at(1), ws, h, "input[1]");
  auto c2 = parse_cochain<K>(files.at(2), ws, h, "input[2]");
  auto r = are_equivalent_with_functor<K>(h, c1, c2);
  rep.results["equivalent"] = r.equivalent;
  if (r.equivalent) {
    rep.results["witness"] = emit_cochain<K>(r.witness);
    rep.results["functor_verified"] = r.functor.has_value();
  }
  return r.equivalent ? 0 : 1;
}

template <class K>
int cmd_lift(const Options& opt, FieldContext<K> field, const std::vector<json>& files,
             const Workspace& ws, Report& rep) {
  auto d = parse_deformation<K>(files.at(0), ws, field, "input[0]");
  auto v = validate_deformation<K>(d);
  if (!v.ok()) throw SchemaError("input[0]", "invalid deformation: " + v.summary());
  std::vector<Mor<K>> mors;
  for (size_t i = 1; i < files.size(); ++i)
    mors.push_back(parse_morphism<K>(files[i], ws, *d.total, "input[" + std::to_string(i) + "]"));
  if (opt.lift_op == "iso") {
    if (mors.size() != 2) throw SchemaError("inputs", "lift --op iso needs morphisms f, g0");
    Mor<K> g = lift_isomorphism<K>(d, mors[0], mors[1]);
    rep.results["inverse"] = emit_morphism<K>(*d.total, g);
  } else if (opt.lift_op == "split") {
    if (mors.size() != 3) throw SchemaError("inputs", "lift --op split needs morphisms e, r0, s0");
    auto [r, s] = split_idempotent_lift<K>(d, mors[0], mors[1], mors[2]);
    rep.results["retraction"] = emit_morphism<K>(*d.total, r);
    rep.results["section"] = emit_morphism<K>(*d.total, s);
  } else if (opt.lift_op == "biproduct") {
    if (mors.size() != 4) throw SchemaError("inputs", "lift --op biproduct needs s1, s2, p1, p2");
    auto bp = lift_biproduct<K>(d, mors[0], mors[1], mors[2], mors[3]);
    rep.results["p1"] = emit_morphism<K>(*d.total, bp.p1);
    rep.results["p2"] = emit_morphism<K>(*d.total, bp.p2);
  } else {
    throw SchemaError("--op", "unknown lift operation '" + opt.lift_op + "'");
  }
  return 0;
}

template <class K>
int cmd_strictify(FieldContext<K> field, const std::vector<json>& files, const Workspace& ws,
                  Report& rep) {
  auto d = parse_deformation<K>(files.at(0), ws, field, "input[0]");
  auto v = validate_deformation<K>(d);
  if (!v.ok()) throw SchemaError("input[0]", "invalid deformation: " + v.summary());
  auto res = make_strict<K>(d);
  auto vs = validate_deformation<K>(res.strict);
  rep.results["strict_valid"] = vs.ok();
  rep.results["was_strict"] = d.strict;
  rep.results["deformation"] = emit_deformation<K>(res.strict);
  auto nat = validate_nat_transform<K>(res.strict.red, compose_functors<K>(d.red, res.phi), res.eta);
  rep.results["witness_natural"] = nat.ok();
  if (!vs.ok() || !nat.ok()) throw std::domain_error("strictification failed verification");
  return 0;
}

template <class K>
int cmd_space(FieldContext<K> field, const std::vector<json>& files, const Workspace& ws, Report& rep) {
  bool minimal = false;
  auto o = parse_space<K>(files.at(0), ws, field, "input[0]", &minimal);
  auto v = validate_presheaf<K>(o);
  if (!v.ok()) throw SchemaError("input[0]", "invalid presheaf: " + v.summary());
  if (!minimal)
    throw SchemaError("input[0]",
                      "cohomology requires minimal_open_basis: true (non-minimal bases unsupported)");
  auto sp = make_space_context<K>(o, minimal);
  rep.results["diagram_category"] = emit_category<K>(*sp.u);
  auto ac = acyclicity_check<K>(sp);
  json fails = json::array();
  for (auto [u, i, dim] : ac.failures)
    fails.push_back({{"element", o.poset.labels[u]}, {"degree", i}, {"dimension", dim}});
  rep.results["acyclic"] = ac.pass;
  rep.results["acyclicity_failures"] = fails;
  if (!ac.pass) return 1;
  auto sc = classify_space_deformations<K>(sp);
  rep.results["hh1_dimension"] = sc.classes.hh1_dim;
  rep.results["hh2_dimension"] = sc.classes.hh2_dim;
  rep.results["rigid"] = sc.classes.hh2_dim == 0;
  rep.results["n_deformation_classes"] = (int)sc.classes.deformations.size();
  return 0;
}

int cmd_selftest(const Options& opt, Report& rep) {
  json results = json::array();
  bool pass = true;
  auto run = [&](BatteryResult r) {
    json e;
    e["battery"] = r.name;
    e["pass"] = r.pass;
    e["checks"] = r.instances;
    e["failures"] = r.failures;
    results.push_back(e);
    pass = pass && r.pass;
    std::cerr << r.summary() << std::endl;
  };
  unsigned seed = (unsigned)opt.seed;
  int effort = opt.effort;
  FieldContext<Fp> f5{5};
  FieldContext<Rat> fq;
  run(ring_invariants<Fp>(f5, seed + 1, effort));
  run(ring_invariants<Rat>(fq, seed + 1, effort));
  run(lincat_invariants<Fp>(f5, seed + 2, effort));
  run(funmod_invariants<Fp>(f5, seed + 3, effort));
  run(funmod_invariants<Rat>(fq, seed + 3, effort));
  run(basechange_invariants<Fp>(f5, seed + 4, effort));
  run(hochschild_invariants<Fp>(f5, seed + 5, effort));
  run(hochschild_invariants<Rat>(fq, seed + 5, effort));
  run(lift_invariants<Fp>(f5, seed + 6, effort, 10 * effort, 5 * effort));
  run(lift_invariants<Rat>(fq, seed + 6, effort, 5 * effort, 3 * effort));
  run(karoubian_invariants<Fp>(f5, seed + 7, effort));
  run(strictify_invariants<Fp>(f5, seed + 8, effort));
  run(diagram_invariants<Fp>(f5, seed + 9, effort));
  run(reconstruction_invariants<Fp>(f5, seed + 10, effort));
  run(injective_lift_invariants<Fp>(f5, seed + 11, effort));
  run(nakayama_battery<Fp>(f5, seed + 12, 50 * effort));
  run(prop29_battery<Fp>(f5, seed + 13, 6 * effort));
  rep.results["batteries"] = results;
  rep.results["pass"] = pass;
  return pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"defcat — exact deformation theory of finite linear categories"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--text", opt.text, "human-readable output (default: JSON report)");
  app.add_option("-o,--output", opt.out, "write the report to a file");
  app.add_option("--seed", opt.seed, "seed for randomized batteries")->default_val(1);
  app.add_option("--degree-cap", opt.degree_cap, "maximum derived-functor degree")->default_val(3);

  auto add_files = [&](CLI::App* sub, int n = -1) {
    auto* o = sub->add_option("files", opt.files, "input JSON files");
    if (n > 0) o->expected(n);
    o->required();
  };
  auto* c_validate = app.add_subcommand("validate", "validate rings, categories, deformations, spaces");
  add_files(c_validate);
  auto* c_tor = app.add_subcommand("tor", "Tor_i(X, M) over the base ring");
  c_tor->add_option("--i", opt.tor_degree, "degree")->default_val(1);
  add_files(c_tor, 2);
  auto* c_ext = app.add_subcommand("ext", "Ext^i(X, M) over the base ring");
  c_ext->add_option("--i", opt.tor_degree, "degree")->default_val(1);
  add_files(c_ext, 2);
  auto* c_flat = app.add_subcommand("flat", "flatness and coflatness of an fp module");
  add_files(c_flat, 1);
  auto* c_bc = app.add_subcommand("basechange", "base change of a category along a surjection");
  add_files(c_bc, 2);
  auto* c_gr = app.add_subcommand("gr", "associated graded module of the kernel filtration");
  add_files(c_gr, 2);
  auto* c_hh = app.add_subcommand("hh", "Hochschild cohomology of a category over a field");
  c_hh->add_option("--degree", opt.degree, "cohomological degree")->default_val(2);
  add_files(c_hh, 1);
  auto* c_classify = app.add_subcommand("classify", "first-order deformation classes of a category");
  add_files(c_classify, 1);
  auto* c_deform = app.add_subcommand("deform", "build the first-order deformation of a 2-cocycle");
  add_files(c_deform, 2);
  auto* c_equiv = app.add_subcommand("equiv", "Gerstenhaber equivalence of two 2-cocycles");
  add_files(c_equiv, 3);
  auto* c_lift = app.add_subcommand("lift", "transport structure through a deformation (Appendix-A corrections)");
  c_lift->add_option("--op", opt.lift_op, "iso | split | biproduct")->default_val("iso");
  add_files(c_lift);
  auto* c_strict = app.add_subcommand("strictify", "replace a deformation by an equivalent strict one");
  add_files(c_strict, 1);
  auto* c_space = app.add_subcommand("space", "diagram category, acyclicity and deformation classes of a finite ringed space");
  add_files(c_space, 1);
  auto* c_selftest = app.add_subcommand("selftest", "run the full invariant battery of every module");
  c_selftest->add_option("--effort", opt.effort, "battery size multiplier")->default_val(1);

  CLI11_PARSE(app, argc, argv);

  Report rep;
  rep.seed = opt.seed;
  try {
    int code = 0;
    if (app.got_subcommand(c_selftest)) {
      rep.command = "selftest";
      code = cmd_selftest(opt, rep);
    } else {
      std::vector<json> files;
      auto dispatch = [&](const std::string& name, auto&& body) {
        rep.command = name;
        files = load_inputs(opt, rep);
        Workspace ws = make_workspace(files);
        long long p = detect_characteristic(files);
        code = with_field(p, [&](auto field) { return body(field, files, ws); });
      };
      if (app.got_subcommand(c_validate))
        dispatch("validate", [&](auto f, auto& fs, auto& ws) { return cmd_validate(f, fs, ws, rep); });
      else if (app.got_subcommand(c_tor))
        dispatch("tor", [&](auto f, auto& fs, auto& ws) {
          return cmd_tor_ext(true, opt.tor_degree, f, fs, ws, rep);
        });
      else if (app.got_subcommand(c_ext))
        dispatch("ext", [&](auto f, auto& fs, auto& ws) {
          return cmd_tor_ext(false, opt.tor_degree, f, fs, ws, rep);
        });
      else if (app.got_subcommand(c_flat))
        dispatch("flat", [&](auto f, auto& fs, auto& ws) { return cmd_flat(f, fs, ws, rep); });
      else if (app.got_subcommand(c_bc))
        dispatch("basechange", [&](auto f, auto& fs, auto& ws) { return cmd_basechange(f, fs, ws, rep); });
      else if (app.got_subcommand(c_gr))
        dispatch("gr", [&](auto f, auto& fs, auto& ws) { return cmd_gr(f, fs, ws, rep); });
      else if (app.got_subcommand(c_hh))
        dispatch("hh", [&](auto f, auto& fs, auto& ws) { return cmd_hh(opt.degree, f, fs, ws, rep); });
      else if (app.got_subcommand(c_classify))
        dispatch("classify", [&](auto f, auto& fs, auto& ws) { return cmd_classify(f, fs, ws, rep); });
      else if (app.got_subcommand(c_deform))
        dispatch("deform", [&](auto f, auto& fs, auto& ws) { return cmd_deform(f, fs, ws, rep); });
      else if (app.got_subcommand(c_equiv))
        dispatch("equiv", [&](auto f, auto& fs, auto& ws) { return cmd_equiv(f, fs, ws, rep); });
      else if (app.got_subcommand(c_lift))
        dispatch("lift", [&](auto f, auto& fs, auto& ws) { return cmd_lift(opt, f, fs, ws, rep); });
      else if (app.got_subcommand(c_strict))
        dispatch("strictify", [&](auto f, auto& fs, auto& ws) { return cmd_strictify(f, fs, ws, rep); });
      else if (app.got_subcommand(c_space))
        dispatch("space", [&](auto f, auto& fs, auto& ws) { return cmd_space(f, fs, ws, rep); });
    }
    rep.exit_code = code;
    emit(rep, opt);
    return code;
  } catch (const SchemaError& e) {
    rep.exit_code = 2;
    rep.results["error"] = e.what();
    emit(rep, opt);
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    rep.exit_code = 2;
    rep.results["error"] = e.what();
    emit(rep, opt);
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    rep.exit_code = 3;
    rep.results["error"] = e.what();
    emit(rep, opt);
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
