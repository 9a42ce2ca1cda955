#pragma once

#include "defcat/diagram.hpp"
#include "defcat/strictify.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace defcat {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what) {}
};

// ---------------------------------------------------------------------------
// scalars: integers, [num, den] pairs, or "n/d" strings
// ---------------------------------------------------------------------------

template <class K>
K parse_scalar(const json& j, const FieldContext<K>& field, const std::string& path);

template <>
inline Fp parse_scalar<Fp>(const json& j, const FieldContext<Fp>& field, const std::string& path) {
  if (j.is_number_integer()) return field.make(j.get<long long>());
  if (j.is_string()) {
    try {
      return field.make(std::stoll(j.get<std::string>()));
    } catch (...) {
      throw SchemaError(path, "cannot parse field element string over F_p");
    }
  }
  throw SchemaError(path, "expected an integer over F_p");
}

template <>
inline Rat parse_scalar<Rat>(const json& j, const FieldContext<Rat>&, const std::string& path) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
    return Rat(mpz_class((long)j[0].get<long long>()), mpz_class((long)j[1].get<long long>()));
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    try {
      auto slash = s.find('/');
      if (slash == std::string::npos) return Rat(mpz_class(s), mpz_class(1));
      return Rat(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    } catch (...) {
      throw SchemaError(path, "cannot parse rational '" + s + "'");
    }
  }
  throw SchemaError(path, "expected an integer, [num,den] pair, or \"n/d\" string");
}

inline json emit_scalar(const Fp& v) { return json(v.value()); }
inline json emit_scalar(const Rat& v) {
  const mpq_class& q = v.value();
  if (q.get_den() == 1) {
    if (q.get_num().fits_slong_p()) return json(q.get_num().get_si());
    return json(q.get_num().get_str());
  }
  return json(q.get_str());
}

template <class K>
Vec<K> parse_vec(const json& j, int len, const FieldContext<K>& field, const std::string& path) {
  if (!j.is_array() || (int)j.size() != len)
    throw SchemaError(path, "expected an array of length " + std::to_string(len));
  Vec<K> v(len);
  for (int i = 0; i < len; ++i) v(i) = parse_scalar<K>(j[i], field, path + "/" + std::to_string(i));
  return v;
}

template <class K>
json emit_vec(const Vec<K>& v) {
  json a = json::array();
  for (int i = 0; i < (int)v.size(); ++i) a.push_back(emit_scalar(v(i)));
  return a;
}

template <class K>
Mat<K> parse_matrix(const json& j, int rows, int cols, const FieldContext<K>& field,
                    const std::string& path) {
  if (!j.is_array() || (int)j.size() != rows)
    throw SchemaError(path, "expected " + std::to_string(rows) + " rows");
  Mat<K> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    m.row(i) = parse_vec<K>(j[i], cols, field, path + "/" + std::to_string(i)).transpose();
  return m;
}

template <class K>
json emit_matrix(const Mat<K>& m) {
  json a = json::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(emit_vec<K>(Vec<K>(m.row(i).transpose())));
  return a;
}

// ---------------------------------------------------------------------------
// named-object workspace
// ---------------------------------------------------------------------------

struct Workspace {
  std::map<std::string, json> named;

  // resolve a node that may be a "$ref"/plain-name reference
  const json& resolve(const json& j, const std::string& path) const {
    if (j.is_string()) {
      auto it = named.find(j.get<std::string>());
      if (it == named.end()) throw SchemaError(path, "dangling reference '" + j.get<std::string>() + "'");
      return it->second;
    }
    if (j.is_object() && j.contains("$ref")) {
      auto it = named.find(j["$ref"].get<std::string>());
      if (it == named.end())
        throw SchemaError(path, "dangling reference '" + j["$ref"].get<std::string>() + "'");
      return it->second;
    }
    return j;
  }

  void register_definitions(const json& file) {
    if (file.contains("definitions"))
      for (auto it = file["definitions"].begin(); it != file["definitions"].end(); ++it)
        named[it.key()] = it.value();
    if (file.contains("name") && file["name"].is_string()) named[file["name"].get<std::string>()] = file;
  }
};

inline void check_version(const json& j, const std::string& path) {
  if (!j.contains("schema_version"))
    throw SchemaError(path, "missing schema_version");
  if (!j["schema_version"].is_string() || j["schema_version"].get<std::string>() != kSchemaVersion)
    throw SchemaError(path, "unsupported schema_version (expected \"" + std::string(kSchemaVersion) + "\")");
}

inline long long field_characteristic(const json& j, const std::string& path) {
  if (!j.contains("field") || !j["field"].is_object() || !j["field"].contains("characteristic"))
    throw SchemaError(path, "missing field.characteristic");
  return j["field"]["characteristic"].get<long long>();
}

// ---------------------------------------------------------------------------
// rings
// ---------------------------------------------------------------------------

template <class K>
RingPtr<K> parse_ring(const json& raw, const Workspace& ws, const FieldContext<K>& field,
                      const std::string& path) {
  const json& j = ws.resolve(raw, path);
  if (!j.is_object()) throw SchemaError(path, "expected a ring object");
  if (!j.contains("basis") || !j["basis"].is_array()) throw SchemaError(path, "missing basis");
  auto r = std::make_shared<BaseRing<K>>();
  r->field = field;
  for (const auto& b : j["basis"]) r->basis.push_back(b.get<std::string>());
  const int d = r->dim();
  if (!j.contains("structure_constants")) throw SchemaError(path, "missing structure_constants");
  const json& sc = j["structure_constants"];
  if (!sc.is_array() || (int)sc.size() != d) throw SchemaError(path + "/structure_constants", "wrong shape");
  r->mult.assign(d, Mat<K>::Zero(d, d));
  for (int i = 0; i < d; ++i) {
    if (!sc[i].is_array() || (int)sc[i].size() != d)
      throw SchemaError(path + "/structure_constants/" + std::to_string(i), "wrong shape");
    for (int jj = 0; jj < d; ++jj)
      r->mult[i].col(jj) = parse_vec<K>(sc[i][jj], d, field,
                                        path + "/structure_constants/" + std::to_string(i) + "/" +
                                            std::to_string(jj));
  }
  if (j.contains("maximal_ideal")) {
    std::vector<int> mi = j["maximal_ideal"].get<std::vector<int>>();
    std::vector<int> expect;
    for (int i = 1; i < d; ++i) expect.push_back(i);
    if (mi != expect)
      throw SchemaError(path + "/maximal_ideal", "must list basis indices 1..dim-1 (unit is basis 0)");
  }
  return r;
}

template <class K>
json emit_ring(const BaseRing<K>& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "ring";
  j["field"] = {{"characteristic", r.field.characteristic()}};
  j["basis"] = r.basis;
  json sc = json::array();
  for (int i = 0; i < r.dim(); ++i) {
    json row = json::array();
    for (int jj = 0; jj < r.dim(); ++jj) row.push_back(emit_vec<K>(Vec<K>(r.mult[i].col(jj))));
    sc.push_back(row);
  }
  j["structure_constants"] = sc;
  return j;
}

template <class K>
RingSurjection<K> parse_surjection(const json& raw, const Workspace& ws, const FieldContext<K>& field,
                                   const std::string& path) {
  const json& j = ws.resolve(raw, path);
  RingSurjection<K> s;
  if (!j.contains("source") || !j.contains("target")) throw SchemaError(path, "missing source/target");
  s.source = parse_ring<K>(j["source"], ws, field, path + "/source");
  s.target = parse_ring<K>(j["target"], ws, field, path + "/target");
  if (!j.contains("matrix")) throw SchemaError(path, "missing matrix");
  s.theta = parse_matrix<K>(j["matrix"], s.target->dim(), s.source->dim(), field, path + "/matrix");
  return s;
}

template <class K>
json emit_surjection(const RingSurjection<K>& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "surjection";
  j["source"] = emit_ring<K>(*s.source);
  j["target"] = emit_ring<K>(*s.target);
  j["matrix"] = emit_matrix<K>(s.theta);
  return j;
}

// ---------------------------------------------------------------------------
// categories
// ---------------------------------------------------------------------------

template <class K>
CatPtr<K> parse_category(const json& raw, const Workspace& ws, const FieldContext<K>& field,
                         const std::string& path) {
  const json& j = ws.resolve(raw, path);
  auto c = std::make_shared<LinCategory<K>>();
  if (!j.contains("ring")) throw SchemaError(path, "missing ring");
  c->ring = parse_ring<K>(j["ring"], ws, field, path + "/ring");
  const int d = c->ring->dim();
  if (!j.contains("objects")) throw SchemaError(path, "missing objects");
  for (const auto& o : j["objects"]) c->objects.push_back(o.get<std::string>());
  const int n = c->n_objects();
  auto obj_index = [&](const json& v, const std::string& p) {
    std::string name = v.get<std::string>();
    for (int i = 0; i < n; ++i)
      if (c->objects[i] == name) return i;
    throw SchemaError(p, "unknown object label '" + name + "'");
  };
  c->rank.assign(n, std::vector<int>(n, 0));
  if (!j.contains("homs")) throw SchemaError(path, "missing homs");
  for (size_t t = 0; t < j["homs"].size(); ++t) {
    const json& h = j["homs"][t];
    std::string p = path + "/homs/" + std::to_string(t);
    c->rank[obj_index(h["from"], p)][obj_index(h["to"], p)] = h["rank"].get<int>();
  }
  if (!j.contains("identities")) throw SchemaError(path, "missing identities");
  c->identity.resize(n);
  for (int x = 0; x < n; ++x) {
    if (!j["identities"].contains(c->objects[x]))
      throw SchemaError(path + "/identities", "missing identity for object " + c->objects[x]);
    const json& idj = j["identities"][c->objects[x]];
    std::string p = path + "/identities/" + c->objects[x];
    if (!idj.is_array() || (int)idj.size() != c->rank[x][x]) throw SchemaError(p, "wrong rank");
    Vec<K> id = Vec<K>::Zero(c->hom_dim(x, x));
    for (int b = 0; b < c->rank[x][x]; ++b)
      id.segment(b * d, d) = parse_vec<K>(idj[b], d, field, p + "/" + std::to_string(b));
    c->identity[x] = std::move(id);
  }
  if (j.contains("composition"))
    for (size_t t = 0; t < j["composition"].size(); ++t) {
      const json& e = j["composition"][t];
      std::string p = path + "/composition/" + std::to_string(t);
      int x = obj_index(e["from"], p), y = obj_index(e["mid"], p), z = obj_index(e["to"], p);
      const json& tab = e["table"];
      if (!tab.is_array() || (int)tab.size() != c->rank[y][z]) throw SchemaError(p + "/table", "wrong shape");
      typename LinCategory<K>::Table table(c->rank[y][z], std::vector<Vec<K>>(c->rank[x][y]));
      for (int b2 = 0; b2 < c->rank[y][z]; ++b2) {
        if (!tab[b2].is_array() || (int)tab[b2].size() != c->rank[x][y])
          throw SchemaError(p + "/table/" + std::to_string(b2), "wrong shape");
        for (int b1 = 0; b1 < c->rank[x][y]; ++b1) {
          const json& cell = tab[b2][b1];
          std::string cp = p + "/table/" + std::to_string(b2) + "/" + std::to_string(b1);
          if (!cell.is_array() || (int)cell.size() != c->rank[x][z]) throw SchemaError(cp, "wrong length");
          Vec<K> v = Vec<K>::Zero(c->hom_dim(x, z));
          for (int b = 0; b < c->rank[x][z]; ++b)
            v.segment(b * d, d) = parse_vec<K>(cell[b], d, field, cp + "/" + std::to_string(b));
          table[b2][b1] = std::move(v);
        }
      }
      c->comp[{x, y, z}] = std::move(table);
    }
  return c;
}

template <class K>
json emit_flat_mor(const LinCategory<K>& c, int x, int y, const Vec<K>& v) {
  const int d = c.ring->dim();
  json a = json::array();
  for (int b = 0; b < c.rank[x][y]; ++b) a.push_back(emit_vec<K>(Vec<K>(v.segment(b * d, d))));
  return a;
}

template <class K>
Vec<K> parse_flat_mor(const json& j, const LinCategory<K>& c, int x, int y, const std::string& path) {
  const int d = c.ring->dim();
  if (!j.is_array() || (int)j.size() != c.rank[x][y])
    throw SchemaError(path, "expected " + std::to_string(c.rank[x][y]) + " coefficient entries");
  Vec<K> v = Vec<K>::Zero(c.hom_dim(x, y));
  for (int b = 0; b < c.rank[x][y]; ++b)
    v.segment(b * d, d) = parse_vec<K>(j[b], d, c.ring->field, path + "/" + std::to_string(b));
  return v;
}

template <class K>
json emit_category(const LinCategory<K>& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "category";
  j["ring"] = emit_ring<K>(*c.ring);
  j["objects"] = c.objects;
  json homs = json::array();
  for (int x = 0; x < c.n_objects(); ++x)
    for (int y = 0; y < c.n_objects(); ++y)
      if (c.rank[x][y] > 0) homs.push_back({{"from", c.objects[x]}, {"to", c.objects[y]}, {"rank", c.rank[x][y]}});
  j["homs"] = homs;
  json ids = json::object();
  for (int x = 0; x < c.n_objects(); ++x) ids[c.objects[x]] = emit_flat_mor<K>(c, x, x, c.identity[x]);
  j["identities"] = ids;
  json comp = json::array();
  for (const auto& [key, t] : c.comp) {
    auto [x, y, z] = key;
    json tab = json::array();
    for (const auto& row : t) {
      json r = json::array();
      for (const auto& v : row) r.push_back(emit_flat_mor<K>(c, x, z, v));
      tab.push_back(r);
    }
    comp.push_back({{"from", c.objects[x]}, {"mid", c.objects[y]}, {"to", c.objects[z]}, {"table", tab}});
  }
  j["composition"] = comp;
  return j;
}

// ---------------------------------------------------------------------------
// deformations
// ---------------------------------------------------------------------------

template <class K>
LinearDeformation<K> parse_deformation(const json& raw, const Workspace& ws, const FieldContext<K>& field,
                                       const std::string& path) {
  const json& j = ws.resolve(raw, path);
  if (!j.contains("surjection") || !j.contains("total")) throw SchemaError(path, "missing surjection/total");
  RingSurjection<K> theta = parse_surjection<K>(j["surjection"], ws, field, path + "/surjection");
  CatPtr<K> total = parse_category<K>(j["total"], ws, field, path + "/total");
  if (!j.contains("reduced")) return strict_deformation_from_total<K>(total, theta);
  LinearDeformation<K> d;
  d.theta = theta;
  d.total = total;
  d.reduced = parse_category<K>(j["reduced"], ws, field, path + "/reduced");
  d.strict = j.value("strict", false);
  if (!j.contains("functor")) throw SchemaError(path, "missing functor (required with explicit reduced)");
  const json& fj = ws.resolve(j["functor"], path + "/functor");
  d.red.source = d.total;
  d.red.target = d.reduced;
  const int n = total->n_objects();
  d.red.obj.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    const std::string key = total->objects[x];
    std::string lbl = fj["object_map"][key].get<std::string>();
    for (int y = 0; y < d.reduced->n_objects(); ++y)
      if (d.reduced->objects[y] == lbl) d.red.obj[x] = y;
    if (d.red.obj[x] < 0) throw SchemaError(path + "/functor/object_map", "unknown target object " + lbl);
  }
  d.red.mats.assign(n, std::vector<Mat<K>>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      d.red.mats[x][y] = Mat<K>::Zero(d.reduced->hom_dim(d.red.obj[x], d.red.obj[y]), total->hom_dim(x, y));
  for (size_t t = 0; fj.contains("matrices") && t < fj["matrices"].size(); ++t) {
    const json& e = fj["matrices"][t];
    std::string p = path + "/functor/matrices/" + std::to_string(t);
    int x = -1, y = -1;
    for (int i = 0; i < n; ++i) {
      if (total->objects[i] == e["from"].get<std::string>()) x = i;
      if (total->objects[i] == e["to"].get<std::string>()) y = i;
    }
    if (x < 0 || y < 0) throw SchemaError(p, "unknown object");
    d.red.mats[x][y] = parse_matrix<K>(e["matrix"], d.reduced->hom_dim(d.red.obj[x], d.red.obj[y]),
                                       total->hom_dim(x, y), field, p + "/matrix");
  }
  return d;
}

template <class K>
json emit_deformation(const LinearDeformation<K>& d) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "deformation";
  j["surjection"] = emit_surjection<K>(d.theta);
  j["total"] = emit_category<K>(*d.total);
  j["reduced"] = emit_category<K>(*d.reduced);
  j["strict"] = d.strict;
  json f;
  json om = json::object();
  for (int x = 0; x < d.total->n_objects(); ++x)
    om[d.total->objects[x]] = d.reduced->objects[d.red.obj[x]];
  f["object_map"] = om;
  json mats = json::array();
  for (int x = 0; x < d.total->n_objects(); ++x)
    for (int y = 0; y < d.total->n_objects(); ++y)
      if (d.total->hom_dim(x, y) > 0)
        mats.push_back({{"from", d.total->objects[x]},
                        {"to", d.total->objects[y]},
                        {"matrix", emit_matrix<K>(d.red.mats[x][y])}});
  f["matrices"] = mats;
  j["functor"] = f;
  return j;
}

// ---------------------------------------------------------------------------
// fp modules over the base ring
// ---------------------------------------------------------------------------

template <class K>
FpModule<K> parse_module(const json& raw, const Workspace& ws, const FieldContext<K>& field,
                         const std::string& path) {
  const json& j = ws.resolve(raw, path);
  FpModule<K> m;
  if (!j.contains("ring")) throw SchemaError(path, "missing ring");
  m.ring = parse_ring<K>(j["ring"], ws, field, path + "/ring");
  int rows = j.value("generators", -1), cols = j.value("relations", -1);
  if (rows < 0 || cols < 0) throw SchemaError(path, "missing generators/relations counts");
  m.pres = RingMat<K>(rows, cols, *m.ring);
  if (cols > 0) {
    const json& p = j["presentation"];
    if (!p.is_array() || (int)p.size() != rows) throw SchemaError(path + "/presentation", "wrong shape");
    for (int i = 0; i < rows; ++i) {
      if (!p[i].is_array() || (int)p[i].size() != cols)
        throw SchemaError(path + "/presentation/" + std::to_string(i), "wrong shape");
      for (int jj = 0; jj < cols; ++jj)
        m.pres.at(i, jj) = parse_vec<K>(p[i][jj], m.ring->dim(), field,
                                        path + "/presentation/" + std::to_string(i) + "/" + std::to_string(jj));
    }
  }
  return m;
}

template <class K>
json emit_module(const FpModule<K>& m) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "module";
  j["ring"] = emit_ring<K>(*m.ring);
  j["generators"] = m.pres.rows;
  j["relations"] = m.pres.cols;
  json p = json::array();
  for (int i = 0; i < m.pres.rows; ++i) {
    json row = json::array();
    for (int jj = 0; jj < m.pres.cols; ++jj) row.push_back(emit_vec<K>(m.pres.at(i, jj)));
    p.push_back(row);
  }
  j["presentation"] = p;
  return j;
}

// ---------------------------------------------------------------------------
// cochains
// ---------------------------------------------------------------------------

template <class K>
Cochain<K> parse_cochain(const json& raw, const Workspace& ws, const HHCtxPtr<K>& h,
                         const std::string& path) {
  const json& j = ws.resolve(raw, path);
  Cochain<K> c = Cochain<K>::zero(h, j.value("degree", -1));
  if (c.degree < 0) throw SchemaError(path, "missing degree");
  const auto& cat = *h->cat;
  auto obj_index = [&](const std::string& name, const std::string& p) {
    for (int i = 0; i < cat.n_objects(); ++i)
      if (cat.objects[i] == name) return i;
    throw SchemaError(p, "unknown object label '" + name + "'");
  };
  if (!j.contains("entries")) return c;
  for (size_t t = 0; t < j["entries"].size(); ++t) {
    const json& e = j["entries"][t];
    std::string p = path + "/entries/" + std::to_string(t);
    std::vector<int> objs;
    for (const auto& o : e["objects"]) objs.push_back(obj_index(o.get<std::string>(), p + "/objects"));
    if ((int)objs.size() != c.degree + 1) throw SchemaError(p + "/objects", "wrong tuple length");
    std::vector<int> args = c.degree > 0 ? e["args"].get<std::vector<int>>() : std::vector<int>{};
    if ((int)args.size() != c.degree) throw SchemaError(p + "/args", "wrong argument count");
    // mixed-radix column index, last argument fastest
    int col = 0;
    for (int i = 0; i < c.degree; ++i) {
      int rd = h->reduced_dim(objs[i + 1], objs[i]);
      if (args[i] < 0 || args[i] >= rd) throw SchemaError(p + "/args", "argument index out of range");
      col = col * rd + args[i];
    }
    const int rows = cat.hom_dim(objs.back(), objs.front());
    auto& m = c.val[objs];
    if (m.rows() == 0) m = Mat<K>::Zero(rows, arg_block_size<K>(*h, objs));
    Vec<K> value = parse_flat_mor<K>(e["value"], cat, objs.back(), objs.front(), p + "/value");
    m.col(col) = value;
  }
  return c;
}

template <class K>
json emit_cochain(const Cochain<K>& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "cochain";
  j["degree"] = c.degree;
  const auto& h = *c.hctx;
  const auto& cat = *h.cat;
  json entries = json::array();
  for (const auto& [objs, m] : c.val) {
    std::vector<int> radix;
    for (size_t i = 1; i < objs.size(); ++i) radix.push_back(h.reduced_dim(objs[i], objs[i - 1]));
    for (int col = 0; col < m.cols(); ++col) {
      if (is_zero_matrix<K>(Mat<K>(m.col(col)))) continue;
      std::vector<int> args(radix.size());
      int rem = col;
      for (int i = (int)radix.size() - 1; i >= 0; --i) {
        args[i] = rem % radix[i];
        rem /= radix[i];
      }
      json names = json::array();
      for (int o : objs) names.push_back(cat.objects[o]);
      entries.push_back({{"objects", names},
                         {"args", args},
                         {"value", emit_flat_mor<K>(cat, objs.back(), objs.front(), Vec<K>(m.col(col)))}});
    }
  }
  j["entries"] = entries;
  return j;
}

// ---------------------------------------------------------------------------
// spaces (poset + structure presheaf)
// ---------------------------------------------------------------------------

template <class K>
StructurePresheaf<K> parse_space(const json& raw, const Workspace& ws, const FieldContext<K>& field,
                                 const std::string& path, bool* minimal_open = nullptr) {
  const json& j = ws.resolve(raw, path);
  StructurePresheaf<K> o;
  if (!j.contains("elements")) throw SchemaError(path, "missing elements");
  for (const auto& e : j["elements"]) o.poset.labels.push_back(e.get<std::string>());
  const int n = o.poset.size();
  auto idx = [&](const std::string& name, const std::string& p) {
    for (int i = 0; i < n; ++i)
      if (o.poset.labels[i] == name) return i;
    throw SchemaError(p, "unknown element '" + name + "'");
  };
  o.poset.leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) o.poset.leq[i][i] = true;
  for (const auto& pair : j.value("leq", json::array())) {
    int a = idx(pair[0].get<std::string>(), path + "/leq");
    int b = idx(pair[1].get<std::string>(), path + "/leq");
    o.poset.leq[a][b] = true;
  }
  o.base = make_field_ring<K>(field);
  if (!j.contains("algebras")) throw SchemaError(path, "missing algebras");
  o.algebra.resize(n);
  for (int i = 0; i < n; ++i) {
    if (!j["algebras"].contains(o.poset.labels[i]))
      throw SchemaError(path + "/algebras", "missing algebra for " + o.poset.labels[i]);
    o.algebra[i] = parse_ring<K>(j["algebras"][o.poset.labels[i]], ws, field,
                                 path + "/algebras/" + o.poset.labels[i]);
  }
  for (int i = 0; i < n; ++i) o.res[{i, i}] = Mat<K>::Identity(o.algebra[i]->dim(), o.algebra[i]->dim());
  for (const auto& r : j.value("restrictions", json::array())) {
    int v = idx(r["from"].get<std::string>(), path + "/restrictions");
    int u = idx(r["to"].get<std::string>(), path + "/restrictions");
    o.res[{v, u}] =
        parse_matrix<K>(r["matrix"], o.algebra[u]->dim(), o.algebra[v]->dim(), field, path + "/restrictions");
  }
  if (minimal_open) *minimal_open = j.value("minimal_open_basis", false);
  return o;
}

// ---------------------------------------------------------------------------
// morphisms (for the lift subcommand)
// ---------------------------------------------------------------------------

template <class K>
Mor<K> parse_morphism(const json& raw, const Workspace& ws, const LinCategory<K>& c,
                      const std::string& path) {
  const json& j = ws.resolve(raw, path);
  auto idx = [&](const std::string& name) {
    for (int i = 0; i < c.n_objects(); ++i)
      if (c.objects[i] == name) return i;
    throw SchemaError(path, "unknown object '" + name + "'");
  };
  Mor<K> m;
  m.src = idx(j["source"].get<std::string>());
  m.dst = idx(j["target"].get<std::string>());
  m.v = parse_flat_mor<K>(j["coords"], c, m.src, m.dst, path + "/coords");
  return m;
}

template <class K>
json emit_morphism(const LinCategory<K>& c, const Mor<K>& m) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "morphism";
  j["source"] = c.objects[m.src];
  j["target"] = c.objects[m.dst];
  j["coords"] = emit_flat_mor<K>(c, m.src, m.dst, m.v);
  return j;
}

inline json load_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw SchemaError(filename, "cannot open file");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw SchemaError(filename, std::string("malformed JSON: ") + e.what());
  }
  return j;
}

}  // namespace defcat
