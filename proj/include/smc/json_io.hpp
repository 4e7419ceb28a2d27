#pragma once
// JSON forms of fields, data files, naive tables and reports. Objects use sorted keys, rationals are "p/q"
// strings, so dumping the same value always gives the same bytes.
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "json.hpp"

#include "smc/diophantine.hpp"
#include "smc/strata8.hpp"
#include "smc/verify.hpp"

namespace smc {

using json = nlohmann::json;

inline constexpr const char* kDataSchema = "smc-data/1";
inline constexpr const char* kNaiveSchema = "smc-naive/1";
inline constexpr const char* kReportSchema = "smc-report/1";

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// scalars

inline json to_json(const Q& q) { return q.get_str(); }

inline Q rational_from(const json& j) {
  if (j.is_number_integer()) return Q(j.get<long>());
  if (!j.is_string()) throw ParseError("expected a rational string, got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline json vec_json(const std::vector<Q>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

inline std::vector<Q> vec_from(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals, got " + j.dump());
  std::vector<Q> v;
  for (const auto& x : j) v.push_back(rational_from(x));
  return v;
}

inline json to_json(const Element& e) { return vec_json(e.coeffs()); }

inline Element element_from(const json& j, const FieldPtr& f) {
  auto c = vec_from(j);
  if (static_cast<int>(c.size()) != f->dim())
    throw ParseError("coefficient vector of length " + std::to_string(c.size()) + " in a field of degree " + std::to_string(f->dim()));
  return Element(f, c);
}

// ---------------------------------------------------------------------------
// fields

inline json field_json(const FieldPtr& f) {
  json j;
  j["name"] = f->name();
  j["generators"] = json::array();
  for (int i = 0; i < f->num_generators(); ++i) {
    const auto& g = f->generator(i);
    json mp = json::array();
    for (const auto& c : g.minpoly) mp.push_back(vec_json(c));
    j["generators"].push_back({{"name", g.name},
                               {"minpoly", mp},
                               {"box", {{"re", {to_json(g.box.re_lo), to_json(g.box.re_hi)}},
                                        {"im", {to_json(g.box.im_lo), to_json(g.box.im_hi)}}}}});
  }
  j["automorphisms"] = json::array();
  for (int a = 1; a < f->declared_automorphisms(); ++a) {
    const auto& au = f->automorphism(a);
    json imgs = json::array();
    for (const auto& v : au.images) imgs.push_back(vec_json(v));
    j["automorphisms"].push_back({{"name", au.name}, {"images", imgs}});
  }
  return j;
}

// Descriptors equal to one already seen (or to a named field) give back the same FieldPtr, so data loaded
// from different files can be compared element by element.
inline FieldPtr field_from(const json& j) {
  static std::mutex mu;
  static std::map<std::string, FieldPtr> cache;
  if (!j.is_object() || !j.contains("generators")) throw ParseError("field descriptor needs \"generators\"");
  const std::string name = j.value("name", std::string("K"));
  const std::string key = j.dump();
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  FieldPtr f;
  if (j["generators"].empty()) {
    f = Field::rationals();
  } else {
    for (const auto& n : field_names())
      if (n == name && field_json(named_field(n).field).dump() == key) f = named_field(n).field;
  }
  if (!f) {
    std::vector<Generator> gens;
    for (const auto& g : j.at("generators")) {
      Generator gen;
      gen.name = g.value("name", std::string("a") + std::to_string(gens.size()));
      for (const auto& c : g.at("minpoly")) gen.minpoly.push_back(vec_from(c));
      const auto& b = g.at("box");
      auto re = vec_from(b.at("re")), im = b.contains("im") ? vec_from(b.at("im")) : std::vector<Q>{Q(0), Q(0)};
      if (re.size() != 2 || im.size() != 2) throw ParseError("box intervals need two endpoints");
      gen.box = IsolatingBox::rect(re[0], re[1], im[0], im[1]);
      gens.push_back(gen);
    }
    std::vector<Automorphism> autos;
    if (j.contains("automorphisms"))
      for (const auto& a : j["automorphisms"]) {
        Automorphism au{a.value("name", std::string("sigma")), {}};
        for (const auto& v : a.at("images")) au.images.push_back(vec_from(v));
        autos.push_back(au);
      }
    try {
      f = std::make_shared<const Field>(name, gens, autos, true);
    } catch (const FieldError& e) {
      throw ParseError(std::string("field descriptor: ") + e.what());
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, f).first->second;
}

// ---------------------------------------------------------------------------
// fusion tables

inline json to_json(const FusionTensor& t) {
  json N = json::array();
  for (int a = 0; a < t.rank; ++a) {
    json row = json::array();
    for (int b = 0; b < t.rank; ++b) {
      json col = json::array();
      for (int c = 0; c < t.rank; ++c) col.push_back(t(a, b, c));
      row.push_back(col);
    }
    N.push_back(row);
  }
  return {{"fperm", t.fperm}, {"pi0", t.pi0}, {"N", N}};
}

inline std::vector<i64> cube_from(const json& j, int& n) {
  if (!j.is_array()) throw ParseError("fusion table must be a nested array");
  n = static_cast<int>(j.size());
  std::vector<i64> out;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError("fusion table is not n x n x n");
    for (const auto& col : row) {
      if (!col.is_array() || static_cast<int>(col.size()) != n) throw ParseError("fusion table is not n x n x n");
      for (const auto& x : col) {
        if (!x.is_number_integer()) throw ParseError("fusion coefficients must be integers");
        out.push_back(x.get<i64>());
      }
    }
  }
  return out;
}

inline FusionTensor fusion_from(const json& j) {
  FusionTensor t;
  t.N = cube_from(j.at("N"), t.rank);
  t.fperm = j.at("fperm").get<std::vector<int>>();
  if (static_cast<int>(t.fperm.size()) != t.rank) throw ParseError("fperm has the wrong length");
  for (int x : t.fperm)
    if (x < 0 || x >= t.rank) throw ParseError("fperm entry out of range");
  if (j.contains("pi0")) {
    t.pi0 = j["pi0"].get<std::vector<int>>();
  } else {
    // first label of each f-orbit, in label order
    std::vector<bool> seen(t.rank, false);
    for (int a = 0; a < t.rank; ++a) {
      if (seen[a]) continue;
      seen[a] = seen[t.fperm[a]] = true;
      t.pi0.push_back(a);
    }
  }
  for (int x : t.pi0)
    if (x < 0 || x >= t.rank) throw ParseError("pi0 entry out of range");
  return t;
}

inline json to_json(const NaiveFusion& n) {
  json N = json::array();
  for (int a = 0; a < n.r; ++a) {
    json row = json::array();
    for (int b = 0; b < n.r; ++b) {
      json col = json::array();
      for (int c = 0; c < n.r; ++c) col.push_back(n(a, b, c));
      row.push_back(col);
    }
    N.push_back(row);
  }
  return N;
}

inline NaiveFusion naive_from(const json& j) {
  NaiveFusion n;
  n.n = cube_from(j, n.r);
  return n;
}

// ---------------------------------------------------------------------------
// data files

struct DataFile {
  SMCData data;
  std::optional<std::vector<Q>> theta_turns;  // theta_i = exp(2 pi i t_i), when the field is a named cyclotomic one
};

inline json to_json(const SMCData& d, const std::optional<std::vector<Q>>& turns = std::nullopt) {
  json j;
  j["schema"] = kDataSchema;
  j["name"] = d.name;
  j["field"] = field_json(d.field);
  j["r"] = d.r;
  j["dual"] = d.dual;
  j["dims"] = json::array();
  for (const auto& x : d.dims) j["dims"].push_back(to_json(x));
  j["hatS"] = json::array();
  for (const auto& row : d.hatS) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    j["hatS"].push_back(r);
  }
  if (d.hatT) {
    j["hatT"] = json::array();
    for (const auto& x : *d.hatT) j["hatT"].push_back(to_json(x));
  }
  if (turns) j["theta_turns"] = vec_json(*turns);
  if (d.fusion) j["fusion"] = to_json(*d.fusion);
  return j;
}

inline json to_json(const DataFile& f) { return to_json(f.data, f.theta_turns); }

inline DataFile data_from(const json& j) {
  try {
    if (j.value("schema", std::string(kDataSchema)) != kDataSchema) throw ParseError("unsupported schema " + j["schema"].dump());
    DataFile out;
    SMCData& d = out.data;
    d.name = j.value("name", std::string());
    d.field = field_from(j.at("field"));
    d.r = j.at("r").get<int>();
    if (d.r < 1) throw ParseError("r must be positive");
    auto sized = [&](const json& a, const char* what) -> const json& {
      if (!a.is_array() || static_cast<int>(a.size()) != d.r) throw ParseError(std::string(what) + " must have r entries");
      return a;
    };
    for (const auto& row : sized(j.at("hatS"), "hatS")) {
      std::vector<Element> r;
      for (const auto& x : sized(row, "hatS row")) r.push_back(element_from(x, d.field));
      d.hatS.push_back(r);
    }
    for (const auto& x : sized(j.at("dims"), "dims")) d.dims.push_back(element_from(x, d.field));
    d.dual = j.contains("dual") ? j["dual"].get<std::vector<int>>() : derive_dual(d.hatS);
    if (static_cast<int>(d.dual.size()) != d.r) throw ParseError("dual must have r entries");
    for (int x : d.dual)
      if (x < 0 || x >= d.r) throw ParseError("dual entry out of range");
    if (j.contains("hatT")) {
      std::vector<Element> T;
      for (const auto& x : sized(j["hatT"], "hatT")) T.push_back(element_from(x, d.field));
      d.hatT = T;
    }
    if (j.contains("theta_turns")) {
      out.theta_turns = vec_from(sized(j["theta_turns"], "theta_turns"));
      const CyclotomicField* k = nullptr;
      for (const auto& n : field_names())
        if (named_field(n).field == d.field) k = &named_field(n);
      if (!k) throw ParseError("theta_turns need one of the named cyclotomic fields");
      std::vector<Element> T;
      try {
        for (const auto& t : *out.theta_turns) T.push_back(k->root_of_unity(t));
      } catch (const FieldError& e) {
        throw ParseError(e.what());
      }
      if (d.hatT && *d.hatT != T) throw ParseError("hatT and theta_turns disagree");
      d.hatT = T;
    }
    if (j.contains("fusion")) d.fusion = fusion_from(j["fusion"]);
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed data file: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// A naive table to split, optionally with the data whose twists drive the balancing filter.
struct NaiveFile {
  std::string name;
  NaiveFusion nhat;
  std::vector<int> dual;
  std::optional<DataFile> data;
};

inline json to_json(const NaiveFile& f) {
  json j{{"schema", kNaiveSchema}, {"name", f.name}, {"nhat", to_json(f.nhat)}, {"dual", f.dual}};
  if (f.data) j["data"] = to_json(*f.data);
  return j;
}

// Accepts a naive file, or a data file (whose Verlinde table is used).
inline NaiveFile naive_file_from(const json& j) {
  try {
    NaiveFile out;
    if (j.value("schema", std::string()) == kNaiveSchema) {
      out.name = j.value("name", std::string());
      out.nhat = naive_from(j.at("nhat"));
      out.dual = j.at("dual").get<std::vector<int>>();
      if (static_cast<int>(out.dual.size()) != out.nhat.r) throw ParseError("dual must have r entries");
      if (j.contains("data")) out.data = data_from(j["data"]);
    } else {
      out.data = data_from(j);
      out.name = out.data->data.name;
      out.dual = out.data->data.dual;
      try {
        out.nhat = verlinde_naive(out.data->data);
      } catch (const NonIntegralFusion& e) {
        throw ParseError(e.what());
      }
    }
    if (out.data && out.data->data.r != out.nhat.r) throw ParseError("embedded data has a different rank");
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed naive file: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// reports

inline json to_json(const Report& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"identity", x.identity}, {"where", x.where}, {"residual", x.residual}});
  return {{"check", r.check}, {"pass", r.pass()}, {"violations", v}, {"notes", r.notes}};
}

inline json to_json(const VerifyResult& v) {
  json reps = json::array();
  for (const auto& r : v.reports) reps.push_back(to_json(r));
  json j{{"pass", v.pass()}, {"checks", reps}, {"stratum", v.stratum}};
  if (!v.stratum.empty()) j["stratum_alias"] = stratum_alias(v.stratum);
  return j;
}

inline json to_json(const NamedValues& v) {
  json a = json::array();
  for (const auto& [k, x] : v) a.push_back({k, to_json(x)});
  return a;
}

inline json approx_json(const Element& e) {
  auto z = e.approx();
  std::ostringstream os;
  os.precision(12);
  os << z.real();
  if (z.imag() != 0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

inline json to_json(const Survivor& s) {
  json j{{"params", to_json(s.params)}, {"values", to_json(s.values)}, {"passed", s.passed}, {"notes", s.notes},
         {"group", s.group}};
  if (s.data) {
    j["data"] = to_json(*s.data);
    json ap = json::array();
    for (const auto& x : s.data->dims) ap.push_back(approx_json(x));
    j["dims_approx_non_normative"] = ap;
  }
  if (s.match)
    j["match"] = {{"entry", s.match->entry},
                  {"fusion_class", s.match->fusion_class},
                  {"perm", s.match->perm},
                  {"s_agrees", s.match->s_agrees},
                  {"split_classes", s.match->split_classes},
                  {"fusion_agrees", s.match->fusion_agrees}};
  if (s.twists)
    j["twist_scan"] = {{"max_order", s.twists->max_order},
                       {"solutions", s.twists->solutions},
                       {"first_order", s.twists->first_order},
                       {"first_turns", s.twists->first_turns}};
  return j;
}

inline json to_json(const FilterTrace& t) {
  return {{"examined", t.examined}, {"rejected", t.rejected}, {"samples", t.samples}};
}

inline json to_json(const StratumResult& r) {
  json sv = json::array();
  for (const auto& s : r.survivors) sv.push_back(to_json(s));
  json ranges = json::array();
  for (const auto& [k, v] : r.ranges) ranges.push_back({k, v});
  return {{"stratum", r.stratum}, {"ranges", ranges}, {"survivors", sv}, {"trace", to_json(r.trace)},
          {"citation", r.citation}, {"notes", r.notes}, {"tallies", r.tallies}};
}

inline json to_json(const SplitSolution& s) {
  json prods = json::array();
  const int r = s.tensor.r();
  for (int a = 1; a < r; ++a)
    for (int b = a; b < r; ++b) prods.push_back("X" + std::to_string(a) + " X" + std::to_string(b) + " = " + product_string(s.tensor, a, b));
  return {{"fusion", to_json(s.tensor)}, {"gauge", s.gauge}, {"class_size", s.class_size},
          {"constraints", s.constraints}, {"products", prods}};
}

inline json to_json(const CatalogueEntry& e) {
  json j = to_json(e.data, e.theta_turns);
  j["catalogue"] = {{"source", e.source}, {"tags", e.tags}, {"stratum", e.stratum}, {"fusion_class", e.fusion_class},
                    {"prime", e.prime}};
  return j;
}

inline json pairs_json(const std::vector<std::pair<Z, Z>>& v) {
  json a = json::array();
  for (const auto& [x, y] : v) a.push_back({x.get_str(), y.get_str()});
  return a;
}

}  // namespace smc
