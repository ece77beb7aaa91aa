#include "workspace.hpp"

#include <regex>

namespace relproj::cli {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) { throw InputError(path + ": " + msg); }

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) bad(path, std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::size_t count_from(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::string str_or(const json& j, const char* key, const std::string& fallback) {
  return j.is_object() && j.contains(key) && j.at(key).is_string() ? j.at(key).get<std::string>() : fallback;
}

std::string sub(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string sub(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

}  // namespace

Q rational_from(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Q(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
      bad(path, e.what());
    }
  }
  bad(path, "expected a rational string \"p/q\" or an integer");
}

Vec vector_from(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of rationals");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from(j[i], sub(path, i)));
  return v;
}

Matrix matrix_from(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of rows");
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(vector_from(j[i], sub(path, i)));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols) bad(sub(path, i), "ragged matrix");
  return Matrix::from_rows(cols, rows);
}

json to_json(const Q& q) { return format_rational(q); }

json to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(format_rational(x));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Workspace::Workspace(json document) : doc_(std::move(document)) {
  if (!doc_.is_object()) bad("", "document must be a JSON object");
  if (doc_.contains("objects") && !doc_.at("objects").is_object()) bad("/objects", "expected an object");
}

const json& Workspace::tasks() const {
  static const json empty = json::array();
  if (!doc_.contains("tasks")) return empty;
  if (!doc_.at("tasks").is_array()) bad("/tasks", "expected an array");
  return doc_.at("tasks");
}

const json& Workspace::definition(const json& ref, const std::string& path) const {
  if (ref.is_string() && doc_.contains("objects") && doc_.at("objects").contains(ref.get<std::string>()))
    return doc_.at("objects").at(ref.get<std::string>());
  (void)path;
  return ref;
}

namespace {

// Guards against definitions that refer to themselves.
class Resolving {
 public:
  Resolving(std::set<std::string>& active, const json& ref, const char* kind, const std::string& path)
      : active_(active) {
    if (ref.is_string()) {
      key_ = std::string(kind) + ":" + ref.get<std::string>();
      if (!active_.insert(key_).second) bad(path, "cyclic reference to \"" + ref.get<std::string>() + "\"");
    }
  }
  ~Resolving() {
    if (!key_.empty()) active_.erase(key_);
  }
  Resolving(const Resolving&) = delete;
  Resolving& operator=(const Resolving&) = delete;

 private:
  std::set<std::string>& active_;
  std::string key_;
};

bool is_named(const json& doc, const json& ref) {
  return ref.is_string() && doc.contains("objects") && doc.at("objects").contains(ref.get<std::string>());
}

}  // namespace

CategoryPtr Workspace::category(const json& ref, const std::string& path) {
  Resolving guard(resolving_, ref, "category", path);
  if (ref.is_string() && !is_named(doc_, ref)) {
    const auto s = ref.get<std::string>();
    if (s == "octonion" || s == "octonionic") return Category::octonionic();
    if (s == "plain" || s == "trivial") return Category::plain();
    if (s == "super") return Category::super_vector_spaces();
    bad(path, "unknown category \"" + s + "\"");
  }
  const json& def = definition(ref, path);
  if (def.is_string()) return category(def, path);
  const json& gj = field(def, "group", path);
  if (!gj.is_array()) bad(sub(path, "group"), "expected a list of cyclic orders");
  std::vector<int> orders;
  for (std::size_t i = 0; i < gj.size(); ++i) {
    if (!gj[i].is_number_integer() || gj[i].get<int>() < 2) bad(sub(sub(path, "group"), i), "order must be an integer >= 2");
    orders.push_back(gj[i].get<int>());
  }
  GradingGroup G(orders);
  const CategoryPtr probe = std::make_shared<const Category>(Cochain2::trivial(G));
  const json& cj = def.contains("cochain") ? def.at("cochain") : json("trivial");
  std::vector<Q> table(G.size() * G.size(), Q(1));
  if (cj.is_string()) {
    const auto s = cj.get<std::string>();
    if (s == "octonion") {
      if (!(G == GradingGroup::z2_cubed())) bad(sub(path, "cochain"), "the octonion cochain lives on Z2^3");
      table = octonion_cochain().table();
    } else if (s != "trivial") {
      bad(sub(path, "cochain"), "unknown cochain \"" + s + "\"");
    }
  } else {
    const json& entries = field(cj, "entries", sub(path, "cochain"));
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const std::string p = sub(sub(sub(path, "cochain"), "entries"), k);
      if (!entries[k].is_array() || entries[k].size() != 3) bad(p, "expected [x, y, value]");
      table[degree(probe, entries[k][0], p) * G.size() + degree(probe, entries[k][1], p)] = rational_from(entries[k][2], p);
    }
  }
  Cochain2 F = [&] {
    try {
      return Cochain2(G, table);
    } catch (const InputError& e) {
      bad(sub(path, "cochain"), e.what());
    }
  }();
  if (!F.is_normalized()) bad(sub(path, "cochain"), "cochain is not normalized: F(e,y) and F(x,e) must be 1");
  if (!def.contains("symmetry")) {
    auto cat = std::make_shared<Category>(F);
    cat->name = str_or(def, "name", "C");
    return cat;
  }
  const json& sj = def.at("symmetry");
  SymmetryTable base = symmetry_ratio(F);
  std::vector<Q> sym(G.size() * G.size());
  for (Element x = 0; x < G.size(); ++x)
    for (Element y = 0; y < G.size(); ++y) sym[x * G.size() + y] = base(x, y);
  if (sj.is_string() && sj.get<std::string>() == "koszul") {
    // Sign (-1)^{x_0 y_0} on the first Z2 factor.
    if (orders.empty() || orders.front() != 2) bad(sub(path, "symmetry"), "koszul sign needs a leading Z2 factor");
    for (Element x = 0; x < G.size(); ++x)
      for (Element y = 0; y < G.size(); ++y)
        if (G.residues(x)[0] == 1 && G.residues(y)[0] == 1) sym[x * G.size() + y] = -sym[x * G.size() + y];
  } else {
    const json& entries = field(sj, "entries", sub(path, "symmetry"));
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const std::string p = sub(sub(sub(path, "symmetry"), "entries"), k);
      if (!entries[k].is_array() || entries[k].size() != 3) bad(p, "expected [x, y, value]");
      const Q v = rational_from(entries[k][2], p);
      if (is_zero(v)) bad(p, "symmetry entries must be nonzero");
      sym[degree(probe, entries[k][0], p) * G.size() + degree(probe, entries[k][1], p)] = v;
    }
  }
  auto cat = std::make_shared<Category>(F, SymmetryTable(G, sym));
  cat->name = str_or(def, "name", "C");
  return cat;
}

Element Workspace::degree(const CategoryPtr& cat, const json& j, const std::string& path) {
  const auto& G = cat->group();
  if (j.is_number_integer()) {
    const long long v = j.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= G.size()) bad(path, "degree index out of range");
    return static_cast<Element>(v);
  }
  if (j.is_array()) {
    if (j.size() != G.orders().size()) bad(path, "degree has the wrong number of residues");
    std::vector<int> r;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number_integer()) bad(path, "residues must be integers");
      const int v = j[i].get<int>();
      if (v < 0 || v >= G.orders()[i]) bad(path, "residue out of range");
      r.push_back(v);
    }
    return G.index_of(r);
  }
  bad(path, "expected a degree index or residue list");
}

GradedSpace Workspace::carrier(const CategoryPtr& cat, const json& j, const std::string& path) {
  std::vector<std::size_t> dims(cat->group().size(), 0);
  if (j.is_number_integer()) {
    dims[0] = count_from(j, path);
    return GradedSpace(cat, dims);
  }
  if (!j.is_array()) bad(path, "expected a list of {\"degree\", \"dim\"}");
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = sub(path, k);
    dims[degree(cat, field(j[k], "degree", p), sub(p, "degree"))] += count_from(field(j[k], "dim", p), sub(p, "dim"));
  }
  return GradedSpace(cat, dims);
}

AlgebraPtr Workspace::algebra(const json& ref, const std::string& path) {
  Resolving guard(resolving_, ref, "algebra", path);
  if (ref.is_string() && !is_named(doc_, ref)) {
    const auto s = ref.get<std::string>();
    if (s == "O" || s == "octonion" || s == "octonions") return octonions();
    if (s == "Q") return ground_field(Category::plain());
    if (s == "Q[eps]") return dual_numbers();
    std::smatch m;
    if (std::regex_match(s, m, std::regex(R"(Q\^([0-9]+))"))) {
      const auto k = std::stoul(m[1]);
      if (k == 0) bad(path, "Q^0 is the zero algebra");
      return product_of_fields(k);
    }
    bad(path, "unknown algebra \"" + s + "\"");
  }
  const json& def = definition(ref, path);
  if (def.is_string()) return algebra(def, path);
  if (!def.is_object()) bad(path, "expected an algebra definition");
  const std::string kind = str_or(def, "algebra", "");
  if (kind == "octonion" || kind == "octonions") return octonions();
  if (kind == "product_of_fields") {
    const auto n = count_from(field(def, "n", path), sub(path, "n"));
    if (n == 0) bad(sub(path, "n"), "need at least one factor");
    return def.contains("category") ? product_of_fields(n, category(def.at("category"), sub(path, "category")))
                                    : product_of_fields(n);
  }
  if (kind == "dual_numbers") return dual_numbers();
  if (kind == "ground_field")
    return ground_field(def.contains("category") ? category(def.at("category"), sub(path, "category")) : Category::plain());
  if (kind == "twisted_group") return twisted_group_algebra(category(field(def, "category", path), sub(path, "category")));
  if (kind == "localize") {
    const AlgebraPtr A = algebra(field(def, "of", path), sub(path, "of"));
    return localize(A, ElementEndo::multiplication(A, scalar(A, field(def, "element", path), sub(path, "element")))).algebra;
  }
  if (kind == "quotient") {
    const AlgebraPtr A = algebra(field(def, "of", path), sub(path, "of"));
    const json& gens = field(def, "ideal", path);
    std::vector<Vec> vs;
    for (std::size_t k = 0; k < gens.size(); ++k) vs.push_back(vector_from(gens[k], sub(sub(path, "ideal"), k)));
    return quotient_algebra(generated_ideal(A, vs)).algebra;
  }
  if (kind == "product") {
    const json& fs = field(def, "factors", path);
    std::vector<AlgebraPtr> factors;
    for (std::size_t k = 0; k < fs.size(); ++k) factors.push_back(algebra(fs[k], sub(sub(path, "factors"), k)));
    return product_algebra(factors).algebra;
  }
  if (kind == "tensor")
    return algebra_tensor_over(morphism(field(def, "left", path), sub(path, "left")),
                               morphism(field(def, "right", path), sub(path, "right")))
        .algebra;
  if (!kind.empty()) bad(sub(path, "algebra"), "unknown algebra constructor \"" + kind + "\"");

  const CategoryPtr cat = def.contains("category") ? category(def.at("category"), sub(path, "category"))
                          : def.contains("group")  ? category(def, path)
                                                   : Category::plain();
  const GradedSpace X = carrier(cat, field(def, "carrier", path), sub(path, "carrier"));
  const std::size_t n = X.total_dim();
  std::vector<Vec> products(n * n, Vec(n, Q(0)));
  const json& mult = field(def, "mult", path);
  for (std::size_t k = 0; k < mult.size(); ++k) {
    const std::string p = sub(sub(path, "mult"), k);
    if (!mult[k].is_array() || mult[k].size() != 3) bad(p, "expected [i, j, vector]");
    const auto i = count_from(mult[k][0], p), j = count_from(mult[k][1], p);
    if (i >= n || j >= n) bad(p, "basis index out of range");
    Vec v = vector_from(mult[k][2], sub(p, 2));
    if (v.size() != n) bad(p, "product vector has the wrong length");
    products[i * n + j] = std::move(v);
  }
  Vec unit = vector_from(field(def, "unit", path), sub(path, "unit"));
  try {
    return std::make_shared<const AlgebraInC>(X, std::move(products), std::move(unit), str_or(def, "name", "A"));
  } catch (const InputError& e) {
    bad(path, e.what());
  }
}

AlgebraMap Workspace::morphism(const json& ref, const std::string& path) {
  Resolving guard(resolving_, ref, "morphism", path);
  const json& def = definition(ref, path);
  if (!def.is_object()) bad(path, "expected a morphism definition");
  const std::string kind = str_or(def, "morphism", "");
  if (kind == "identity") return AlgebraMap::identity(algebra(field(def, "algebra", path), sub(path, "algebra")));
  if (kind == "localization") {
    const AlgebraPtr A = algebra(field(def, "algebra", path), sub(path, "algebra"));
    return localize(A, ElementEndo::multiplication(A, scalar(A, field(def, "element", path), sub(path, "element")))).to_local;
  }
  if (kind == "product_projection") {
    const json& fs = field(def, "factors", path);
    std::vector<AlgebraPtr> factors;
    for (std::size_t k = 0; k < fs.size(); ++k) factors.push_back(algebra(fs[k], sub(sub(path, "factors"), k)));
    const auto idx = count_from(field(def, "index", path), sub(path, "index"));
    if (idx >= factors.size()) bad(sub(path, "index"), "factor index out of range");
    return product_algebra(factors).projections[idx];
  }
  if (kind == "quotient") {
    const AlgebraPtr A = algebra(field(def, "algebra", path), sub(path, "algebra"));
    const json& gens = field(def, "ideal", path);
    std::vector<Vec> vs;
    for (std::size_t k = 0; k < gens.size(); ++k) vs.push_back(vector_from(gens[k], sub(sub(path, "ideal"), k)));
    return quotient_algebra(generated_ideal(A, vs)).projection;
  }
  if (kind == "compose") {
    const AlgebraMap first = morphism(field(def, "first", path), sub(path, "first"));
    const AlgebraMap then = morphism(field(def, "then", path), sub(path, "then"));
    if (!same_algebra(first.target, then.source)) bad(path, "composite of non-composable morphisms");
    return then.after(first);
  }
  if (!kind.empty()) bad(sub(path, "morphism"), "unknown morphism constructor \"" + kind + "\"");
  const AlgebraPtr A = algebra(field(def, "source", path), sub(path, "source"));
  const AlgebraPtr B = algebra(field(def, "target", path), sub(path, "target"));
  try {
    return AlgebraMap::make(A, B, linear_map(def, A->carrier(), B->carrier(), path));
  } catch (const InputError& e) {
    bad(path, e.what());
  }
}

GradedMap Workspace::linear_map(const json& def, const GradedSpace& source, const GradedSpace& target,
                                const std::string& path) {
  try {
    if (def.contains("images")) {
      const json& ims = def.at("images");
      if (!ims.is_array() || ims.size() != source.total_dim())
        bad(sub(path, "images"), "expected one image per source basis vector (" + std::to_string(source.total_dim()) + ")");
      std::vector<Vec> images;
      for (std::size_t k = 0; k < ims.size(); ++k) {
        images.push_back(vector_from(ims[k], sub(sub(path, "images"), k)));
        if (images.back().size() != target.total_dim()) bad(sub(sub(path, "images"), k), "image has the wrong length");
      }
      return GradedMap::from_images(source, target, images);
    }
    if (def.contains("matrix")) {
      const Matrix m = matrix_from(def.at("matrix"), sub(path, "matrix"));
      if (m.rows() != target.total_dim() || (m.cols() != source.total_dim() && m.rows() > 0))
        bad(sub(path, "matrix"), "matrix has the wrong shape");
      return GradedMap::from_dense(source, target, m.rows() == 0 ? Matrix(0, source.total_dim()) : m);
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const InputError*>(&e)) throw;
    bad(path, e.what());
  }
  bad(path, "expected \"images\" or \"matrix\"");
}

ModulePtr Workspace::module(const json& ref, const std::string& path) {
  Resolving guard(resolving_, ref, "module", path);
  const json& def = definition(ref, path);
  if (!def.is_object()) bad(path, "expected a module definition");
  const std::string kind = str_or(def, "module", "");
  auto alg = [&]() { return algebra(field(def, "algebra", path), sub(path, "algebra")); };
  try {
    if (kind == "regular") return regular_module(alg());
    if (kind == "zero") return zero_module(alg());
    if (kind == "free") return free_rank(alg(), count_from(field(def, "rank", path), sub(path, "rank"))).module;
    if (kind == "o_from_degree_zero") {
      const AlgebraPtr A = def.contains("algebra") ? alg() : octonions();
      const json& isos = field(def, "isos", path);
      std::vector<Matrix> ms;
      for (std::size_t k = 0; k < isos.size(); ++k) ms.push_back(matrix_from(isos[k], sub(sub(path, "isos"), k)));
      return o_module_from_degree_zero(A, count_from(field(def, "dim", path), sub(path, "dim")), ms);
    }
    if (kind == "base_change")
      return base_change(morphism(field(def, "morphism", path), sub(path, "morphism")), module(field(def, "of", path), sub(path, "of")))
          .module;
    if (kind == "restriction")
      return restriction_of_scalars(morphism(field(def, "morphism", path), sub(path, "morphism")),
                                    module(field(def, "of", path), sub(path, "of")));
    if (kind == "dual") return dual_module(module(field(def, "of", path), sub(path, "of"))).module;
    if (kind == "tensor")
      return tensor_over(module(field(def, "left", path), sub(path, "left")), module(field(def, "right", path), sub(path, "right")))
          .module;
    if (kind == "product_line") {
      const json& fs = field(def, "factors", path);
      const json& ls = field(def, "lines", path);
      std::vector<AlgebraPtr> factors;
      std::vector<ModulePtr> lines;
      for (std::size_t k = 0; k < fs.size(); ++k) factors.push_back(algebra(fs[k], sub(sub(path, "factors"), k)));
      for (std::size_t k = 0; k < ls.size(); ++k) lines.push_back(module(ls[k], sub(sub(path, "lines"), k)));
      return product_line(product_algebra(factors), lines).module;
    }
    if (kind == "glue") return glue(descent(field(def, "descent", path), sub(path, "descent"))).module;
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    bad(path, what);
  }
  if (!kind.empty()) bad(sub(path, "module"), "unknown module constructor \"" + kind + "\"");
  const AlgebraPtr A = alg();
  const GradedSpace X = carrier(A->category(), field(def, "carrier", path), sub(path, "carrier"));
  const std::size_t n = X.total_dim();
  std::vector<Vec> action(A->dim() * n, Vec(n, Q(0)));
  const json& act = field(def, "action", path);
  for (std::size_t k = 0; k < act.size(); ++k) {
    const std::string p = sub(sub(path, "action"), k);
    if (!act[k].is_array() || act[k].size() != 3) bad(p, "expected [i, j, vector]");
    const auto i = count_from(act[k][0], p), j = count_from(act[k][1], p);
    if (i >= A->dim() || j >= n) bad(p, "basis index out of range");
    Vec v = vector_from(act[k][2], sub(p, 2));
    if (v.size() != n) bad(p, "action vector has the wrong length");
    action[i * n + j] = std::move(v);
  }
  try {
    return std::make_shared<const ModuleInC>(A, X, std::move(action), str_or(def, "name", "M"));
  } catch (const InputError& e) {
    bad(path, e.what());
  }
}

ModuleMap Workspace::module_map(const json& ref, const std::string& path) {
  const json& def = definition(ref, path);
  const ModulePtr M = module(field(def, "source", path), sub(path, "source"));
  const ModulePtr N = module(field(def, "target", path), sub(path, "target"));
  const GradedMap f = linear_map(def, M->carrier(), N->carrier(), path);
  try {
    return ModuleMap::make(M, N, f);
  } catch (const InputError& e) {
    bad(path, e.what());
  }
}

Covering Workspace::covering(const json& ref, const std::string& path) {
  Resolving guard(resolving_, ref, "covering", path);
  const json& def = definition(ref, path);
  if (def.contains("covering")) return covering(def.at("covering"), sub(path, "covering"));
  const AlgebraPtr A = algebra(field(def, "base", path), sub(path, "base"));
  const json& ls = field(def, "legs", path);
  if (!ls.is_array() || ls.empty()) bad(sub(path, "legs"), "expected a non-empty list of morphisms");
  std::vector<AlgebraMap> legs;
  for (std::size_t k = 0; k < ls.size(); ++k) legs.push_back(morphism(ls[k], sub(sub(path, "legs"), k)));
  try {
    return Covering::make(A, std::move(legs));
  } catch (const InputError& e) {
    bad(path, e.what());
  }
}

DescentDatum Workspace::descent(const json& ref, const std::string& path) {
  Resolving guard(resolving_, ref, "descent", path);
  const json& def = definition(ref, path);
  const Covering cov = covering(def, path);
  if (def.contains("restriction")) return restriction_datum(cov, module(def.at("restriction"), sub(path, "restriction")));
  const json& ls = field(def, "locals", path);
  std::vector<ModulePtr> locals;
  for (std::size_t k = 0; k < ls.size(); ++k) locals.push_back(module(ls[k], sub(sub(path, "locals"), k)));
  DescentDatum d = [&] {
    try {
      return make_datum(cov, locals);
    } catch (const InputError& e) {
      bad(path, e.what());
    }
  }();
  const json& ts = def.contains("transitions") ? def.at("transitions") : json::array();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const std::string p = sub(sub(path, "transitions"), k);
    if (!ts[k].is_array() || ts[k].size() != 3) bad(p, "expected [i, j, map]");
    const auto i = count_from(ts[k][0], p), j = count_from(ts[k][1], p);
    auto it = d.restricted.find({i, j});
    if (it == d.restricted.end()) bad(p, "no overlap (" + std::to_string(i) + "," + std::to_string(j) + "); need i < j");
    const auto& [ri, rj] = it->second;
    const json& m = ts[k][2];
    GradedMap g;
    if (m.contains("scalar")) {
      // lambda times the identification of both restrictions with the overlap algebra.
      const Q lambda = rational_from(m.at("scalar"), sub(p, "scalar"));
      const AlgebraPtr Ai = cov.legs[i].target, Aj = cov.legs[j].target;
      if (!same_module(locals[i], regular_module(Ai)) || !same_module(locals[j], regular_module(Aj)))
        bad(p, "\"scalar\" transitions need regular local modules");
      const ModuleMap a = base_change_regular_iso(ri), b = base_change_regular_iso(rj);
      g = b.inverse()->map * a.map.scaled(lambda);
    } else {
      g = linear_map(m, ri.module->carrier(), rj.module->carrier(), sub(p, 2));
    }
    try {
      d.transitions.insert_or_assign({i, j}, ModuleMap::make(ri.module, rj.module, g));
    } catch (const InputError& e) {
      bad(p, e.what());
    }
  }
  return d;
}

Vec Workspace::scalar(const AlgebraPtr& A, const json& j, const std::string& path) {
  if (j.is_array()) {
    const Vec local = vector_from(j, path);
    if (local.size() == A->dim()) {
      if (!is_zero(local) && A->carrier().homogeneous_degree(local) != std::optional<Element>(0))
        bad(path, "element is not of degree e");
      return local;
    }
    if (local.size() != A->carrier().dim(0)) bad(path, "expected coordinates on the degree-e component");
    return A->from_degree_zero(local);
  }
  Vec v = A->unit();
  const Q c = rational_from(j, path);
  for (auto& x : v) x *= c;
  return v;
}

std::vector<Vec> Workspace::coordinates(const AlgebraPtr& A, const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a list of coordinates");
  std::vector<Vec> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(scalar(A, j[k], sub(path, k)));
  return out;
}

Workspace::PointInput Workspace::point(const json& ref, const std::string& path) {
  Resolving guard(resolving_, ref, "point", path);
  const json& def = definition(ref, path);
  PointInput in;
  in.algebra = algebra(def.contains("algebra") ? def.at("algebra") : json("Q"), sub(path, "algebra"));
  in.n = count_from(field(def, "n", path), sub(path, "n"));
  try {
    if (def.contains("chart")) {
      const auto i = count_from(def.at("chart"), sub(path, "chart"));
      in.sub = PointCheck{point_from_chart(in.algebra, in.n, i, coordinates(in.algebra, field(def, "coords", path), sub(path, "coords"))), {}};
      return in;
    }
    const ModulePtr L = def.contains("line") ? module(def.at("line"), sub(path, "line")) : regular_module(in.algebra);
    const ModuleSum FS = free_rank(in.algebra, in.n + 1);
    const ModulePtr F = FS.module;
    // On L = A a point may be given by its n+1 degree-e components: x(a) = (a c_j)_j, q(a) = sum a_j c_j.
    for (const char* key : {"mono", "epi"}) {
      if (!def.contains(key) || !def.at(key).contains("components")) continue;
      const std::string p = sub(sub(path, key), "components");
      if (def.contains("line")) bad(p, "components need the algebra itself as the line");
      const auto cs = coordinates(in.algebra, def.at(key).at("components"), p);
      if (cs.size() != in.n + 1) bad(p, "expected " + std::to_string(in.n + 1) + " components");
      const AlgebraInC& A = *in.algebra;
      if (std::string(key) == "mono") {
        std::vector<Vec> images;
        for (std::size_t k = 0; k < A.dim(); ++k) {
          Vec v(F->dim(), Q(0));
          for (std::size_t j = 0; j <= in.n; ++j) axpy(v, Q(1), FS.injections[j].apply(A.multiply(unit_vec(A.dim(), k), cs[j])));
          images.push_back(std::move(v));
        }
        in.sub = verify_point(in.algebra, in.n, L, ModuleMap::make(L, F, GradedMap::from_images(L->carrier(), F->carrier(), images)));
      } else {
        std::vector<Vec> images;
        for (std::size_t b = 0; b < F->dim(); ++b) {
          Vec v(A.dim(), Q(0));
          for (std::size_t j = 0; j <= in.n; ++j)
            axpy(v, Q(1), A.multiply(FS.projections[j].apply(unit_vec(F->dim(), b)), cs[j]));
          images.push_back(std::move(v));
        }
        in.quot = verify_quot_point(in.algebra, in.n, L, ModuleMap::make(F, L, GradedMap::from_images(F->carrier(), L->carrier(), images)));
      }
      return in;
    }
    if (def.contains("mono")) {
      const ModuleMap x = ModuleMap::make(L, F, linear_map(def.at("mono"), L->carrier(), F->carrier(), sub(path, "mono")));
      in.sub = verify_point(in.algebra, in.n, L, x);
      return in;
    }
    if (def.contains("epi")) {
      const ModuleMap q = ModuleMap::make(F, L, linear_map(def.at("epi"), F->carrier(), L->carrier(), sub(path, "epi")));
      in.quot = verify_quot_point(in.algebra, in.n, L, q);
      return in;
    }
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    bad(path, what);
  }
  bad(path, "expected \"chart\", \"mono\" or \"epi\"");
}

}  // namespace relproj::cli
