#include "relproj/cochain.hpp"

#include <sstream>

namespace relproj {

GradingGroup::GradingGroup(std::vector<int> orders) : orders_(std::move(orders)), size_(1) {
  for (int m : orders_) {
    if (m <= 0) throw InputError("grading group orders must be positive");
    size_ *= static_cast<std::size_t>(m);
  }
  add_table_.resize(size_ * size_);
  neg_table_.resize(size_);
  for (Element a = 0; a < size_; ++a) {
    const auto ra = residues(a);
    std::vector<int> neg(ra.size());
    for (std::size_t k = 0; k < ra.size(); ++k) neg[k] = (orders_[k] - ra[k]) % orders_[k];
    neg_table_[a] = index_of(neg);
    for (Element b = 0; b < size_; ++b) {
      const auto rb = residues(b);
      std::vector<int> sum(ra.size());
      for (std::size_t k = 0; k < ra.size(); ++k) sum[k] = (ra[k] + rb[k]) % orders_[k];
      add_table_[a * size_ + b] = index_of(sum);
    }
  }
}

std::vector<int> GradingGroup::residues(Element a) const {
  std::vector<int> r(orders_.size());
  for (std::size_t k = orders_.size(); k-- > 0;) {
    r[k] = static_cast<int>(a % static_cast<std::size_t>(orders_[k]));
    a /= static_cast<std::size_t>(orders_[k]);
  }
  return r;
}

GradingGroup::Element GradingGroup::index_of(const std::vector<int>& residues) const {
  if (residues.size() != orders_.size())
    throw InputError("group element has " + std::to_string(residues.size()) + " components, expected " +
                     std::to_string(orders_.size()));
  Element idx = 0;
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    const int m = orders_[k];
    const int r = ((residues[k] % m) + m) % m;
    idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(r);
  }
  return idx;
}

std::string GradingGroup::label(Element a) const {
  std::ostringstream os;
  os << '(';
  const auto r = residues(a);
  for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << r[k];
  os << ')';
  return os.str();
}

Cochain2::Cochain2(GradingGroup group, std::vector<Q> table) : group_(std::move(group)), table_(std::move(table)) {
  if (table_.size() != group_.size() * group_.size())
    throw InputError("cochain table must have |G|^2 entries");
  for (Element x = 0; x < group_.size(); ++x)
    for (Element y = 0; y < group_.size(); ++y)
      if (is_zero((*this)(x, y)))
        throw InputError("cochain entry F" + group_.label(x) + group_.label(y) + " is zero");
}

Cochain2 Cochain2::trivial(const GradingGroup& group) {
  return Cochain2(group, std::vector<Q>(group.size() * group.size(), Q(1)));
}

bool Cochain2::is_normalized() const {
  for (Element x = 0; x < group_.size(); ++x)
    if ((*this)(group_.identity(), x) != 1 || (*this)(x, group_.identity()) != 1) return false;
  return true;
}

Scalar3::Scalar3(GradingGroup group, std::vector<Q> table) : group_(std::move(group)), table_(std::move(table)) {
  const auto n = group_.size();
  if (table_.size() != n * n * n) throw InputError("associator table must have |G|^3 entries");
}

SymmetryTable::SymmetryTable(GradingGroup group, std::vector<Q> table)
    : group_(std::move(group)), table_(std::move(table)) {
  if (table_.size() != group_.size() * group_.size()) throw InputError("symmetry table must have |G|^2 entries");
  for (const auto& r : table_)
    if (is_zero(r)) throw InputError("symmetry scalar must be nonzero");
}

int eval_f(const std::vector<int>& x, const std::vector<int>& y) {
  if (x.size() != 3 || y.size() != 3) throw InputError("eval_f expects two bit vectors of length 3");
  for (int b : x)
    if (b != 0 && b != 1) throw InputError("eval_f expects bits");
  for (int b : y)
    if (b != 0 && b != 1) throw InputError("eval_f expects bits");
  int s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) s += x[i] * y[j];
  // Cubic part. The last monomial is x1 x2 y3; with
  // x1 y2 y3 in its place the resulting algebra fails left alternativity.
  s += y[0] * x[1] * x[2] + x[0] * y[1] * x[2] + x[0] * x[1] * y[2];
  return s % 2;
}

Cochain2 octonion_cochain() {
  const auto G = GradingGroup::z2_cubed();
  std::vector<Q> table(G.size() * G.size());
  for (Element x = 0; x < G.size(); ++x)
    for (Element y = 0; y < G.size(); ++y)
      table[x * G.size() + y] = eval_f(G.residues(x), G.residues(y)) ? -1 : 1;
  return Cochain2(G, std::move(table));
}

Scalar3 coboundary3(const Cochain2& F) {
  if (!F.is_normalized()) throw InputError("coboundary3 requires a normalized cochain");
  const auto& G = F.group();
  const auto n = G.size();
  std::vector<Q> table(n * n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        table[(x * n + y) * n + z] = F(x, y) * F(G.add(x, y), z) / (F(y, z) * F(x, G.add(y, z)));
  return Scalar3(G, std::move(table));
}

SymmetryTable symmetry_ratio(const Cochain2& F) {
  const auto& G = F.group();
  std::vector<Q> table(G.size() * G.size());
  for (Element x = 0; x < G.size(); ++x)
    for (Element y = 0; y < G.size(); ++y) table[x * G.size() + y] = F(x, y) / F(y, x);
  return SymmetryTable(G, std::move(table));
}

CheckReport check_pentagon(const Scalar3& phi) {
  CheckReport rep{"pentagon"};
  const auto& G = phi.group();
  const auto n = G.size();
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        for (Element w = 0; w < n; ++w) {
          ++rep.checked;
          const Q lhs = phi(y, z, w) * phi(x, G.add(y, z), w) * phi(x, y, z);
          const Q rhs = phi(G.add(x, y), z, w) * phi(x, y, G.add(z, w));
          if (lhs != rhs)
            rep.fail("(x,y,z,w)=" + G.label(x) + G.label(y) + G.label(z) + G.label(w) + " lhs=" +
                     format_rational(lhs) + " rhs=" + format_rational(rhs));
        }
  return rep;
}

CheckReport check_hexagon(const Scalar3& phi, const SymmetryTable& R) {
  CheckReport rep{"hexagon"};
  const auto& G = phi.group();
  const auto n = G.size();
  const auto Rinv = [&](Element a, Element b) { return 1 / R(b, a); };
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z) {
        ++rep.checked;
        const std::string where = G.label(x) + G.label(y) + G.label(z);
        const Q lhs = phi(y, z, x) * R(x, G.add(y, z)) * phi(x, y, z);
        const Q rhs = R(x, z) * phi(y, x, z) * R(x, y);
        if (lhs != rhs) rep.fail("hexagon at " + where);
        const Q lhs_inv = phi(y, z, x) * Rinv(x, G.add(y, z)) * phi(x, y, z);
        const Q rhs_inv = Rinv(x, z) * phi(y, x, z) * Rinv(x, y);
        if (lhs_inv != rhs_inv) rep.fail("inverse hexagon at " + where);
      }
  return rep;
}

CheckReport check_hexagon(const Cochain2& F) { return check_hexagon(coboundary3(F), symmetry_ratio(F)); }

Category::Category(Cochain2 F) : Category(F, symmetry_ratio(F)) {}

Category::Category(Cochain2 F, SymmetryTable symmetry)
    : group_(F.group()), F_(std::move(F)), phi_(coboundary3(F_)), R_(std::move(symmetry)) {
  if (!(R_.group() == group_)) throw InputError("symmetry table lives on a different group");
}

std::shared_ptr<const Category> Category::make(Cochain2 F) { return std::make_shared<const Category>(std::move(F)); }

std::shared_ptr<const Category> Category::octonionic() {
  static const auto cat = [] {
    auto c = std::make_shared<Category>(octonion_cochain());
    c->name = "octonionic";
    return std::shared_ptr<const Category>(c);
  }();
  return cat;
}

std::shared_ptr<const Category> Category::plain() {
  static const auto cat = [] {
    auto c = std::make_shared<Category>(Cochain2::trivial(GradingGroup::trivial()));
    c->name = "plain";
    return std::shared_ptr<const Category>(c);
  }();
  return cat;
}

std::shared_ptr<const Category> Category::super_vector_spaces() {
  static const auto cat = [] {
    const GradingGroup z2({2});
    auto c = std::make_shared<Category>(Cochain2::trivial(z2), SymmetryTable(z2, {Q(1), Q(1), Q(1), Q(-1)}));
    c->name = "super";
    return std::shared_ptr<const Category>(c);
  }();
  return cat;
}

bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (!(a->group() == b->group())) return false;
  const auto n = a->group().size();
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      if (a->R(x, y) != b->R(x, y)) return false;
      for (Element z = 0; z < n; ++z)
        if (a->phi(x, y, z) != b->phi(x, y, z)) return false;
    }
  return true;
}

}  // namespace relproj
