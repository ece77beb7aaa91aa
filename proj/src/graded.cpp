#include "relproj/graded.hpp"

#include <stdexcept>

namespace relproj {

GradedSpace::GradedSpace(CategoryPtr cat, std::vector<std::size_t> dims) : cat_(std::move(cat)), dims_(std::move(dims)) {
  if (!cat_) throw std::logic_error("GradedSpace: null category");
  if (dims_.size() != cat_->group().size()) throw InputError("GradedSpace: one dimension per group element required");
  offsets_.resize(dims_.size());
  for (std::size_t g = 0; g < dims_.size(); ++g) {
    offsets_[g] = total_;
    total_ += dims_[g];
    for (std::size_t s = 0; s < dims_[g]; ++s) degree_of_.push_back(g);
  }
}

GradedSpace GradedSpace::zero(CategoryPtr cat) {
  const auto n = cat->group().size();
  return GradedSpace(std::move(cat), std::vector<std::size_t>(n, 0));
}

GradedSpace GradedSpace::unit(CategoryPtr cat) { return concentrated(std::move(cat), 0, 1); }

GradedSpace GradedSpace::concentrated(CategoryPtr cat, Element degree, std::size_t dim) {
  std::vector<std::size_t> dims(cat->group().size(), 0);
  dims.at(degree) = dim;
  return GradedSpace(std::move(cat), std::move(dims));
}

Vec GradedSpace::component(const Vec& v, Element g) const {
  return Vec(v.begin() + static_cast<std::ptrdiff_t>(offsets_[g]),
             v.begin() + static_cast<std::ptrdiff_t>(offsets_[g] + dims_[g]));
}

Vec GradedSpace::embed(Element g, const Vec& local) const {
  Vec v(total_, Q(0));
  for (std::size_t s = 0; s < local.size(); ++s) v[offsets_[g] + s] = local[s];
  return v;
}

std::optional<Element> GradedSpace::homogeneous_degree(const Vec& v) const {
  std::optional<Element> deg;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    if (deg && *deg != degree_of_[i]) return std::nullopt;
    deg = degree_of_[i];
  }
  return deg;
}

bool GradedSpace::operator==(const GradedSpace& other) const {
  return dims_ == other.dims_ && same_category(cat_, other.cat_);
}

GradedMap::GradedMap(GradedSpace source, GradedSpace target, std::vector<Matrix> blocks)
    : source_(std::move(source)), target_(std::move(target)), blocks_(std::move(blocks)) {
  if (!same_category(source_.category(), target_.category()))
    throw InputError("GradedMap: source and target live in different categories");
  if (blocks_.size() != source_.group().size()) throw InputError("GradedMap: one block per degree required");
  for (Element g = 0; g < blocks_.size(); ++g)
    if (blocks_[g].rows() != target_.dim(g) || blocks_[g].cols() != source_.dim(g)) {
      if (blocks_[g].rows() * blocks_[g].cols() == 0 && target_.dim(g) * source_.dim(g) == 0) {
        blocks_[g] = Matrix(target_.dim(g), source_.dim(g));
        continue;
      }
      throw InputError("GradedMap: block shape mismatch in degree " + source_.group().label(g));
    }
}

GradedMap GradedMap::zero(const GradedSpace& source, const GradedSpace& target) {
  std::vector<Matrix> blocks;
  for (Element g = 0; g < source.group().size(); ++g) blocks.emplace_back(target.dim(g), source.dim(g));
  return GradedMap(source, target, std::move(blocks));
}

GradedMap GradedMap::identity(const GradedSpace& space) {
  std::vector<Matrix> blocks;
  for (Element g = 0; g < space.group().size(); ++g) blocks.push_back(Matrix::identity(space.dim(g)));
  return GradedMap(space, space, std::move(blocks));
}

GradedMap GradedMap::from_images(const GradedSpace& source, const GradedSpace& target, const std::vector<Vec>& images) {
  if (images.size() != source.total_dim()) throw std::logic_error("from_images: one image per source basis vector");
  GradedMap m = zero(source, target);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Element g = source.degree_of(i);
    const auto& img = images[i];
    if (img.size() != target.total_dim()) throw std::logic_error("from_images: image has wrong length");
    for (std::size_t t = 0; t < img.size(); ++t) {
      if (sgn(img[t]) == 0) continue;
      if (target.degree_of(t) != g) throw std::logic_error("from_images: map does not preserve degree");
      m.blocks_[g](target.slot_of(t), source.slot_of(i)) = img[t];
    }
  }
  return m;
}

GradedMap GradedMap::from_dense(const GradedSpace& source, const GradedSpace& target, const Matrix& dense) {
  std::vector<Vec> images;
  for (std::size_t c = 0; c < dense.cols(); ++c) images.push_back(dense.column(c));
  return from_images(source, target, images);
}

Matrix GradedMap::dense() const {
  Matrix m(target_.total_dim(), source_.total_dim());
  for (Element g = 0; g < blocks_.size(); ++g)
    for (std::size_t r = 0; r < blocks_[g].rows(); ++r)
      for (std::size_t c = 0; c < blocks_[g].cols(); ++c) m(target_.offset(g) + r, source_.offset(g) + c) = blocks_[g](r, c);
  return m;
}

Vec GradedMap::apply(const Vec& v) const {
  if (v.size() != source_.total_dim()) throw std::logic_error("GradedMap::apply: wrong vector length");
  Vec out(target_.total_dim(), Q(0));
  for (Element g = 0; g < blocks_.size(); ++g) {
    const auto& b = blocks_[g];
    for (std::size_t c = 0; c < b.cols(); ++c) {
      const Q& x = v[source_.offset(g) + c];
      if (sgn(x) == 0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        if (sgn(b(r, c)) != 0) add_product(out[target_.offset(g) + r], b(r, c), x);
    }
  }
  return out;
}

Vec GradedMap::image_of_basis(std::size_t index) const {
  const Element g = source_.degree_of(index);
  Vec out(target_.total_dim(), Q(0));
  const auto& b = blocks_[g];
  const auto c = source_.slot_of(index);
  for (std::size_t r = 0; r < b.rows(); ++r) out[target_.offset(g) + r] = b(r, c);
  return out;
}

bool GradedMap::is_zero() const {
  for (const auto& b : blocks_)
    if (!b.is_zero()) return false;
  return true;
}

bool GradedMap::is_invertible() const {
  for (const auto& b : blocks_)
    if (!relproj::is_invertible(b)) return false;
  return true;
}

std::optional<GradedMap> GradedMap::inverse() const {
  std::vector<Matrix> inv;
  for (const auto& b : blocks_) {
    auto bi = relproj::inverse(b);
    if (!bi) return std::nullopt;
    inv.push_back(std::move(*bi));
  }
  return GradedMap(target_, source_, std::move(inv));
}

bool GradedMap::is_mono() const {
  for (const auto& b : blocks_)
    if (rank(b) != b.cols()) return false;
  return true;
}

bool GradedMap::is_epi() const {
  for (const auto& b : blocks_)
    if (rank(b) != b.rows()) return false;
  return true;
}

GradedMap GradedMap::operator*(const GradedMap& rhs) const {
  if (!(rhs.target_ == source_)) throw std::logic_error("GradedMap composition: spaces do not match");
  std::vector<Matrix> blocks;
  for (Element g = 0; g < blocks_.size(); ++g) blocks.push_back(blocks_[g] * rhs.blocks_[g]);
  return GradedMap(rhs.source_, target_, std::move(blocks));
}

GradedMap GradedMap::operator+(const GradedMap& rhs) const {
  if (!(rhs.source_ == source_) || !(rhs.target_ == target_)) throw std::logic_error("GradedMap sum: spaces do not match");
  std::vector<Matrix> blocks;
  for (Element g = 0; g < blocks_.size(); ++g) blocks.push_back(blocks_[g] + rhs.blocks_[g]);
  return GradedMap(source_, target_, std::move(blocks));
}

GradedMap GradedMap::operator-(const GradedMap& rhs) const { return *this + rhs.scaled(-1); }

GradedMap GradedMap::scaled(const Q& s) const {
  std::vector<Matrix> blocks;
  for (const auto& b : blocks_) blocks.push_back(b.scaled(s));
  return GradedMap(source_, target_, std::move(blocks));
}

bool GradedMap::operator==(const GradedMap& rhs) const {
  return source_ == rhs.source_ && target_ == rhs.target_ && blocks_ == rhs.blocks_;
}

TensorProduct tensor(const GradedSpace& X, const GradedSpace& Y) {
  if (!same_category(X.category(), Y.category())) throw InputError("tensor: spaces live in different categories");
  const auto& G = X.group();
  const auto n = G.size();
  std::vector<std::size_t> dims(n, 0);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) dims[G.add(a, b)] += X.dim(a) * Y.dim(b);
  TensorProduct t{X, Y, GradedSpace(X.category(), dims), {}, {}};
  t.pair_to_index.assign(X.total_dim() * Y.total_dim(), 0);
  t.index_to_pair.resize(t.space.total_dim());
  for (Element g = 0; g < n; ++g) {
    std::size_t slot = 0;
    for (Element a = 0; a < n; ++a) {
      const Element b = G.subtract(g, a);
      for (std::size_t i = 0; i < X.dim(a); ++i)
        for (std::size_t j = 0; j < Y.dim(b); ++j) {
          const auto li = X.index(a, i);
          const auto rj = Y.index(b, j);
          const auto idx = t.space.index(g, slot++);
          t.pair_to_index[li * Y.total_dim() + rj] = idx;
          t.index_to_pair[idx] = {li, rj};
        }
    }
  }
  return t;
}

GradedMap tensor_maps(const GradedMap& f, const GradedMap& g, const TensorProduct& source, const TensorProduct& target) {
  std::vector<Vec> images(source.space.total_dim());
  for (std::size_t k = 0; k < images.size(); ++k) {
    const auto [i, j] = source.index_to_pair[k];
    const Vec fi = f.image_of_basis(i);
    const Vec gj = g.image_of_basis(j);
    Vec img(target.space.total_dim(), Q(0));
    for (std::size_t p = 0; p < fi.size(); ++p) {
      if (sgn(fi[p]) == 0) continue;
      for (std::size_t q = 0; q < gj.size(); ++q)
        if (sgn(gj[q]) != 0) add_product(img[target.index(p, q)], fi[p], gj[q]);
    }
    images[k] = std::move(img);
  }
  return GradedMap::from_images(source.space, target.space, images);
}

GradedMap tensor_maps(const GradedMap& f, const GradedMap& g) {
  return tensor_maps(f, g, tensor(f.source(), g.source()), tensor(f.target(), g.target()));
}

GradedMap associator_map(const GradedSpace& X, const GradedSpace& Y, const GradedSpace& Z) {
  const auto& cat = *X.category();
  const auto XY = tensor(X, Y);
  const auto YZ = tensor(Y, Z);
  const auto src = tensor(XY.space, Z);
  const auto tgt = tensor(X, YZ.space);
  std::vector<Vec> images(src.space.total_dim());
  for (std::size_t x = 0; x < X.total_dim(); ++x)
    for (std::size_t y = 0; y < Y.total_dim(); ++y)
      for (std::size_t z = 0; z < Z.total_dim(); ++z) {
        Vec img(tgt.space.total_dim(), Q(0));
        img[tgt.index(x, YZ.index(y, z))] = cat.phi(X.degree_of(x), Y.degree_of(y), Z.degree_of(z));
        images[src.index(XY.index(x, y), z)] = std::move(img);
      }
  return GradedMap::from_images(src.space, tgt.space, images);
}

GradedMap symmetry_map(const GradedSpace& X, const GradedSpace& Y) {
  const auto& cat = *X.category();
  const auto src = tensor(X, Y);
  const auto tgt = tensor(Y, X);
  std::vector<Vec> images(src.space.total_dim());
  for (std::size_t x = 0; x < X.total_dim(); ++x)
    for (std::size_t y = 0; y < Y.total_dim(); ++y) {
      Vec img(tgt.space.total_dim(), Q(0));
      img[tgt.index(y, x)] = cat.R(X.degree_of(x), Y.degree_of(y));
      images[src.index(x, y)] = std::move(img);
    }
  return GradedMap::from_images(src.space, tgt.space, images);
}

GradedMap left_unitor(const GradedSpace& X) {
  const auto t = tensor(GradedSpace::unit(X.category()), X);
  std::vector<Vec> images(t.space.total_dim());
  for (std::size_t x = 0; x < X.total_dim(); ++x) images[t.index(0, x)] = unit_vec(X.total_dim(), x);
  return GradedMap::from_images(t.space, X, images);
}

GradedMap right_unitor(const GradedSpace& X) {
  const auto t = tensor(X, GradedSpace::unit(X.category()));
  std::vector<Vec> images(t.space.total_dim());
  for (std::size_t x = 0; x < X.total_dim(); ++x) images[t.index(x, 0)] = unit_vec(X.total_dim(), x);
  return GradedMap::from_images(t.space, X, images);
}

Subspace Subspace::from_vectors(const GradedSpace& ambient, const std::vector<Vec>& vectors) {
  const auto n = ambient.group().size();
  std::vector<std::vector<Vec>> per_degree(n);
  for (const auto& v : vectors) {
    if (v.size() != ambient.total_dim()) throw std::logic_error("Subspace: vector length mismatch");
    for (Element g = 0; g < n; ++g) {
      if (ambient.dim(g) == 0) continue;
      auto c = ambient.component(v, g);
      if (!is_zero(c)) per_degree[g].push_back(std::move(c));
    }
  }
  Subspace s{ambient, {}};
  for (Element g = 0; g < n; ++g) s.basis.push_back(canonical_span(ambient.dim(g), per_degree[g]));
  return s;
}

Subspace Subspace::zero(const GradedSpace& ambient) {
  return Subspace{ambient, std::vector<std::vector<Vec>>(ambient.group().size())};
}

Subspace Subspace::whole(const GradedSpace& ambient) {
  Subspace s{ambient, {}};
  for (Element g = 0; g < ambient.group().size(); ++g) {
    std::vector<Vec> b;
    for (std::size_t i = 0; i < ambient.dim(g); ++i) b.push_back(unit_vec(ambient.dim(g), i));
    s.basis.push_back(std::move(b));
  }
  return s;
}

std::vector<std::size_t> Subspace::dims() const {
  std::vector<std::size_t> d;
  for (const auto& b : basis) d.push_back(b.size());
  return d;
}

std::size_t Subspace::total_dim() const {
  std::size_t t = 0;
  for (const auto& b : basis) t += b.size();
  return t;
}

namespace {

// Reduces a local vector against a canonical basis; the result is zero iff the vector is in the span.
Vec reduce_against(const std::vector<Vec>& canonical, Vec v) {
  for (const auto& row : canonical) {
    std::size_t lead = 0;
    while (sgn(row[lead]) == 0) ++lead;
    const Q f = v[lead];
    if (sgn(f) != 0) axpy(v, -f, row);
  }
  return v;
}

}  // namespace

bool Subspace::contains(const Vec& global) const {
  for (Element g = 0; g < basis.size(); ++g) {
    if (ambient.dim(g) == 0) continue;
    if (!is_zero(reduce_against(basis[g], ambient.component(global, g)))) return false;
  }
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& v : other.global_basis())
    if (!contains(v)) return false;
  return true;
}

bool Subspace::operator==(const Subspace& other) const { return ambient == other.ambient && basis == other.basis; }

std::vector<Vec> Subspace::global_basis() const {
  std::vector<Vec> out;
  for (Element g = 0; g < basis.size(); ++g)
    for (const auto& b : basis[g]) out.push_back(ambient.embed(g, b));
  return out;
}

GradedSpace Subspace::as_space() const { return GradedSpace(ambient.category(), dims()); }

GradedMap Subspace::inclusion() const {
  const auto space = as_space();
  return GradedMap::from_images(space, ambient, global_basis());
}

bool Subspace::lex_less(const Subspace& other) const {
  const auto a = global_basis();
  const auto b = other.global_basis();
  std::vector<Vec> ca = canonical_span(ambient.total_dim(), a);
  std::vector<Vec> cb = canonical_span(ambient.total_dim(), b);
  for (std::size_t k = 0; k < std::min(ca.size(), cb.size()); ++k)
    for (std::size_t i = 0; i < ca[k].size(); ++i) {
      if (ca[k][i] < cb[k][i]) return true;
      if (cb[k][i] < ca[k][i]) return false;
    }
  return ca.size() < cb.size();
}

Quotient quotient(const Subspace& sub) {
  const auto& amb = sub.ambient;
  const auto n = amb.group().size();
  std::vector<std::size_t> qdims(n);
  std::vector<std::vector<std::size_t>> free_cols(n);
  for (Element g = 0; g < n; ++g) {
    std::vector<bool> pivot(amb.dim(g), false);
    for (const auto& row : sub.basis[g]) {
      std::size_t lead = 0;
      while (sgn(row[lead]) == 0) ++lead;
      pivot[lead] = true;
    }
    for (std::size_t c = 0; c < amb.dim(g); ++c)
      if (!pivot[c]) free_cols[g].push_back(c);
    qdims[g] = free_cols[g].size();
  }
  GradedSpace qs(amb.category(), qdims);
  std::vector<Matrix> proj_blocks, sec_blocks;
  for (Element g = 0; g < n; ++g) {
    Matrix proj(qdims[g], amb.dim(g));
    Matrix sec(amb.dim(g), qdims[g]);
    for (std::size_t c = 0; c < amb.dim(g); ++c) {
      const Vec r = reduce_against(sub.basis[g], unit_vec(amb.dim(g), c));
      for (std::size_t k = 0; k < free_cols[g].size(); ++k) proj(k, c) = r[free_cols[g][k]];
    }
    for (std::size_t k = 0; k < free_cols[g].size(); ++k) sec(free_cols[g][k], k) = 1;
    proj_blocks.push_back(std::move(proj));
    sec_blocks.push_back(std::move(sec));
  }
  return Quotient{qs, GradedMap(amb, qs, std::move(proj_blocks)), GradedMap(qs, amb, std::move(sec_blocks))};
}

Subspace kernel_subspace(const GradedMap& f) {
  const auto& src = f.source();
  Subspace s{src, {}};
  for (Element g = 0; g < src.group().size(); ++g) {
    auto ns = nullspace(f.block(g));
    s.basis.push_back(canonical_span(src.dim(g), ns));
  }
  return s;
}

Subspace image_subspace(const GradedMap& f) {
  const auto& tgt = f.target();
  Subspace s{tgt, {}};
  for (Element g = 0; g < tgt.group().size(); ++g) s.basis.push_back(column_space(f.block(g)));
  return s;
}

Kernel kernel(const GradedMap& f) {
  const auto sub = kernel_subspace(f);
  return Kernel{sub.as_space(), sub.inclusion()};
}

Quotient cokernel(const GradedMap& f) { return quotient(image_subspace(f)); }

Image image(const GradedMap& f) {
  const auto sub = image_subspace(f);
  const auto mono = sub.inclusion();
  const auto space = sub.as_space();
  // epi: coordinates of f(x) in the chosen image basis.
  std::vector<Matrix> blocks;
  for (Element g = 0; g < space.group().size(); ++g) {
    Matrix e(space.dim(g), f.source().dim(g));
    for (std::size_t c = 0; c < e.cols(); ++c) {
      const auto coords = coordinates_in(sub.basis[g], f.block(g).column(c));
      if (!coords) throw std::logic_error("image: column outside its own span");
      for (std::size_t r = 0; r < e.rows(); ++r) e(r, c) = (*coords)[r];
    }
    blocks.push_back(std::move(e));
  }
  return Image{space, mono, GradedMap(f.source(), space, std::move(blocks))};
}

DirectSum direct_sum(const CategoryPtr& cat, const std::vector<GradedSpace>& spaces) {
  const auto n = cat->group().size();
  std::vector<std::size_t> dims(n, 0);
  for (const auto& s : spaces) {
    if (!same_category(s.category(), cat)) throw InputError("direct_sum: summands live in different categories");
    for (Element g = 0; g < n; ++g) dims[g] += s.dim(g);
  }
  DirectSum out{GradedSpace(cat, dims), {}, {}, {}};
  std::vector<std::size_t> running(n, 0);
  for (const auto& s : spaces) {
    std::vector<std::size_t> idx(s.total_dim());
    std::vector<Vec> inj(s.total_dim());
    for (std::size_t i = 0; i < s.total_dim(); ++i) {
      const Element g = s.degree_of(i);
      idx[i] = out.space.index(g, running[g] + s.slot_of(i));
      inj[i] = unit_vec(out.space.total_dim(), idx[i]);
    }
    for (Element g = 0; g < n; ++g) running[g] += s.dim(g);
    auto injection = GradedMap::from_images(s, out.space, inj);
    std::vector<Matrix> pb;
    for (Element g = 0; g < n; ++g) pb.push_back(injection.block(g).transpose());
    out.projections.emplace_back(out.space, s, std::move(pb));
    out.injections.push_back(std::move(injection));
    out.embed_index.push_back(std::move(idx));
  }
  return out;
}

}  // namespace relproj
