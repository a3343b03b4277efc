#include "proctheory/block.hpp"

namespace pt {

BlockObj BlockTheory::tensor_obj(const BlockObj& a, const BlockObj& b) const {
  BlockObj o;
  for (auto pa : a.parts)
    for (auto pb : b.parts) o.parts.push_back(base_->tensor_obj(pa, pb));
  return o;
}

BlockMor BlockTheory::id(const BlockObj& a) const {
  BlockMor m;
  m.src = m.tgt = a;
  const size_t n = a.parts.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      m.blocks.push_back(i == j ? base_->id(a.parts[i])
                                : base_->zero(a.parts[j], a.parts[i]));
  return m;
}

BlockMor BlockTheory::zero(const BlockObj& a, const BlockObj& b) const {
  BlockMor m;
  m.src = a;
  m.tgt = b;
  for (auto pb : b.parts)
    for (auto pa : a.parts) m.blocks.push_back(base_->zero(pa, pb));
  return m;
}

BlockMor BlockTheory::discard(const BlockObj& a) const {
  BlockMor m;
  m.src = a;
  m.tgt = unit();
  for (auto pa : a.parts) m.blocks.push_back(base_->discard(pa));
  return m;
}

BlockMor BlockTheory::compose(const BlockMor& g, const BlockMor& f) const {
  if (!(g.src == f.tgt)) throw ShapeError("block compose: type mismatch");
  BlockMor m;
  m.src = f.src;
  m.tgt = g.tgt;
  const size_t mid = g.src.parts.size();
  for (size_t i = 0; i < g.tgt.parts.size(); ++i)
    for (size_t k = 0; k < f.src.parts.size(); ++k) {
      Morphism acc = base_->compose(g.at(i, 0), f.at(0, k));
      for (size_t j = 1; j < mid; ++j)
        acc = base_->add(acc, base_->compose(g.at(i, j), f.at(j, k)));
      m.blocks.push_back(acc);
    }
  return m;
}

BlockMor BlockTheory::tensor(const BlockMor& f, const BlockMor& g) const {
  BlockMor m;
  m.src = tensor_obj(f.src, g.src);
  m.tgt = tensor_obj(f.tgt, g.tgt);
  for (size_t i1 = 0; i1 < f.tgt.parts.size(); ++i1)
    for (size_t i2 = 0; i2 < g.tgt.parts.size(); ++i2)
      for (size_t j1 = 0; j1 < f.src.parts.size(); ++j1)
        for (size_t j2 = 0; j2 < g.src.parts.size(); ++j2)
          m.blocks.push_back(base_->tensor(f.at(i1, j1), g.at(i2, j2)));
  return m;
}

BlockMor BlockTheory::dagger(const BlockMor& f) const {
  BlockMor m;
  m.src = f.tgt;
  m.tgt = f.src;
  for (size_t j = 0; j < f.src.parts.size(); ++j)
    for (size_t i = 0; i < f.tgt.parts.size(); ++i)
      m.blocks.push_back(base_->dagger(f.at(i, j)));
  return m;
}

BlockMor BlockTheory::add(const BlockMor& f, const BlockMor& g) const {
  if (!(f.src == g.src) || !(f.tgt == g.tgt))
    throw ShapeError("block add: type mismatch");
  BlockMor m;
  m.src = f.src;
  m.tgt = f.tgt;
  for (size_t i = 0; i < f.blocks.size(); ++i)
    m.blocks.push_back(base_->add(f.blocks[i], g.blocks[i]));
  return m;
}

bool BlockTheory::equal(const BlockMor& f, const BlockMor& g,
                        double tol) const {
  if (!(f.src == g.src) || !(f.tgt == g.tgt)) return false;
  for (size_t i = 0; i < f.blocks.size(); ++i)
    if (!base_->equal(f.blocks[i], g.blocks[i], tol)) return false;
  return true;
}

BlockMor BlockTheory::sample(Rng& rng, const BlockObj& a,
                             const BlockObj& b) const {
  BlockMor m;
  m.src = a;
  m.tgt = b;
  for (auto pb : b.parts)
    for (auto pa : a.parts) m.blocks.push_back(base_->sample(rng, pa, pb));
  return m;
}

BlockMor BlockTheory::coprojection(const BlockObj& a, size_t i) const {
  BlockMor m;
  m.src = BlockObj{{a.parts[i]}};
  m.tgt = a;
  for (size_t r = 0; r < a.parts.size(); ++r)
    m.blocks.push_back(r == i ? base_->id(a.parts[i])
                              : base_->zero(a.parts[i], a.parts[r]));
  return m;
}

BlockMor BlockTheory::projection(const BlockObj& a, size_t i) const {
  return dagger(coprojection(a, i));
}

BlockMor BlockTheory::codiagonal(const BlockObj& a) const {
  for (auto p : a.parts)
    if (!(p == a.parts[0]))
      throw ShapeError("codiagonal: branches must share a target");
  BlockMor m;
  m.src = a;
  m.tgt = BlockObj{{a.parts[0]}};
  for (size_t j = 0; j < a.parts.size(); ++j)
    m.blocks.push_back(base_->id(a.parts[0]));
  return m;
}

BlockMor BlockTheory::lift(const Morphism& f) const {
  BlockMor m;
  m.src = BlockObj{{base_->src(f)}};
  m.tgt = BlockObj{{base_->tgt(f)}};
  m.blocks.push_back(f);
  return m;
}

Mat flatten_blocks(const BlockMor& f) {
  int rows = 0, cols = 0;
  for (auto p : f.tgt.parts) rows += p.dim;
  for (auto p : f.src.parts) cols += p.dim;
  if (f.blocks.empty()) throw ShapeError("flatten_blocks: empty");
  Backend b = f.blocks.front().mat().backend();
  Mat out = Mat::zero(b, rows, cols);
  int roff = 0;
  for (size_t i = 0; i < f.tgt.parts.size(); ++i) {
    int coff = 0;
    for (size_t j = 0; j < f.src.parts.size(); ++j) {
      const Mat& blk = f.at(i, j).mat();
      for (int r = 0; r < blk.rows(); ++r)
        for (int c = 0; c < blk.cols(); ++c)
          out.at(roff + r, coff + c) = blk.at(r, c);
      coff += f.src.parts[j].dim;
    }
    roff += f.tgt.parts[i].dim;
  }
  return out;
}

}  // namespace pt
