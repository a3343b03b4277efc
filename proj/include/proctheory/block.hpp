#pragma once

#include <memory>

#include "proctheory/theory.hpp"

namespace pt {

// Biproduct completion of a base theory with addition: objects are finite
// lists of base objects, morphisms are matrices of base morphisms with
// block (i, j) : src_j -> tgt_i. Composition is matrix composition of blocks
// with the base addition supplying the sums. This also houses the partial
// test matrices (columns of events into a coproduct of outcome systems).
struct BlockObj {
  std::vector<Obj> parts;
  int total() const {
    int t = 0;
    for (auto p : parts) t += p.dim;
    return t;
  }
  bool operator==(const BlockObj& o) const {
    if (parts.size() != o.parts.size()) return false;
    for (size_t i = 0; i < parts.size(); ++i)
      if (!(parts[i] == o.parts[i])) return false;
    return true;
  }
};

struct BlockMor {
  BlockObj src, tgt;
  std::vector<Morphism> blocks;  // row-major: blocks[i * src.size + j]

  const Morphism& at(size_t i, size_t j) const {
    return blocks[i * src.parts.size() + j];
  }
  Morphism& at(size_t i, size_t j) { return blocks[i * src.parts.size() + j]; }
};

class BlockTheory {
 public:
  explicit BlockTheory(std::shared_ptr<const Theory> base) : base_(std::move(base)) {
    if (!base_->caps().has_addition)
      throw BackendError("biproduct completion needs addition in the base");
  }
  const Theory& base() const { return *base_; }

  BlockObj unit() const { return BlockObj{{base_->unit()}}; }
  BlockObj obj(std::vector<int> dims) const {
    BlockObj o;
    for (int d : dims) o.parts.push_back(Obj{d});
    return o;
  }
  BlockObj tensor_obj(const BlockObj& a, const BlockObj& b) const;

  BlockMor id(const BlockObj& a) const;
  BlockMor zero(const BlockObj& a, const BlockObj& b) const;
  BlockMor discard(const BlockObj& a) const;
  BlockMor compose(const BlockMor& g, const BlockMor& f) const;
  BlockMor tensor(const BlockMor& f, const BlockMor& g) const;
  BlockMor dagger(const BlockMor& f) const;
  BlockMor add(const BlockMor& f, const BlockMor& g) const;
  bool equal(const BlockMor& f, const BlockMor& g, double tol) const;
  BlockMor sample(Rng& rng, const BlockObj& a, const BlockObj& b) const;

  // Biproduct structure: coprojection kappa_i : (A_i) -> A and projection
  // pi_i = kappa_i† : A -> (A_i).
  BlockMor coprojection(const BlockObj& a, size_t i) const;
  BlockMor projection(const BlockObj& a, size_t i) const;
  // Codiagonal nabla : A_1 + ... + A_n -> B when every part equals B.
  BlockMor codiagonal(const BlockObj& a) const;

  // Embed a base morphism as a singleton block.
  BlockMor lift(const Morphism& f) const;

  bool is_causal(const BlockMor& f, double tol) const {
    return equal(compose(discard(f.tgt), f), discard(f.src), tol);
  }

 private:
  std::shared_ptr<const Theory> base_;
};

// For matrix bases: flatten a block morphism into one big matrix over the
// direct sums (oracle for block composition).
Mat flatten_blocks(const BlockMor& f);

}  // namespace pt
