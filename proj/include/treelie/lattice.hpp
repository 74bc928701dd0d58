#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treelie/gl_action.hpp"
#include "treelie/integer.hpp"
#include "treelie/tensor.hpp"

namespace treelie {

/// Sparse integer vector with coordinates sorted ascending.
using SparseVector = std::vector<std::pair<std::uint64_t, Integer>>;

SparseVector to_sparse(const TensorVec& v);
TensorVec to_tensor(const SparseVector& v, int arity);

/// Integer lattice in row echelon form. Rows are kept with distinct leading
/// coordinates (the pivots) and positive pivot entries; the reduced Hermite
/// form is produced on demand. Arithmetic starts in checked 64-bit and moves
/// to arbitrary precision on the first overflow.
///
/// arity > 0 means coordinates are TensorKeys of that arity; arity 0 is used
/// for abstract coordinates (kernels, coinvariants).
class Lattice {
public:
    explicit Lattice(int arity = 0);
    Lattice(const Lattice& o);
    Lattice(Lattice&&) noexcept;
    Lattice& operator=(const Lattice& o);
    Lattice& operator=(Lattice&&) noexcept;
    ~Lattice();

    int arity() const { return arity_; }
    std::size_t rank() const;
    bool is_zero() const { return rank() == 0; }
    bool big() const;  // true once arithmetic moved to arbitrary precision

    /// Adds a generator. Returns true if the lattice changed. gen_id is
    /// recorded in the generation log when it does.
    bool insert(const TensorVec& v, std::int64_t gen_id = -1);
    bool insert(const SparseVector& v, std::int64_t gen_id = -1);

    /// Coordinates w with Σ w_i basis()[i] = v, or nullopt if v is not in the lattice.
    std::optional<std::vector<Integer>> member(const TensorVec& v) const;
    std::optional<std::vector<Integer>> member(const SparseVector& v) const;
    bool contains(const Lattice& other) const;

    /// Current echelon rows, ordered by pivot.
    std::vector<SparseVector> basis() const;
    /// Reduced Hermite normal form: unique for the lattice.
    std::vector<SparseVector> hnf() const;
    std::vector<std::uint64_t> pivots() const;
    /// FNV-1a digest of the reduced HNF, as 16 hex digits.
    std::string digest() const;

    /// Generator ids that changed the lattice when inserted, ascending. The
    /// corresponding generators span the same lattice as all generators.
    std::vector<std::int64_t> generating_subset() const;
    /// For each basis row (pivot order), the generator that created it.
    std::vector<std::int64_t> row_origins() const;

    /// Binary form: arity, basis count, then (row, col, coefficient) triples.
    std::string serialize() const;
    static Lattice deserialize(const std::string& bytes);

private:
    struct Impl;
    int arity_;
    std::unique_ptr<Impl> impl_;
};

Lattice span(const std::vector<TensorVec>& generators);
/// Mutual inclusion. Throws ArgumentError on arity mismatch.
bool lattice_equal(const Lattice& x, const Lattice& y);

/// Integer kernel of the map e_i -> images[i]: a basis of {x : Σ x_i images[i] = 0},
/// each element given as sparse coordinates (index, coefficient).
std::vector<SparseVector> integer_kernel(const std::vector<SparseVector>& images);

/// Σ coefficient_i · basis[i] for a sparse coordinate vector.
SparseVector combine(const std::vector<SparseVector>& rows, const SparseVector& coords);

struct QuotientPresentation {
    std::int64_t rank = 0;
    std::vector<Integer> torsion;  // invariant factors > 1, each dividing the next
};

/// Smith invariant factors of a dense integer matrix, nonzero only.
std::vector<Integer> smith_invariants(const std::vector<std::vector<Integer>>& rows);

/// Z^n modulo the span of the relations (coordinates 0..n-1).
QuotientPresentation quotient(std::int64_t ambient, const std::vector<SparseVector>& relations);

/// Generating set used for GL_g(Z) coinvariants: Id ± E_ij (i != j), then the
/// adjacent transpositions (i i+1).
std::vector<GLElement> coinvariant_generators(int genus);

/// G·e - e for every basic tensor e of H^{⊗n} and every generator G, with
/// coordinates the base-2g index of the tuple. Throws BudgetExceeded if
/// (2g)^n exceeds max_ambient.
std::vector<SparseVector> coinvariant_relations(int n, int genus, std::int64_t max_ambient = 4096);
std::int64_t coinvariant_ambient(int n, int genus);
/// Index of a tuple of labels in H^{⊗n} (a_1..a_g then b_1..b_g per slot).
std::uint64_t coinvariant_index(const std::vector<BasisLabel>& tuple, int genus);

}  // namespace treelie
