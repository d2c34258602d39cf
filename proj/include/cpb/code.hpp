#pragma once

#include <random>
#include <vector>

#include "cpb/galois.hpp"
#include "cpb/linalg.hpp"

namespace cpb {

using gf::Elem;

/// Partition of the k data nodes into L contiguous groups, largest groups
/// first. Node and group indices are 1-based throughout the public model.
struct GroupLayout {
    int k = 0;
    int r = 0;
    int L = 0;
    std::vector<int> sizes;  // n_1..n_L

    int group_of(int data_node) const;          // group index in [L]
    int group_first(int t) const;               // first data node of group t
    int group_last(int t) const;                // last data node of group t
};

GroupLayout make_group_layout(int k, int r, int L);

/// Validated code parameters: n nodes total, k data nodes, r = n - k parity
/// nodes, L piggyback groups, over the given field. The stored array has
/// r columns, i.e. the sub-packetization equals r.
struct CodeParams {
    int n = 0;
    int k = 0;
    int r = 0;
    int L = 0;
    GroupLayout groups;
    gf::FieldPtr field;
    /// True iff the field order exceeds k*r^2, the sufficient condition for
    /// the code to be MDS; below it, MDS must be established by search.
    bool field_bound_ok = false;

    const gf::GaloisField& gf() const { return *field; }
};

CodeParams make_params(int n, int k, int L, gf::FieldPtr field);

/// The k x r source array; entry (i, j) is the symbol of data node i in
/// column j. Indices 1-based.
class DataMatrix {
public:
    DataMatrix() : k_(0), r_(0) {}
    DataMatrix(int k, int r)
        : k_(k), r_(r), cells_(static_cast<std::size_t>(k) * r, 0) {}

    int k() const { return k_; }
    int r() const { return r_; }
    Elem at(int i, int j) const { return cells_[idx(i, j)]; }
    Elem& at(int i, int j) { return cells_[idx(i, j)]; }

    /// Column j as a length-k vector (the data vector the base code sees).
    std::vector<Elem> column(int j) const;

    bool operator==(const DataMatrix&) const = default;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i - 1) * r_ + (j - 1);
    }
    int k_, r_;
    std::vector<Elem> cells_;
};

/// Encoding stage of a stored array: G1 after the base code, G2 after
/// piggybacking, G3 after the conjugate transform.
enum class Stage { G1, G2, G3 };

const char* stage_name(Stage s);
Stage stage_from_name(const std::string& name);

/// The n x r stored array; row = storage node. Rows 1..k are the data rows,
/// rows k+1..k+r hold the r x r parity region.
class CodedStripe {
public:
    CodedStripe() : n_(0), k_(0), r_(0), stage_(Stage::G1) {}
    CodedStripe(int n, int k, Stage stage)
        : n_(n), k_(k), r_(n - k), stage_(stage),
          cells_(static_cast<std::size_t>(n) * (n - k), 0) {}

    int n() const { return n_; }
    int k() const { return k_; }
    int r() const { return r_; }
    Stage stage() const { return stage_; }
    void set_stage(Stage s) { stage_ = s; }

    Elem at(int node, int col) const { return cells_[idx(node, col)]; }
    Elem& at(int node, int col) { return cells_[idx(node, col)]; }

    /// Parity-region accessor: entry in parity row i of column j,
    /// i.e. the symbol stored at node k+i.
    Elem parity(int i, int j) const { return at(k_ + i, j); }
    Elem& parity(int i, int j) { return at(k_ + i, j); }

    std::vector<Elem> node_row(int node) const;
    DataMatrix data_rows() const;

    bool operator==(const CodedStripe&) const = default;

private:
    std::size_t idx(int node, int col) const {
        return static_cast<std::size_t>(node - 1) * r_ + (col - 1);
    }
    int n_, k_, r_;
    Stage stage_;
    std::vector<Elem> cells_;
};

/// One piggyback target: parity row `row` of column `col` receives the
/// group-`group` piggyback of that row's own data column.
struct PiggybackAssignment {
    int row;    // parity row index in [r]; stored at node k + row
    int col;    // r - group + 1
    int group;  // group t in [L-1] whose data region feeds the piggyback
    bool operator==(const PiggybackAssignment&) const = default;
};

/// Coding vectors of the construction: the r base-code parity vectors and
/// the piggyback assignment list.
struct EncodingPlan {
    std::vector<std::vector<Elem>> parity_vectors;           // P_1..P_r
    std::vector<std::vector<std::vector<Elem>>> piggy_vectors;  // [i][t] -> q_{i,t}
    std::vector<PiggybackAssignment> assignments;
};

/// Base-code coefficient vector P_i = (alpha^i, alpha^{2i}, ..., alpha^{ki}).
std::vector<Elem> parity_vector(const CodeParams& p, int i);

/// P_i restricted to group t's data nodes, zero elsewhere.
std::vector<Elem> piggy_vector(const CodeParams& p, int i, int t);

std::vector<PiggybackAssignment> piggyback_assignments(const CodeParams& p);

EncodingPlan build_plan(const CodeParams& p);

/// Step 1: r independent systematic base-code instances, one per column.
CodedStripe encode_base(const CodeParams& p, const DataMatrix& data);

/// Step 2: adds the piggyback functions onto the assigned parity symbols.
CodedStripe apply_piggyback(const CodeParams& p, const CodedStripe& g1);

/// Step 3: pairwise mixing of diagonally symmetric parity symbols,
/// P(i,j) = R(i,j) + alpha*R(j,i) above the diagonal and
/// P(i,j) = R(i,j) + R(j,i) below it; the diagonal is untouched.
CodedStripe conjugate_transform(const CodeParams& p, const CodedStripe& g2);

/// Exact inverse of the transform via the 2x2 solve per symmetric pair.
CodedStripe inverse_conjugate(const CodeParams& p, const CodedStripe& g3);

/// Full encoder: base code, piggybacking, conjugate transform.
CodedStripe encode(const CodeParams& p, const DataMatrix& data);

/// Uniform random data matrix; draws are masked to the field order so the
/// stream is reproducible across platforms.
DataMatrix random_data_matrix(const CodeParams& p, std::mt19937_64& rng);

}  // namespace cpb
