#include "cpb/code.hpp"

#include <sstream>

namespace cpb {

namespace {

void require_stage(const CodedStripe& s, Stage expected, const char* op) {
    if (s.stage() != expected) {
        std::ostringstream os;
        os << op << ": expected stage " << stage_name(expected) << ", got "
           << stage_name(s.stage());
        throw DataError(os.str());
    }
}

void require_dims(const CodeParams& p, const CodedStripe& s, const char* op) {
    if (s.n() != p.n || s.k() != p.k) {
        std::ostringstream os;
        os << op << ": stripe is " << s.n() << "x" << s.r() << ", params want "
           << p.n << "x" << p.r;
        throw DataError(os.str());
    }
}

}  // namespace

int GroupLayout::group_of(int data_node) const {
    if (data_node < 1 || data_node > k)
        throw ParamError("group_of: data node index out of range");
    int end = 0;
    for (int t = 1; t <= L; ++t) {
        end += sizes[static_cast<std::size_t>(t - 1)];
        if (data_node <= end) return t;
    }
    throw ParamError("group_of: unreachable");
}

int GroupLayout::group_first(int t) const {
    int first = 1;
    for (int u = 1; u < t; ++u) first += sizes[static_cast<std::size_t>(u - 1)];
    return first;
}

int GroupLayout::group_last(int t) const {
    return group_first(t) + sizes[static_cast<std::size_t>(t - 1)] - 1;
}

GroupLayout make_group_layout(int k, int r, int L) {
    if (k < 1) throw ParamError("k must be at least 1");
    if (L < 2 || L > r) {
        std::ostringstream os;
        os << "group count L=" << L << " out of range [2, r=" << r << "]";
        throw ParamError(os.str());
    }
    if (L > k) {
        std::ostringstream os;
        os << "group count L=" << L << " exceeds k=" << k << " (empty groups)";
        throw ParamError(os.str());
    }
    GroupLayout g;
    g.k = k;
    g.r = r;
    g.L = L;
    const int floor_sz = k / L;
    const int big_groups = k - floor_sz * L;  // these get ceil(k/L)
    for (int i = 1; i <= L; ++i)
        g.sizes.push_back(i <= big_groups ? floor_sz + 1 : floor_sz);
    return g;
}

CodeParams make_params(int n, int k, int L, gf::FieldPtr field) {
    if (k < 1) throw ParamError("k must be at least 1");
    if (n <= k) throw ParamError("n must exceed k");
    if (!field) throw ParamError("make_params: null field");
    const int r = n - k;
    if (static_cast<std::uint32_t>(n) > field->order()) {
        std::ostringstream os;
        os << "field order " << field->order() << " too small for n=" << n;
        throw ParamError(os.str());
    }
    CodeParams p;
    p.n = n;
    p.k = k;
    p.r = r;
    p.L = L;
    p.groups = make_group_layout(k, r, L);
    p.field = std::move(field);
    p.field_bound_ok =
        p.field->order() > static_cast<std::uint64_t>(k) * r * r;
    return p;
}

std::vector<Elem> DataMatrix::column(int j) const {
    std::vector<Elem> col(static_cast<std::size_t>(k_));
    for (int i = 1; i <= k_; ++i) col[static_cast<std::size_t>(i - 1)] = at(i, j);
    return col;
}

std::vector<Elem> CodedStripe::node_row(int node) const {
    std::vector<Elem> row(static_cast<std::size_t>(r_));
    for (int j = 1; j <= r_; ++j) row[static_cast<std::size_t>(j - 1)] = at(node, j);
    return row;
}

DataMatrix CodedStripe::data_rows() const {
    DataMatrix d(k_, r_);
    for (int i = 1; i <= k_; ++i)
        for (int j = 1; j <= r_; ++j) d.at(i, j) = at(i, j);
    return d;
}

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::G1: return "G1";
        case Stage::G2: return "G2";
        case Stage::G3: return "G3";
    }
    return "?";
}

Stage stage_from_name(const std::string& name) {
    if (name == "G1") return Stage::G1;
    if (name == "G2") return Stage::G2;
    if (name == "G3") return Stage::G3;
    throw DataError("unknown stage tag: " + name);
}

std::vector<Elem> parity_vector(const CodeParams& p, int i) {
    if (i < 1 || i > p.r) throw ParamError("parity_vector: row index out of range");
    std::vector<Elem> v(static_cast<std::size_t>(p.k));
    for (int delta = 1; delta <= p.k; ++delta)
        v[static_cast<std::size_t>(delta - 1)] =
            p.gf().alpha_pow(static_cast<long long>(delta) * i);
    return v;
}

std::vector<Elem> piggy_vector(const CodeParams& p, int i, int t) {
    if (i < 1 || i > p.r) throw ParamError("piggy_vector: row index out of range");
    if (t < 1 || t > p.L) throw ParamError("piggy_vector: group index out of range");
    std::vector<Elem> v(static_cast<std::size_t>(p.k), 0);
    for (int delta = p.groups.group_first(t); delta <= p.groups.group_last(t); ++delta)
        v[static_cast<std::size_t>(delta - 1)] =
            p.gf().alpha_pow(static_cast<long long>(delta) * i);
    return v;
}

std::vector<PiggybackAssignment> piggyback_assignments(const CodeParams& p) {
    std::vector<PiggybackAssignment> out;
    for (int t = 1; t <= p.L - 1; ++t)
        for (int j = 1; j <= p.r - t; ++j)
            out.push_back({j, p.r - t + 1, t});
    return out;
}

EncodingPlan build_plan(const CodeParams& p) {
    EncodingPlan plan;
    for (int i = 1; i <= p.r; ++i) plan.parity_vectors.push_back(parity_vector(p, i));
    for (int i = 1; i <= p.r; ++i) {
        std::vector<std::vector<Elem>> per_group;
        for (int t = 1; t <= p.L; ++t) per_group.push_back(piggy_vector(p, i, t));
        plan.piggy_vectors.push_back(std::move(per_group));
    }
    plan.assignments = piggyback_assignments(p);
    return plan;
}

CodedStripe encode_base(const CodeParams& p, const DataMatrix& data) {
    if (data.k() != p.k || data.r() != p.r)
        throw DataError("encode_base: data dimensions do not match params");
    CodedStripe s(p.n, p.k, Stage::G1);
    for (int i = 1; i <= p.k; ++i)
        for (int j = 1; j <= p.r; ++j) s.at(i, j) = data.at(i, j);
    for (int i = 1; i <= p.r; ++i) {
        const auto pv = parity_vector(p, i);
        for (int j = 1; j <= p.r; ++j)
            s.parity(i, j) = gf::dot(p.gf(), pv, data.column(j));
    }
    return s;
}

CodedStripe apply_piggyback(const CodeParams& p, const CodedStripe& g1) {
    require_stage(g1, Stage::G1, "apply_piggyback");
    require_dims(p, g1, "apply_piggyback");
    CodedStripe s = g1;
    s.set_stage(Stage::G2);
    const DataMatrix data = g1.data_rows();
    for (const auto& a : piggyback_assignments(p)) {
        const auto q = piggy_vector(p, a.row, a.group);
        const Elem piggy = gf::dot(p.gf(), q, data.column(a.row));
        s.parity(a.row, a.col) = p.gf().add(s.parity(a.row, a.col), piggy);
    }
    return s;
}

CodedStripe conjugate_transform(const CodeParams& p, const CodedStripe& g2) {
    require_stage(g2, Stage::G2, "conjugate_transform");
    require_dims(p, g2, "conjugate_transform");
    CodedStripe s = g2;
    s.set_stage(Stage::G3);
    const Elem alpha = p.gf().alpha();
    for (int i = 1; i <= p.r; ++i) {
        for (int j = i + 1; j <= p.r; ++j) {
            const Elem rij = g2.parity(i, j);
            const Elem rji = g2.parity(j, i);
            s.parity(i, j) = p.gf().add(rij, p.gf().mul(alpha, rji));
            s.parity(j, i) = p.gf().add(rji, rij);
        }
    }
    return s;
}

CodedStripe inverse_conjugate(const CodeParams& p, const CodedStripe& g3) {
    require_stage(g3, Stage::G3, "inverse_conjugate");
    require_dims(p, g3, "inverse_conjugate");
    CodedStripe s = g3;
    s.set_stage(Stage::G2);
    const Elem alpha = p.gf().alpha();
    gf::Matrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = alpha;
    m.at(1, 0) = 1;
    m.at(1, 1) = 1;
    for (int i = 1; i <= p.r; ++i) {
        for (int j = i + 1; j <= p.r; ++j) {
            const auto rec = gf::solve_linear(
                p.gf(), m, {g3.parity(i, j), g3.parity(j, i)});
            s.parity(i, j) = rec[0];
            s.parity(j, i) = rec[1];
        }
    }
    return s;
}

CodedStripe encode(const CodeParams& p, const DataMatrix& data) {
    return conjugate_transform(p, apply_piggyback(p, encode_base(p, data)));
}

DataMatrix random_data_matrix(const CodeParams& p, std::mt19937_64& rng) {
    DataMatrix d(p.k, p.r);
    const std::uint64_t mask = p.gf().order() - 1;
    for (int i = 1; i <= p.k; ++i)
        for (int j = 1; j <= p.r; ++j)
            d.at(i, j) = static_cast<Elem>(rng() & mask);
    return d;
}

}  // namespace cpb
