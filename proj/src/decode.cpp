#include "cpb/decode.hpp"

#include <algorithm>
#include <sstream>

namespace cpb {

namespace {

// Piggyback presence in the pre-transform parity region: parity row i of
// column j carries one iff column j is a piggybacked column (j >= r-L+2)
// and the row lies above the diagonal (i < j).
bool piggy_present(const CodeParams& p, int i, int j) {
    return j >= p.r - p.L + 2 && i < j;
}

// Value of that piggyback, q_{i, r+1-j}^T a_i; needs column i of `d` complete.
Elem piggy_value(const CodeParams& p, const DataMatrix& d, int i, int j) {
    const int t = p.r + 1 - j;
    Elem acc = 0;
    for (int delta = p.groups.group_first(t); delta <= p.groups.group_last(t);
         ++delta) {
        acc = p.gf().add(
            acc, p.gf().mul(p.gf().alpha_pow(static_cast<long long>(delta) * i),
                            d.at(delta, i)));
    }
    return acc;
}

std::size_t flat_index(const CodeParams& p, int i, int j) {
    return static_cast<std::size_t>(i - 1) * p.r + (j - 1);
}

void check_share_map(const CodeParams& p, const ShareMap& shares) {
    for (const auto& [node, row] : shares) {
        if (node < 1 || node > p.n) {
            std::ostringstream os;
            os << "share for node " << node << " out of range [1, " << p.n << "]";
            throw DataError(os.str());
        }
        if (static_cast<int>(row.size()) != p.r) {
            std::ostringstream os;
            os << "share for node " << node << " has " << row.size()
               << " symbols, expected " << p.r;
            throw DataError(os.str());
        }
    }
}

std::string node_set_string(const std::vector<int>& nodes) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < nodes.size(); ++i)
        os << (i ? "," : "") << nodes[i];
    os << "}";
    return os.str();
}

}  // namespace

ShareMap shares_from_stripe(const CodedStripe& stripe, const std::vector<int>& erased) {
    ShareMap shares;
    for (int node = 1; node <= stripe.n(); ++node) {
        if (std::find(erased.begin(), erased.end(), node) != erased.end()) continue;
        shares[node] = stripe.node_row(node);
    }
    return shares;
}

std::vector<Elem> symbol_coefficients(const CodeParams& p, int node, int col,
                                      Stage stage) {
    if (node < 1 || node > p.n) throw ParamError("symbol_coefficients: node out of range");
    if (col < 1 || col > p.r) throw ParamError("symbol_coefficients: column out of range");
    const std::size_t len = static_cast<std::size_t>(p.k) * p.r;
    std::vector<Elem> coeff(len, 0);
    if (node <= p.k) {
        coeff[flat_index(p, node, col)] = 1;
        return coeff;
    }

    // Pre-transform coefficients of parity row i, column j.
    auto g2_coeffs = [&](int i, int j) {
        std::vector<Elem> c(len, 0);
        for (int delta = 1; delta <= p.k; ++delta)
            c[flat_index(p, delta, j)] =
                p.gf().alpha_pow(static_cast<long long>(delta) * i);
        if (stage != Stage::G1 && piggy_present(p, i, j)) {
            const int t = p.r + 1 - j;
            for (int delta = p.groups.group_first(t);
                 delta <= p.groups.group_last(t); ++delta) {
                const std::size_t pos = flat_index(p, delta, i);
                c[pos] = p.gf().add(
                    c[pos], p.gf().alpha_pow(static_cast<long long>(delta) * i));
            }
        }
        return c;
    };

    const int i = node - p.k;
    if (stage != Stage::G3 || i == col) return g2_coeffs(i, col);
    const auto own = g2_coeffs(i, col);
    const auto mirror = g2_coeffs(col, i);
    const Elem factor = (i < col) ? p.gf().alpha() : static_cast<Elem>(1);
    for (std::size_t pos = 0; pos < len; ++pos)
        coeff[pos] = p.gf().add(own[pos], p.gf().mul(factor, mirror[pos]));
    return coeff;
}

DataMatrix decode_generic(const CodeParams& p, const ShareMap& shares) {
    check_share_map(p, shares);
    if (static_cast<int>(shares.size()) < p.k) {
        std::ostringstream os;
        os << "decode_generic: got " << shares.size() << " nodes, need at least "
           << p.k;
        throw DataError(os.str());
    }
    const int dim = p.k * p.r;
    gf::Matrix system(dim, dim);
    std::vector<Elem> rhs(static_cast<std::size_t>(dim));
    std::vector<int> used_nodes;
    int row = 0;
    for (const auto& [node, symbols] : shares) {
        if (static_cast<int>(used_nodes.size()) == p.k) break;
        used_nodes.push_back(node);
        for (int j = 1; j <= p.r; ++j, ++row) {
            const auto coeff = symbol_coefficients(p, node, j);
            for (int c = 0; c < dim; ++c)
                system.at(row, c) = coeff[static_cast<std::size_t>(c)];
            rhs[static_cast<std::size_t>(row)] = symbols[static_cast<std::size_t>(j - 1)];
        }
    }
    std::vector<Elem> flat;
    try {
        flat = gf::solve_linear(p.gf(), system, rhs);
    } catch (const SingularMatrixError&) {
        throw NotDecodableError(
            "decode_generic: node set " + node_set_string(used_nodes) +
                " does not determine the data (MDS violation)",
            used_nodes);
    }
    DataMatrix d(p.k, p.r);
    for (int i = 1; i <= p.k; ++i)
        for (int j = 1; j <= p.r; ++j) d.at(i, j) = flat[flat_index(p, i, j)];
    return d;
}

namespace {

struct StructuredState {
    std::vector<int> erased_data;     // j_1 < ... < j_t
    std::vector<int> surviving_rows;  // i_1 < ... < i_t (parity rows)
    DataMatrix data;                  // filled in as columns are recovered
};

// Solves one column c of the structured decode. `rows` and `rhs` describe t
// equations sum_delta row[delta] * a_{delta,c} = rhs over the full column;
// known entries are moved to the right-hand side before the t x t solve.
void solve_column(const CodeParams& p, StructuredState& st, int c,
                  const std::vector<std::vector<Elem>>& rows,
                  std::vector<Elem> rhs) {
    const int t = static_cast<int>(st.erased_data.size());
    for (int v = 0; v < t; ++v) {
        Elem acc = rhs[static_cast<std::size_t>(v)];
        int next_erased = 0;
        for (int delta = 1; delta <= p.k; ++delta) {
            if (next_erased < t && st.erased_data[static_cast<std::size_t>(next_erased)] == delta) {
                ++next_erased;
                continue;
            }
            acc = p.gf().add(acc, p.gf().mul(rows[static_cast<std::size_t>(v)][static_cast<std::size_t>(delta - 1)],
                                             st.data.at(delta, c)));
        }
        rhs[static_cast<std::size_t>(v)] = acc;
    }
    gf::Matrix m(t, t);
    for (int v = 0; v < t; ++v)
        for (int u = 0; u < t; ++u)
            m.at(v, u) = rows[static_cast<std::size_t>(v)]
                             [static_cast<std::size_t>(st.erased_data[static_cast<std::size_t>(u)] - 1)];
    std::vector<Elem> solution;
    try {
        solution = gf::solve_linear(p.gf(), m, rhs);
    } catch (const SingularMatrixError&) {
        std::ostringstream os;
        os << "structured decode: singular column system for column " << c
           << " (field order " << p.gf().order() << " may be too small; bound is "
           << static_cast<std::uint64_t>(p.k) * p.r * p.r << ")";
        throw FieldTooSmallError(os.str(), c);
    }
    for (int u = 0; u < t; ++u)
        st.data.at(st.erased_data[static_cast<std::size_t>(u)], c) =
            solution[static_cast<std::size_t>(u)];
}

}  // namespace

DataMatrix decode_structured(const CodeParams& p, const ShareMap& shares,
                             bool fallback_to_generic) {
    check_share_map(p, shares);
    std::vector<int> erased;
    for (int node = 1; node <= p.n; ++node)
        if (!shares.count(node)) erased.push_back(node);
    if (static_cast<int>(erased.size()) != p.r) {
        std::ostringstream os;
        os << "decode_structured: " << erased.size() << " erased nodes, expected "
           << p.r;
        throw DataError(os.str());
    }

    StructuredState st;
    st.data = DataMatrix(p.k, p.r);
    std::vector<bool> parity_row_erased(static_cast<std::size_t>(p.r) + 1, false);
    for (int node : erased) {
        if (node <= p.k)
            st.erased_data.push_back(node);
        else
            parity_row_erased[static_cast<std::size_t>(node - p.k)] = true;
    }
    const int t = static_cast<int>(st.erased_data.size());

    for (const auto& [node, symbols] : shares) {
        if (node > p.k) continue;
        for (int j = 1; j <= p.r; ++j)
            st.data.at(node, j) = symbols[static_cast<std::size_t>(j - 1)];
    }
    if (t == 0) return st.data;  // all erased nodes are parity; data is intact

    for (int i = 1; i <= p.r; ++i)
        if (!parity_row_erased[static_cast<std::size_t>(i)]) st.surviving_rows.push_back(i);

    const Elem alpha = p.gf().alpha();
    auto stored = [&](int i, int j) {  // P(i, j) from the surviving parity node k+i
        return shares.at(p.k + i)[static_cast<std::size_t>(j - 1)];
    };

    try {
        // Undo the conjugate pairs among the surviving parity rows, yielding
        // the pre-transform values R(i_u, i_v).
        gf::Matrix pair(2, 2);
        pair.at(0, 0) = 1;
        pair.at(0, 1) = alpha;
        pair.at(1, 0) = 1;
        pair.at(1, 1) = 1;
        std::vector<std::vector<Elem>> rmat(static_cast<std::size_t>(t),
                                            std::vector<Elem>(static_cast<std::size_t>(t), 0));
        for (int u = 0; u < t; ++u) {
            rmat[static_cast<std::size_t>(u)][static_cast<std::size_t>(u)] =
                stored(st.surviving_rows[static_cast<std::size_t>(u)],
                       st.surviving_rows[static_cast<std::size_t>(u)]);
            for (int v = u + 1; v < t; ++v) {
                const int iu = st.surviving_rows[static_cast<std::size_t>(u)];
                const int iv = st.surviving_rows[static_cast<std::size_t>(v)];
                const auto rec =
                    gf::solve_linear(p.gf(), pair, {stored(iu, iv), stored(iv, iu)});
                rmat[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = rec[0];
                rmat[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = rec[1];
            }
        }

        // Recover the columns matching the surviving rows, in ascending
        // order; piggybacks of already-recovered columns are peeled off the
        // right-hand sides as they become computable.
        for (int w = 0; w < t; ++w) {
            const int c = st.surviving_rows[static_cast<std::size_t>(w)];
            std::vector<std::vector<Elem>> rows;
            std::vector<Elem> rhs;
            for (int v = 0; v < t; ++v) {
                const int iv = st.surviving_rows[static_cast<std::size_t>(v)];
                Elem value = rmat[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
                if (v < w && piggy_present(p, iv, c))
                    value = p.gf().add(value, piggy_value(p, st.data, iv, c));
                rows.push_back(parity_vector(p, iv));
                rhs.push_back(value);
            }
            solve_column(p, st, c, rows, rhs);
        }

        // Remaining columns: each yields t equations from the stored symbols
        // P(i_v, c) after removing everything computable from the recovered
        // columns. For c above every surviving row all rows reduce to the
        // plain base-code vectors; for the mixed columns in between, rows
        // below the diagonal pick up the piggyback vector of column c.
        for (int c = 1; c <= p.r; ++c) {
            if (std::find(st.surviving_rows.begin(), st.surviving_rows.end(), c) !=
                st.surviving_rows.end())
                continue;
            std::vector<std::vector<Elem>> rows;
            std::vector<Elem> rhs;
            for (int v = 0; v < t; ++v) {
                const int iv = st.surviving_rows[static_cast<std::size_t>(v)];
                std::vector<Elem> row = parity_vector(p, iv);
                Elem value = stored(iv, c);
                // P_c^T a_{iv}, computable since column iv is recovered.
                Elem mirror = 0;
                for (int delta = 1; delta <= p.k; ++delta)
                    mirror = p.gf().add(
                        mirror,
                        p.gf().mul(p.gf().alpha_pow(static_cast<long long>(delta) * c),
                                   st.data.at(delta, iv)));
                if (iv < c) {
                    value = p.gf().add(value, p.gf().mul(alpha, mirror));
                    if (piggy_present(p, iv, c))
                        value = p.gf().add(value, piggy_value(p, st.data, iv, c));
                } else {
                    value = p.gf().add(value, mirror);
                    if (piggy_present(p, c, iv)) {
                        const auto q = piggy_vector(p, c, p.r + 1 - iv);
                        for (int delta = 1; delta <= p.k; ++delta)
                            row[static_cast<std::size_t>(delta - 1)] = p.gf().add(
                                row[static_cast<std::size_t>(delta - 1)],
                                q[static_cast<std::size_t>(delta - 1)]);
                    }
                }
                rows.push_back(std::move(row));
                rhs.push_back(value);
            }
            solve_column(p, st, c, rows, rhs);
        }
    } catch (const FieldTooSmallError&) {
        if (fallback_to_generic) return decode_generic(p, shares);
        throw;
    }
    return st.data;
}

std::uint64_t pattern_count(int n, int r) {
    unsigned __int128 result = 1;
    for (int i = 1; i <= r; ++i) {
        result = result * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
        if (result > static_cast<unsigned __int128>(UINT64_MAX))
            return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(result);
}

bool pattern_decodable(const CodeParams& p, const std::vector<int>& erased) {
    int t = 0;
    std::vector<bool> parity_row_erased(static_cast<std::size_t>(p.r) + 1, false);
    std::vector<int> erased_data;
    for (int node : erased) {
        if (node <= p.k) {
            erased_data.push_back(node);
            ++t;
        } else {
            parity_row_erased[static_cast<std::size_t>(node - p.k)] = true;
        }
    }
    if (t == 0) return true;

    // The kr x kr surviving-symbol system reduces exactly to the
    // (t*r) x (t*r) block of surviving parity functionals restricted to the
    // erased data unknowns: surviving data rows are unit vectors.
    const int dim = t * p.r;
    gf::Matrix m(dim, dim);
    int row = 0;
    for (int i = 1; i <= p.r; ++i) {
        if (parity_row_erased[static_cast<std::size_t>(i)]) continue;
        for (int j = 1; j <= p.r; ++j, ++row) {
            const auto coeff = symbol_coefficients(p, p.k + i, j);
            int col = 0;
            for (int d : erased_data)
                for (int jj = 1; jj <= p.r; ++jj, ++col)
                    m.at(row, col) = coeff[static_cast<std::size_t>((d - 1) * p.r + jj - 1)];
        }
    }
    return gf::is_invertible(p.gf(), m);
}

MdsReport verify_mds(const CodeParams& p, std::uint64_t pattern_cap) {
    const std::uint64_t total = pattern_count(p.n, p.r);
    if (total > pattern_cap) {
        std::ostringstream os;
        os << "verify_mds: " << total << " patterns exceed the cap of " << pattern_cap;
        throw ParamError(os.str());
    }

    // Cache the parity functionals once; per pattern only a gather is left.
    std::vector<std::vector<std::vector<Elem>>> coeffs(
        static_cast<std::size_t>(p.r) + 1);
    for (int i = 1; i <= p.r; ++i)
        for (int j = 1; j <= p.r; ++j)
            coeffs[static_cast<std::size_t>(i)].push_back(
                symbol_coefficients(p, p.k + i, j));

    MdsReport report;
    std::vector<int> pattern(static_cast<std::size_t>(p.r));
    for (int i = 0; i < p.r; ++i) pattern[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        ++report.patterns_checked;

        int t = 0;
        std::vector<int> erased_data;
        std::vector<bool> parity_row_erased(static_cast<std::size_t>(p.r) + 1, false);
        for (int node : pattern) {
            if (node <= p.k) {
                erased_data.push_back(node);
                ++t;
            } else {
                parity_row_erased[static_cast<std::size_t>(node - p.k)] = true;
            }
        }
        if (t > 0) {
            const int dim = t * p.r;
            gf::Matrix m(dim, dim);
            int row = 0;
            for (int i = 1; i <= p.r; ++i) {
                if (parity_row_erased[static_cast<std::size_t>(i)]) continue;
                for (int j = 1; j <= p.r; ++j, ++row) {
                    const auto& coeff =
                        coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)];
                    int col = 0;
                    for (int d : erased_data)
                        for (int jj = 1; jj <= p.r; ++jj, ++col)
                            m.at(row, col) =
                                coeff[static_cast<std::size_t>((d - 1) * p.r + jj - 1)];
                }
            }
            if (!gf::is_invertible(p.gf(), m)) report.failures.push_back({pattern});
        }

        // Next r-subset of [n] in lexicographic order.
        int pos = p.r - 1;
        while (pos >= 0 && pattern[static_cast<std::size_t>(pos)] == p.n - (p.r - 1 - pos))
            --pos;
        if (pos < 0) break;
        ++pattern[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < p.r; ++q)
            pattern[static_cast<std::size_t>(q)] = pattern[static_cast<std::size_t>(q - 1)] + 1;
    }
    return report;
}

}  // namespace cpb
