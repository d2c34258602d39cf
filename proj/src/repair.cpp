#include "cpb/repair.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cpb {

namespace {

// Read access to the surviving nodes with ledger recording. A symbol needed
// twice is downloaded once; the failed node is never touched.
class ShareReader {
public:
    ShareReader(int failed, const CodedStripe& stripe,
                const std::vector<int>& unreadable)
        : failed_(failed), stripe_(stripe),
          unreadable_(unreadable.begin(), unreadable.end()) {}

    Elem fetch(int node, int col) {
        if (node == failed_)
            throw DataError("repair: attempted download from the failed node");
        if (std::find(unreadable_.begin(), unreadable_.end(), node) !=
            unreadable_.end()) {
            std::ostringstream os;
            os << "repair: source node " << node << " is unreadable";
            throw DataError(os.str());
        }
        const auto key = std::make_pair(node, col);
        auto it = seen_.find(key);
        if (it != seen_.end()) return it->second;
        const Elem value = stripe_.at(node, col);
        seen_.emplace(key, value);
        ledger_.push_back({node, col, value});
        return value;
    }

    std::vector<Download> ledger() && { return std::move(ledger_); }

private:
    int failed_;
    const CodedStripe& stripe_;
    std::vector<int> unreadable_;
    std::map<std::pair<int, int>, Elem> seen_;
    std::vector<Download> ledger_;
};

// (R(i,j), R(j,i)) from the stored pair (P(i,j), P(j,i)), i < j.
std::pair<Elem, Elem> unmix_pair(const gf::GaloisField& f, Elem pij, Elem pji) {
    gf::Matrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = f.alpha();
    m.at(1, 0) = 1;
    m.at(1, 1) = 1;
    const auto rec = gf::solve_linear(f, m, {pij, pji});
    return {rec[0], rec[1]};
}

RepairReport finalize(const CodeParams& p, int f, std::vector<Elem> recovered,
                      ShareReader&& reader) {
    RepairReport report;
    report.failed_node = f;
    report.recovered = std::move(recovered);
    report.downloads = std::move(reader).ledger();
    report.bandwidth = static_cast<int>(report.downloads.size());
    report.predicted = predicted_bandwidth(p, f);
    return report;
}

}  // namespace

int predicted_bandwidth(const GroupLayout& g, int node) {
    const int k = g.k;
    const int r = g.r;
    const int L = g.L;
    if (node < 1 || node > k + r) throw ParamError("predicted_bandwidth: node out of range");
    if (node <= k) {
        const int i = g.group_of(node);
        const int ni = g.sizes[static_cast<std::size_t>(i - 1)];
        if (i < L) return k * i + (r - i) * (ni + 1);
        return k * (L - 1) + (r - L + 1) * g.sizes[static_cast<std::size_t>(L - 1)] +
               2 * (L - 1) * (r - L + 1);
    }
    if (node <= k + r - L + 1) return k + r - 1;
    const int t = k + r + 1 - node;
    return k + r - 1 + g.sizes[static_cast<std::size_t>(t - 1)] * (node - k - 1);
}

int predicted_bandwidth(const CodeParams& p, int node) {
    return predicted_bandwidth(p.groups, node);
}

RepairReport repair_data_node(const CodeParams& p, int f, const CodedStripe& stripe,
                              const std::vector<int>& unreadable) {
    if (f < 1 || f > p.k) throw ParamError("repair_data_node: not a data node");
    if (stripe.stage() != Stage::G3)
        throw DataError("repair_data_node: stripe must be fully encoded (G3)");
    const auto& gf = p.gf();
    const int k = p.k;
    const int r = p.r;
    const int L = p.L;
    const int i = p.groups.group_of(f);
    ShareReader reader(f, stripe, unreadable);
    std::vector<Elem> recovered(static_cast<std::size_t>(r), 0);

    // Number of trailing columns rebuilt whole-column in step 1.
    const int tail = (i < L) ? i : L - 1;

    // Step 1: download the trailing columns (all data rows but f) plus their
    // diagonal parities; each column is a single-erasure base-code solve.
    DataMatrix tail_cols(k, r);  // only columns > r - tail are filled
    for (int j = r - tail + 1; j <= r; ++j) {
        Elem acc = reader.fetch(k + j, j);  // P(j,j) = P_j^T a_j
        for (int delta = 1; delta <= k; ++delta) {
            if (delta == f) continue;
            const Elem s = reader.fetch(delta, j);
            tail_cols.at(delta, j) = s;
            acc = gf.add(acc, gf.mul(gf.alpha_pow(static_cast<long long>(delta) * j), s));
        }
        const Elem afj = gf.mul(gf.alpha_pow(-static_cast<long long>(f) * j), acc);
        tail_cols.at(f, j) = afj;
        recovered[static_cast<std::size_t>(j - 1)] = afj;
    }
    auto base_product = [&](int u, int j) {  // P_u^T a_j over a completed column
        Elem acc = 0;
        for (int delta = 1; delta <= k; ++delta)
            acc = gf.add(acc, gf.mul(gf.alpha_pow(static_cast<long long>(delta) * u),
                                     tail_cols.at(delta, j)));
        return acc;
    };

    if (i < L) {
        // Step 2: per remaining column, unmix the transformed pair against
        // column r+1-i, strip the locally computed P_v^T a_{r+1-i}, and peel
        // the group mates off the piggyback.
        const int c = r + 1 - i;
        for (int v = 1; v <= r - i; ++v) {
            const Elem pcv = reader.fetch(k + c, v);  // P(c, v)
            const Elem pvc = reader.fetch(k + v, c);  // P(v, c)
            // v < c: pair holds R(v,c) = P_v^T a_c + q_{v,i}^T a_v and R(c,v).
            const auto [rvc, rcv] = unmix_pair(gf, pvc, pcv);
            (void)rcv;
            Elem acc = gf.add(rvc, base_product(v, c));  // q_{v,i}^T a_v remains
            for (int s = p.groups.group_first(i); s <= p.groups.group_last(i); ++s) {
                if (s == f) continue;
                acc = gf.add(acc, gf.mul(gf.alpha_pow(static_cast<long long>(s) * v),
                                         reader.fetch(s, v)));
            }
            recovered[static_cast<std::size_t>(v - 1)] =
                gf.mul(gf.alpha_pow(-static_cast<long long>(f) * v), acc);
        }
    } else {
        // Last group: no column pairs with the group's own piggybacks exist,
        // so per column v the piggyback q_{v,L}^T a_v is isolated from the
        // diagonal P(v,v) by subtracting all L-1 unmixed cross terms.
        for (int v = 1; v <= r - L + 1; ++v) {
            Elem acc = reader.fetch(k + v, v);  // P(v,v) = P_v^T a_v
            for (int u = r - L + 2; u <= r; ++u) {
                const Elem puv = reader.fetch(k + u, v);  // P(u, v)
                const Elem pvu = reader.fetch(k + v, u);  // P(v, u)
                const auto [rvu, ruv] = unmix_pair(gf, pvu, puv);
                (void)ruv;
                // rvu = P_v^T a_u + q_{v,r+1-u}^T a_v
                acc = gf.add(acc, rvu);
                acc = gf.add(acc, base_product(v, u));  // add back P_v^T a_u
            }
            // acc is now q_{v,L}^T a_v; remove the group mates.
            for (int s = p.groups.group_first(L); s <= p.groups.group_last(L); ++s) {
                if (s == f) continue;
                acc = gf.add(acc, gf.mul(gf.alpha_pow(static_cast<long long>(s) * v),
                                         reader.fetch(s, v)));
            }
            recovered[static_cast<std::size_t>(v - 1)] =
                gf.mul(gf.alpha_pow(-static_cast<long long>(f) * v), acc);
        }
    }
    return finalize(p, f, std::move(recovered), std::move(reader));
}

RepairReport repair_parity_node(const CodeParams& p, int f, const CodedStripe& stripe,
                                const std::vector<int>& unreadable) {
    if (f <= p.k || f > p.n) throw ParamError("repair_parity_node: not a parity node");
    if (stripe.stage() != Stage::G3)
        throw DataError("repair_parity_node: stripe must be fully encoded (G3)");
    const auto& gf = p.gf();
    const int k = p.k;
    const int r = p.r;
    const int L = p.L;
    const int c = f - k;  // the failed parity row / its column
    ShareReader reader(f, stripe, unreadable);

    // Step 1: the whole data column c; the diagonal and every P_u^T a_c
    // follow locally.
    std::vector<Elem> col_c(static_cast<std::size_t>(k) + 1, 0);
    for (int delta = 1; delta <= k; ++delta)
        col_c[static_cast<std::size_t>(delta)] = reader.fetch(delta, c);
    auto base_product_c = [&](int u) {  // P_u^T a_c
        Elem acc = 0;
        for (int delta = 1; delta <= k; ++delta)
            acc = gf.add(acc, gf.mul(gf.alpha_pow(static_cast<long long>(delta) * u),
                                     col_c[static_cast<std::size_t>(delta)]));
        return acc;
    };
    const Elem diagonal = base_product_c(c);  // P(c,c) = R(c,c)

    // Step 2: the surviving parities of column c, plus (for the late parity
    // nodes) the data region feeding the piggybacks in rows above c.
    std::vector<Elem> stored_col(static_cast<std::size_t>(r) + 1, 0);
    for (int u = 1; u <= r; ++u) {
        if (u == c) continue;
        stored_col[static_cast<std::size_t>(u)] = reader.fetch(k + u, c);  // P(u, c)
    }
    std::vector<Elem> piggy(static_cast<std::size_t>(r) + 1, 0);
    if (c >= r - L + 2) {
        const int t = r + 1 - c;
        for (int u = 1; u <= c - 1; ++u) {
            Elem acc = 0;
            for (int s = p.groups.group_first(t); s <= p.groups.group_last(t); ++s)
                acc = gf.add(acc, gf.mul(gf.alpha_pow(static_cast<long long>(s) * u),
                                         reader.fetch(s, u)));
            piggy[static_cast<std::size_t>(u)] = acc;  // q_{u,t}^T a_u
        }
    }

    std::vector<Elem> r_uc(static_cast<std::size_t>(r) + 1, 0);  // R(u, c)
    std::vector<Elem> r_cu(static_cast<std::size_t>(r) + 1, 0);  // R(c, u)
    for (int u = 1; u <= r; ++u) {
        if (u == c) continue;
        r_uc[static_cast<std::size_t>(u)] =
            gf.add(base_product_c(u), piggy[static_cast<std::size_t>(u)]);
        const Elem delta = gf.add(stored_col[static_cast<std::size_t>(u)],
                                  r_uc[static_cast<std::size_t>(u)]);
        r_cu[static_cast<std::size_t>(u)] =
            (u < c) ? gf.mul(gf.inv(gf.alpha()), delta) : delta;
    }

    // Step 3: reassemble the erased row through the transform relations.
    std::vector<Elem> recovered(static_cast<std::size_t>(r), 0);
    for (int u = 1; u <= r; ++u) {
        if (u == c) {
            recovered[static_cast<std::size_t>(u - 1)] = diagonal;
        } else if (u < c) {
            recovered[static_cast<std::size_t>(u - 1)] =
                gf.add(r_cu[static_cast<std::size_t>(u)], r_uc[static_cast<std::size_t>(u)]);
        } else {
            recovered[static_cast<std::size_t>(u - 1)] =
                gf.add(r_cu[static_cast<std::size_t>(u)],
                       gf.mul(gf.alpha(), r_uc[static_cast<std::size_t>(u)]));
        }
    }
    return finalize(p, f, std::move(recovered), std::move(reader));
}

RepairReport repair_node(const CodeParams& p, int f, const CodedStripe& stripe,
                         const std::vector<int>& unreadable) {
    if (f < 1 || f > p.n) {
        std::ostringstream os;
        os << "repair_node: node " << f << " out of range [1, " << p.n << "]";
        throw ParamError(os.str());
    }
    return f <= p.k ? repair_data_node(p, f, stripe, unreadable)
                    : repair_parity_node(p, f, stripe, unreadable);
}

}  // namespace cpb
