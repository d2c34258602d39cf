#include "cpb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpb/repair.hpp"

namespace cpb {

namespace {

int isqrt_floor(int v) {
    int s = 0;
    while ((s + 1) * (s + 1) <= v) ++s;
    return s;
}

}  // namespace

BandwidthProfile exact_profile(int k, int r, int L) {
    const GroupLayout layout = make_group_layout(k, r, L);
    BandwidthProfile prof;
    long long sum_data = 0;
    long long sum_par = 0;
    for (int node = 1; node <= k + r; ++node) {
        const int bw = predicted_bandwidth(layout, node);
        prof.per_node.push_back(bw);
        (node <= k ? sum_data : sum_par) += bw;
    }
    const long long n = k + r;
    const long long kr = static_cast<long long>(k) * r;
    prof.avg_data = Rational(sum_data, k);
    prof.avg_parity = Rational(sum_par, r);
    prof.avg_all = Rational(sum_data + sum_par, n);
    prof.gamma_sys = Rational(sum_data, k * kr);
    prof.gamma_par = Rational(sum_par, r * kr);
    prof.gamma_all = Rational(sum_data + sum_par, n * kr);
    prof.rs_reduction = Rational(1) - prof.gamma_all;
    return prof;
}

BandwidthProfile exact_profile(const CodeParams& p) {
    return exact_profile(p.k, p.r, p.L);
}

Rational gamma_sys_closed(int k, int r, int L) {
    make_group_layout(k, r, L);  // parameter validation
    if (k % L != 0)
        throw ParamError("gamma_sys_closed: L must divide k; use exact_profile");
    const long long Lr = static_cast<long long>(L) * r;
    Rational v = Rational(L, 2LL * r) + Rational(1, L) - Rational(3, 2 * Lr) +
                 Rational(1, static_cast<long long>(L) * Lr);
    // The 1/k correction, with halves cleared from the numerator.
    const long long num =
        -5LL * L * L + 6LL * L * r + 9LL * L - 6LL * r - 4;
    v = v + Rational(num, 2LL * k * Lr);
    return v;
}

Rational gamma_sys_closed(const CodeParams& p) {
    return gamma_sys_closed(p.k, p.r, p.L);
}

Rational gamma_par_closed(int k, int r, int L) {
    make_group_layout(k, r, L);
    if (k % L != 0)
        throw ParamError("gamma_par_closed: L must divide k; use exact_profile");
    return Rational(static_cast<long long>(k) + r - 1, static_cast<long long>(k) * r) +
           Rational(static_cast<long long>(L - 1) * (2LL * r - L),
                    2LL * L * r * r);
}

Rational gamma_par_closed(const CodeParams& p) {
    return gamma_par_closed(p.k, p.r, p.L);
}

int optimal_L(int r, std::optional<int> k) {
    if (r < 2) throw ParamError("optimal_L: r must be at least 2");
    const int lo = isqrt_floor(2 * r - 1);
    const int hi = (lo * lo == 2 * r - 1) ? lo : lo + 1;
    auto clamp = [&](int L) {
        const int max_L = k ? std::min(r, *k) : r;
        return std::max(2, std::min(L, max_L));
    };
    const int c1 = clamp(lo);
    const int c2 = clamp(hi);
    if (c1 == c2) return c1;

    if (k) {
        const Rational g1 = exact_profile(*k, r, c1).gamma_all;
        const Rational g2 = exact_profile(*k, r, c2).gamma_all;
        return (g2 < g1) ? c2 : c1;
    }
    // Large-k data-node ratio, exact in L and r.
    auto asymptotic = [&](int L) {
        const long long Lr = static_cast<long long>(L) * r;
        return Rational(L, 2LL * r) + Rational(1, L) - Rational(3, 2 * Lr) +
               Rational(1, static_cast<long long>(L) * Lr);
    };
    return (asymptotic(c2) < asymptotic(c1)) ? c2 : c1;
}

int msr_bound(int n) { return n - 1; }

int msr_bound(const CodeParams& p) { return msr_bound(p.n); }

const char* comparator_name(ComparatorCode c) {
    switch (c) {
        case ComparatorCode::RsrI: return "RSR-I";
        case ComparatorCode::RsrII: return "RSR-II";
        case ComparatorCode::Repb: return "REPB";
        case ComparatorCode::Oop: return "OOP";
        case ComparatorCode::C0: return "C0";
        case ComparatorCode::C1: return "C1";
        case ComparatorCode::FirstCode23: return "FirstCode23";
        case ComparatorCode::Proposed: return "Proposed";
    }
    return "?";
}

double oop_data_bound_kinf(int r) {
    const double s = std::sqrt(r - 1.0);
    return (2 * s + 1) / (2 * s + r);
}

double oop_parity_bound_kinf(int r) {
    return (std::sqrt(r - 1.0) + 1) / r;
}

double c1_data_bound_kinf(int r) {
    const double L = std::sqrt(2.0 * r - 1);
    return L / (2.0 * r) + 1 / L - 3 / (2 * L * r) + 1 / (L * L * r);
}

double c1_parity_bound_kinf(int r) {
    const double L = std::sqrt(2.0 * r - 1);
    return L / r + (r - L) / (static_cast<double>(r) * r);
}

double proposed_data_bound_kinf(int r) { return c1_data_bound_kinf(r); }

double proposed_parity_bound_kinf(int r) {
    const double L = std::sqrt(2.0 * r - 1);
    return 1.0 / r + (L - 1) * (2 * r - L) / (2 * L * r * r);
}

double firstcode23_all_kinf(int r, int m, int L) {
    const double md = m;
    const double Ld = L;
    return (Ld + 1) / (2 * md) +
           (md * md - md * (Ld + 1) + (Ld + 1) * (2 * Ld + 1) / 6.0) /
               (Ld * md * (r - 1));
}

std::vector<ComparatorBound> comparator_bounds(int k, int r) {
    if (r < 2) throw ParamError("comparator_bounds: r must be at least 2");
    if (k < 1) throw ParamError("comparator_bounds: k must be at least 1");
    const double kd = k;
    const double rd = r;
    const double L = std::sqrt(2.0 * r - 1);  // group parameter of C0/C1/Proposed

    std::vector<ComparatorBound> out;
    auto emit = [&](ComparatorCode code, RatioKind kind, double value,
                    std::string note) {
        if (!(value > 0.0) || value > 2.0) {
            std::ostringstream os;
            os << "omitted: value " << value << " outside (0, 2] at r=" << r;
            out.push_back({code, kind, 0.0, os.str(), false});
        } else {
            out.push_back({code, kind, value, std::move(note), true});
        }
    };
    auto omit = [&](ComparatorCode code, RatioKind kind, std::string reason) {
        out.push_back({code, kind, 0.0, std::move(reason), false});
    };

    emit(ComparatorCode::RsrI, RatioKind::Data, (rd + 1) / (2 * rd), "");
    const double rsr_par = 1 / rd + (rd - 1) * (kd + rd - 1) / (2 * kd * rd);
    emit(ComparatorCode::RsrI, RatioKind::Parity, rsr_par, "");
    if (r >= 3) {
        emit(ComparatorCode::RsrII, RatioKind::Data, (rd + 1) / (2 * rd - 3), "");
        emit(ComparatorCode::RsrII, RatioKind::Parity, rsr_par, "");
    } else {
        omit(ComparatorCode::RsrII, RatioKind::Data, "needs r >= 3");
        omit(ComparatorCode::RsrII, RatioKind::Parity, "needs r >= 3");
    }
    emit(ComparatorCode::Repb, RatioKind::Data, 2 / (std::sqrt(rd) + 1), "");
    emit(ComparatorCode::Repb, RatioKind::Parity, 1.0, "");

    const double sr1 = std::sqrt(rd - 1);
    emit(ComparatorCode::Oop, RatioKind::Data, (2 * sr1 + 1) / (2 * sr1 + rd), "");
    emit(ComparatorCode::Oop, RatioKind::Parity,
         (sr1 + 1) / rd + ((rd - 1) * (rd - 1) - std::sqrt((rd - 1) * (rd - 1) * (rd - 1))) / (kd * rd),
         "");

    {
        std::ostringstream note;
        note << "L*=sqrt(2r-1)=" << L;
        emit(ComparatorCode::C0, RatioKind::Data,
             L / (2 * rd) + 1 / L - 1 / (2 * L * rd), note.str());
        emit(ComparatorCode::C0, RatioKind::Parity,
             (kd + rd) / (kd * rd) +
                 2 * (rd - L - 1) * (rd - L - 1) / (kd * (4 * rd - 3 - L)) +
                 (kd * rd - kd - rd) * (L + 1) / (kd * rd * rd),
             note.str());
        emit(ComparatorCode::C1, RatioKind::Data, c1_data_bound_kinf(r), note.str());
        const double c1_par_denominator = (L - 2) * (L - 1) + 2 * rd - 4;
        if (c1_par_denominator > 0) {
            emit(ComparatorCode::C1, RatioKind::Parity,
                 (rd - L) * (rd - 1) / (kd * rd * rd) + L / rd + (rd - L) / (rd * rd) +
                     2 * (rd - L) * (rd - L) * (rd - 1) * (rd - 1) /
                         (c1_par_denominator * kd * rd * rd),
                 note.str());
        } else {
            omit(ComparatorCode::C1, RatioKind::Parity,
                 "finite-k correction denominator not positive at this r");
        }
    }

    if (r >= 3) {
        double best = 0;
        int best_m = 0, best_L = 0;
        bool first = true;
        for (int m = 2; m < r; ++m) {
            for (int Lg = 1; Lg < m; ++Lg) {
                const double md = m;
                const double Ld = Lg;
                const double value =
                    (kd + rd) * (md * md - md * (Ld + 1) + (Ld + 1) * (2 * Ld + 1) / 6.0) /
                        (Ld * md * kd * (rd - 1)) +
                    (Ld + 1) / (2 * md) + (md - Ld) / (md * kd);
                if (first || value < best) {
                    best = value;
                    best_m = m;
                    best_L = Lg;
                    first = false;
                }
            }
        }
        std::ostringstream note;
        note << "min over integer grid 1<=L<m<r at (m=" << best_m << ", L=" << best_L
             << ")";
        emit(ComparatorCode::FirstCode23, RatioKind::All, best, note.str());
    } else {
        omit(ComparatorCode::FirstCode23, RatioKind::All,
             "integer grid 1<=L<m<r empty for r < 3");
    }

    {
        std::ostringstream note;
        note << "L=sqrt(2r-1)=" << L;
        emit(ComparatorCode::Proposed, RatioKind::Data,
             L / (2 * rd) + 1 / L - 3 / (2 * L * rd) + 1 / (L * L * rd) +
                 (-L * L * L + (2 + rd) * L * L - 2 * L - rd + 1) / (kd * L * rd),
             note.str());
        emit(ComparatorCode::Proposed, RatioKind::Parity,
             (kd + rd - 1) / (kd * rd) + (L - 1) * (2 * rd - L) / (2 * L * rd * rd),
             note.str());
    }
    return out;
}

bool beats_oop_bounds(int r) {
    if (r <= 5) return false;
    const bool data_ok =
        proposed_data_bound_kinf(r) < oop_data_bound_kinf(r) - kBoundTolerance;
    const bool parity_ok =
        proposed_parity_bound_kinf(r) < oop_parity_bound_kinf(r) - kBoundTolerance;
    return data_ok && parity_ok;
}

bool beats_c1_parity_bound(int r) {
    if (r < 2) return false;
    return proposed_parity_bound_kinf(r) < c1_parity_bound_kinf(r) - kBoundTolerance;
}

bool beats_firstcode_grid(int r) {
    if (r < 3) return false;
    const double proposed = proposed_data_bound_kinf(r);
    for (int m = 2; m < r; ++m)
        for (int L = 1; L < m; ++L)
            if (!(proposed < firstcode23_all_kinf(r, m, L) - kBoundTolerance))
                return false;
    return true;
}

BigUint htec_field_threshold(int n, int k, int alpha) {
    BigUint v = BigUint::binomial(n, k);
    v.mul_small(static_cast<std::uint64_t>(n - k));
    v.mul_small(static_cast<std::uint64_t>(alpha));
    return v;
}

BigUint bpd_field_threshold(int n, int k) {
    BigUint v = BigUint::binomial(n - 1, k - 1);
    v.add(BigUint(2));
    return v;
}

BigUint etrs_field_threshold(int n, int k, int alpha_star) {
    BigUint v = BigUint::binomial(n - 1, k - 1);
    const int cn = (n + alpha_star - 1) / alpha_star;
    const int ck = (k + alpha_star - 1) / alpha_star;
    v.sub(BigUint::binomial(cn - 1, ck - 1));
    v.mul_small(2);
    return v;
}

std::vector<FieldSizeThreshold> field_size_thresholds(int n, int k) {
    const int r = n - k;
    std::vector<FieldSizeThreshold> out;
    out.push_back({"proposed", std::to_string(static_cast<long long>(k) * r * r),
                   "k*r^2; sub-packetization r"});
    out.push_back({"piggybacking", std::to_string(n), "sub-packetization flexible"});
    out.push_back({"piggybacking+", std::to_string(n),
                   "sub-packetization s*r with 2 <= s <= r"});
    out.push_back({"BPD", bpd_field_threshold(n, k).to_string(),
                   "C(n-1,k-1)+2; sub-packetization 2..r"});
    out.push_back({"HTEC", htec_field_threshold(n, k, r).to_string(),
                   "C(n,k)*(n-k)*alpha at alpha=r"});
    out.push_back({"ET-RS", etrs_field_threshold(n, k, r).to_string(),
                   "2*(C(n-1,k-1)-C(ceil(n/a*)-1,ceil(k/a*)-1)) at a*=r"});
    return out;
}

}  // namespace cpb
