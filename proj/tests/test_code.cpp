#include <doctest.h>

#include <random>
#include <set>

#include "cpb/code.hpp"
#include "cpb/stripe_io.hpp"
#include "oracles.hpp"

using namespace cpb;

namespace {

gf::FieldPtr shared_field() {
    static gf::FieldPtr f = gf::build_field(8);
    return f;
}

CodeParams worked_example() { return make_params(14, 10, 3, shared_field()); }

}  // namespace

TEST_CASE("make_params group layout") {
    SUBCASE("(14,10,L=3) splits 4,3,3 with contiguous groups") {
        const CodeParams p = worked_example();
        CHECK(p.groups.sizes == std::vector<int>{4, 3, 3});
        CHECK(p.groups.group_first(1) == 1);
        CHECK(p.groups.group_last(1) == 4);
        CHECK(p.groups.group_first(2) == 5);
        CHECK(p.groups.group_last(2) == 7);
        CHECK(p.groups.group_first(3) == 8);
        CHECK(p.groups.group_last(3) == 10);
        CHECK(p.groups.group_of(1) == 1);
        CHECK(p.groups.group_of(5) == 2);
        CHECK(p.groups.group_of(10) == 3);
        CHECK(p.field_bound_ok);  // 256 > 10*16
    }
    SUBCASE("(16,12,L=3) splits evenly") {
        const CodeParams p = make_params(16, 12, 3, shared_field());
        CHECK(p.groups.sizes == std::vector<int>{4, 4, 4});
        CHECK(p.field_bound_ok);  // 256 > 12*16 = 192
    }
    SUBCASE("(9,7,L=2) splits 4,3") {
        const CodeParams p = make_params(9, 7, 2, shared_field());
        CHECK(p.groups.sizes == std::vector<int>{4, 3});
    }
    SUBCASE("bound flag off when order <= k*r^2") {
        const CodeParams p = make_params(28, 24, 3, shared_field());
        CHECK(!p.field_bound_ok);  // 24*16 = 384 >= 256
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(make_params(14, 10, 1, shared_field()), ParamError);
        CHECK_THROWS_AS(make_params(14, 10, 5, shared_field()), ParamError);  // L > r
        CHECK_THROWS_AS(make_params(10, 0, 2, shared_field()), ParamError);
        CHECK_THROWS_AS(make_params(10, 10, 2, shared_field()), ParamError);  // n == k
        CHECK_THROWS_AS(make_params(300, 290, 3, shared_field()), ParamError);  // field too small
        CHECK_THROWS_AS(make_params(8, 2, 3, shared_field()), ParamError);  // L > k
    }
}

TEST_CASE("parity_vector") {
    const CodeParams p = worked_example();
    const auto& f = p.gf();
    SUBCASE("P_1 = (alpha, alpha^2, ..., alpha^10)") {
        const auto v = parity_vector(p, 1);
        REQUIRE(v.size() == 10);
        for (int d = 1; d <= 10; ++d)
            CHECK(v[static_cast<std::size_t>(d - 1)] == f.alpha_pow(d));
    }
    SUBCASE("entry is alpha^(delta*i) for every i") {
        for (int i = 1; i <= p.r; ++i) {
            const auto v = parity_vector(p, i);
            for (int d = 1; d <= p.k; ++d)
                CHECK(v[static_cast<std::size_t>(d - 1)] ==
                      f.pow(f.alpha(), static_cast<long long>(d) * i));
        }
    }
    SUBCASE("exponent wrap hits the identity") {
        auto small = gf::build_field(4);  // group order 15
        const CodeParams q = make_params(10, 7, 2, small);
        const auto v = parity_vector(q, 3);  // delta=5: alpha^15 = 1
        CHECK(v[4] == 1);
    }
    SUBCASE("index errors") {
        CHECK_THROWS_AS(parity_vector(p, 0), ParamError);
        CHECK_THROWS_AS(parity_vector(p, 5), ParamError);
    }
}

TEST_CASE("piggy_vector matches the worked example") {
    const CodeParams p = worked_example();
    const auto& f = p.gf();
    SUBCASE("q_{1,1} is P_1 on nodes 1..4") {
        const auto q = piggy_vector(p, 1, 1);
        std::vector<Elem> expect(10, 0);
        for (int d = 1; d <= 4; ++d)
            expect[static_cast<std::size_t>(d - 1)] = f.alpha_pow(d);
        CHECK(q == expect);
    }
    SUBCASE("q_{2,2} is (0,0,0,0,a^10,a^12,a^14,0,0,0)") {
        const auto q = piggy_vector(p, 2, 2);
        std::vector<Elem> expect(10, 0);
        expect[4] = f.alpha_pow(10);
        expect[5] = f.alpha_pow(12);
        expect[6] = f.alpha_pow(14);
        CHECK(q == expect);
    }
    SUBCASE("q_{1,2} is (0,0,0,0,a^5,a^6,a^7,0,0,0)") {
        const auto q = piggy_vector(p, 1, 2);
        std::vector<Elem> expect(10, 0);
        expect[4] = f.alpha_pow(5);
        expect[5] = f.alpha_pow(6);
        expect[6] = f.alpha_pow(7);
        CHECK(q == expect);
    }
    SUBCASE("groups partition the support: sum_t q_{i,t} = P_i") {
        for (int i = 1; i <= p.r; ++i) {
            std::vector<Elem> sum(static_cast<std::size_t>(p.k), 0);
            for (int t = 1; t <= p.L; ++t) {
                const auto q = piggy_vector(p, i, t);
                for (std::size_t d = 0; d < sum.size(); ++d)
                    sum[d] = f.add(sum[d], q[d]);
            }
            CHECK(sum == parity_vector(p, i));
        }
    }
}

TEST_CASE("piggyback assignment list") {
    const CodeParams p = worked_example();
    const auto assignments = piggyback_assignments(p);
    // (L-1)(2r-L)/2 = 2*5/2 = 5 assignments
    REQUIRE(assignments.size() == 5);
    const std::vector<PiggybackAssignment> expect = {
        {1, 4, 1}, {2, 4, 1}, {3, 4, 1}, {1, 3, 2}, {2, 3, 2},
    };
    CHECK(assignments == expect);
    SUBCASE("count formula across parameter sets") {
        for (int r = 2; r <= 8; ++r) {
            for (int L = 2; L <= r; ++L) {
                const CodeParams q = make_params(2 * L + r, 2 * L, L, shared_field());
                CHECK(static_cast<int>(piggyback_assignments(q).size()) ==
                      (L - 1) * (2 * r - L) / 2);
            }
        }
    }
}

TEST_CASE("encode_base") {
    const CodeParams p = worked_example();
    const auto& f = p.gf();
    SUBCASE("all-zero data encodes to an all-zero stripe") {
        const CodedStripe s = encode_base(p, DataMatrix(10, 4));
        for (int node = 1; node <= 14; ++node)
            for (int col = 1; col <= 4; ++col) CHECK(s.at(node, col) == 0);
    }
    SUBCASE("single basis symbol a_{1,1}=1 gives parity column alpha^i") {
        DataMatrix d(10, 4);
        d.at(1, 1) = 1;
        const CodedStripe s = encode_base(p, d);
        for (int i = 1; i <= 4; ++i) {
            CHECK(s.parity(i, 1) == f.alpha_pow(i));
            for (int col = 2; col <= 4; ++col) CHECK(s.parity(i, col) == 0);
        }
    }
    SUBCASE("random data matches the direct dot-product oracle") {
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 20; ++trial) {
            const DataMatrix d = random_data_matrix(p, rng);
            const CodedStripe s = encode_base(p, d);
            for (int i = 1; i <= p.k; ++i)
                for (int j = 1; j <= p.r; ++j) REQUIRE(s.at(i, j) == d.at(i, j));
            for (int i = 1; i <= p.r; ++i)
                for (int j = 1; j <= p.r; ++j)
                    REQUIRE(s.parity(i, j) == oracle::base_parity(p, d, i, j));
        }
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(encode_base(p, DataMatrix(9, 4)), DataError);
    }
}

TEST_CASE("apply_piggyback") {
    const CodeParams p = worked_example();
    std::mt19937_64 rng(37);
    SUBCASE("exactly five parity cells change, in the documented places") {
        const DataMatrix d = random_data_matrix(p, rng);
        const CodedStripe g1 = encode_base(p, d);
        const CodedStripe g2 = apply_piggyback(p, g1);
        std::set<std::pair<int, int>> changed;
        for (int i = 1; i <= p.r; ++i)
            for (int j = 1; j <= p.r; ++j)
                if (g1.parity(i, j) != g2.parity(i, j)) changed.insert({i, j});
        const std::set<std::pair<int, int>> expect = {
            {1, 4}, {2, 4}, {3, 4}, {1, 3}, {2, 3}};
        CHECK(changed == expect);
        for (int i = 1; i <= p.k; ++i)
            for (int j = 1; j <= p.r; ++j) REQUIRE(g2.at(i, j) == d.at(i, j));
    }
    SUBCASE("columns 1..r-L+1 are never touched") {
        for (int trial = 0; trial < 5; ++trial) {
            const DataMatrix d = random_data_matrix(p, rng);
            const CodedStripe g1 = encode_base(p, d);
            const CodedStripe g2 = apply_piggyback(p, g1);
            for (int i = 1; i <= p.r; ++i)
                for (int j = 1; j <= p.r - p.L + 1; ++j)
                    REQUIRE(g1.parity(i, j) == g2.parity(i, j));
        }
    }
    SUBCASE("all-zero data: piggybacks vanish") {
        const CodedStripe g1 = encode_base(p, DataMatrix(10, 4));
        const CodedStripe g2 = apply_piggyback(p, g1);
        for (int i = 1; i <= p.r; ++i)
            for (int j = 1; j <= p.r; ++j) CHECK(g2.parity(i, j) == 0);
    }
    SUBCASE("wrong stage rejected") {
        const CodedStripe g2 =
            apply_piggyback(p, encode_base(p, DataMatrix(10, 4)));
        CHECK_THROWS_AS(apply_piggyback(p, g2), DataError);
    }
}

TEST_CASE("conjugate transform") {
    SUBCASE("documented pair example under poly 0x11D") {
        auto f11d = gf::build_field(8, 0x11D);
        const CodeParams p = make_params(14, 10, 3, f11d);
        CodedStripe g2(14, 10, Stage::G2);
        g2.parity(1, 2) = 0x05;
        g2.parity(2, 1) = 0x07;
        const CodedStripe g3 = conjugate_transform(p, g2);
        CHECK(g3.parity(1, 2) == 0x0B);  // 0x05 + alpha*0x07
        CHECK(g3.parity(2, 1) == 0x02);  // 0x07 + 0x05
        const CodedStripe back = inverse_conjugate(p, g3);
        CHECK(back.parity(1, 2) == 0x05);
        CHECK(back.parity(2, 1) == 0x07);
    }
    const CodeParams p = worked_example();
    std::mt19937_64 rng(41);
    SUBCASE("diagonal is untouched and data rows unchanged") {
        const DataMatrix d = random_data_matrix(p, rng);
        const CodedStripe g2 = apply_piggyback(p, encode_base(p, d));
        const CodedStripe g3 = conjugate_transform(p, g2);
        for (int i = 1; i <= p.r; ++i) REQUIRE(g3.parity(i, i) == g2.parity(i, i));
        for (int i = 1; i <= p.k; ++i)
            for (int j = 1; j <= p.r; ++j) REQUIRE(g3.at(i, j) == d.at(i, j));
    }
    SUBCASE("inverse_conjugate is an exact inverse on random stripes") {
        for (int trial = 0; trial < 20; ++trial) {
            const DataMatrix d = random_data_matrix(p, rng);
            const CodedStripe g2 = apply_piggyback(p, encode_base(p, d));
            REQUIRE(inverse_conjugate(p, conjugate_transform(p, g2)) == g2);
        }
    }
    SUBCASE("all-zero stripe maps to all-zero") {
        CodedStripe g2(14, 10, Stage::G2);
        const CodedStripe g3 = conjugate_transform(p, g2);
        for (int i = 1; i <= p.r; ++i)
            for (int j = 1; j <= p.r; ++j) CHECK(g3.parity(i, j) == 0);
    }
    SUBCASE("stage misuse is an error rather than silent corruption") {
        CodedStripe g1(14, 10, Stage::G1);
        CHECK_THROWS_AS(conjugate_transform(p, g1), DataError);
        CodedStripe g3(14, 10, Stage::G3);
        CHECK_THROWS_AS(conjugate_transform(p, g3), DataError);
        CHECK_THROWS_AS(inverse_conjugate(p, g1), DataError);
    }
}

TEST_CASE("full encoder") {
    const CodeParams p = worked_example();
    const auto& f = p.gf();
    std::mt19937_64 rng(43);
    SUBCASE("P(4,3) = P_4^T a_3 + P_3^T a_4 + q_{3,1}^T a_3") {
        const DataMatrix d = random_data_matrix(p, rng);
        const CodedStripe g3 = encode(p, d);
        const Elem expect = f.add(
            f.add(oracle::base_parity(p, d, 4, 3), oracle::base_parity(p, d, 3, 4)),
            gf::dot(f, piggy_vector(p, 3, 1), d.column(3)));
        CHECK(g3.parity(4, 3) == expect);
    }
    SUBCASE("zero data, zero stripe") {
        const CodedStripe g3 = encode(p, DataMatrix(10, 4));
        for (int node = 1; node <= 14; ++node)
            for (int col = 1; col <= 4; ++col) CHECK(g3.at(node, col) == 0);
    }
    SUBCASE("linearity: encode(x) + encode(y) = encode(x+y), 100 stripe pairs") {
        for (int trial = 0; trial < 100; ++trial) {
            const DataMatrix x = random_data_matrix(p, rng);
            const DataMatrix y = random_data_matrix(p, rng);
            DataMatrix sum(p.k, p.r);
            for (int i = 1; i <= p.k; ++i)
                for (int j = 1; j <= p.r; ++j)
                    sum.at(i, j) = f.add(x.at(i, j), y.at(i, j));
            const CodedStripe ex = encode(p, x);
            const CodedStripe ey = encode(p, y);
            const CodedStripe es = encode(p, sum);
            for (int node = 1; node <= p.n; ++node)
                for (int col = 1; col <= p.r; ++col)
                    REQUIRE(es.at(node, col) ==
                            f.add(ex.at(node, col), ey.at(node, col)));
        }
    }
    SUBCASE("systematic at every stage") {
        const DataMatrix d = random_data_matrix(p, rng);
        const CodedStripe g1 = encode_base(p, d);
        const CodedStripe g2 = apply_piggyback(p, g1);
        const CodedStripe g3 = conjugate_transform(p, g2);
        CHECK(g1.data_rows() == d);
        CHECK(g2.data_rows() == d);
        CHECK(g3.data_rows() == d);
    }
}

TEST_CASE("stripe serialization round-trips byte-exactly") {
    const CodeParams p = worked_example();
    std::mt19937_64 rng(47);
    SUBCASE("GF(2^8) stripe") {
        StripeFile file;
        file.params = p;
        file.stripe = encode(p, random_data_matrix(p, rng));
        file.orig_len = 40;
        const std::string text = write_stripe(file);
        const StripeFile back = read_stripe_string(text);
        CHECK(back.stripe == file.stripe);
        CHECK(back.orig_len == 40);
        CHECK(back.params.n == p.n);
        CHECK(back.params.gf().reduction_poly() == p.gf().reduction_poly());
        CHECK(write_stripe(back) == text);
    }
    SUBCASE("wide-symbol field uses 3-digit cells") {
        auto f10 = gf::build_field(10);
        const CodeParams q = make_params(9, 7, 2, f10);
        StripeFile file;
        file.params = q;
        file.stripe = encode(q, random_data_matrix(q, rng));
        file.orig_len = 0;
        const std::string text = write_stripe(file);
        CHECK(read_stripe_string(text).stripe == file.stripe);
        CHECK(write_stripe(read_stripe_string(text)) == text);
    }
    SUBCASE("corrupt documents are rejected") {
        StripeFile file;
        file.params = p;
        file.stripe = CodedStripe(14, 10, Stage::G3);
        std::string text = write_stripe(file);
        CHECK_THROWS_AS(read_stripe_string(text.substr(1)), DataError);  // broken header
        CHECK_THROWS_AS(read_stripe_string(text.substr(0, text.size() / 2)), DataError);
        std::string bad = text;
        bad.replace(bad.find('\n') + 1, 2, "zz");
        CHECK_THROWS_AS(read_stripe_string(bad), DataError);
    }
}

TEST_CASE("encoding plan bundles the vectors") {
    const CodeParams p = worked_example();
    const EncodingPlan plan = build_plan(p);
    REQUIRE(plan.parity_vectors.size() == 4);
    REQUIRE(plan.piggy_vectors.size() == 4);
    REQUIRE(plan.piggy_vectors[0].size() == 3);
    CHECK(plan.parity_vectors[0] == parity_vector(p, 1));
    CHECK(plan.piggy_vectors[1][1] == piggy_vector(p, 2, 2));
    CHECK(plan.assignments == piggyback_assignments(p));
}
