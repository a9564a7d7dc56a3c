#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zetabound/derivative_tests.hpp"
#include "zetabound/errors.hpp"
#include "zetabound/exp_sum.hpp"
#include "zetabound/rng.hpp"

using namespace zetabound;

namespace {

PhaseSpec make_spec(double t, long r, long K, long m, long N, long L) {
    PhaseSpec s;
    s.t = t;
    s.r = r;
    s.K = K;
    s.m = m;
    s.N = N;
    s.L = L;
    return s;
}

const PhaseSpec kWorked = make_spec(3.14159265358979323846e6, 1, 100, 1, 0, 100);

double rel_gap(DD a, const char* frozen) {
    DD b = dd_from_string(frozen);
    return std::abs(static_cast<double>((a - b) / b));
}

} // namespace

TEST_CASE("worked constants") {
    DerivedConstants c = derive_constants(kWorked, DD(10.0));
    // W and everything downstream of it inherit the double rounding of t,
    // so those comparisons get 1e-14; mu is t-free and gets full precision.
    CHECK(std::abs(static_cast<double>(c.W - DD(8.0))) < 8e-14);
    CHECK(std::abs(static_cast<double>(c.lambda - DD(8.0))) < 1e-30);
    CHECK(rel_gap(c.mu, "3.11111111111111111111111111111") < 1e-28);

    DerivedConstants ce = derive_constants(kWorked, DD(10.0), dd_from_string("1.8"));
    CHECK(rel_gap(ce.alpha, "7.42703509278675680660502113457") < 1e-14);
    CHECK(rel_gap(ce.beta, "4.84894915566825874269717520849") < 1e-14);
}

TEST_CASE("lambda cube root stays exact for every r") {
    for (long r = 1; r <= 8; ++r) {
        PhaseSpec s = make_spec(1e6, r, 100, 1, 0, 100);
        DerivedConstants c = derive_constants(s, DD(10.0));
        DD expect = dd_pow_int(DD(static_cast<double>(r + 1)), 3) /
                    dd_pow_int(DD(static_cast<double>(r)), 3);
        CHECK(std::abs(static_cast<double>((c.lambda - expect) / expect)) < 1e-31);
    }
}

TEST_CASE("hypothesis violations throw") {
    CHECK_THROWS_AS(derive_constants(kWorked, DD(1.0)), HypothesisError);
    CHECK_THROWS_AS(derive_constants(kWorked, DD(0.5)), HypothesisError);
    CHECK_THROWS_AS(derive_constants(kWorked, DD(101.0)), HypothesisError);
    CHECK_NOTHROW(derive_constants(kWorked, DD(100.0)));
    CHECK_THROWS_AS(derive_constants(kWorked, DD(10.0), DD(0.0)), HypothesisError);
    CHECK_THROWS_AS(derive_constants(kWorked, DD(10.0), DD(-1.0)), HypothesisError);
}

TEST_CASE("worked shifted-sum bound") {
    DD b = second_derivative_test_bound(kWorked, DD(10.0));
    CHECK(rel_gap(b, "294.229478080356981990187837478") < 1e-14);
    CHECK(std::abs(static_cast<double>(shifted_sum_bound(kWorked, DD(10.0), 1) - b)) == 0.0);
    CHECK(static_cast<double>(shifted_sum_bound(kWorked, DD(10.0), 100)) == 0.0);
    CHECK(static_cast<double>(shifted_sum_bound(kWorked, DD(10.0), 500)) == 0.0);
    CHECK_THROWS_AS(shifted_sum_bound(kWorked, DD(10.0), 0), std::domain_error);
}

TEST_CASE("worked third-derivative bound") {
    DD b = third_derivative_test_bound(kWorked, DD(10.0), dd_from_string("1.8"));
    CHECK(rel_gap(b, "39476.7440456898634697008641803") < 1e-14);
}

TEST_CASE("shifted-sum bound dominates the true sum") {
    CounterRng rng(41, 0);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        auto idx = static_cast<std::uint64_t>(i);
        double t = rng.log_uniform(idx, 1e5, 1e9);
        long K = rng.integer(idx + 100, 50, 800);
        long r = rng.integer(idx + 200, 1, 8);
        long L = rng.integer(idx + 300, 2, K);
        long m = rng.integer(idx + 400, 1, L - 1 >= 1 ? L - 1 : 1);
        if (m >= K)
            continue;
        PhaseSpec s = make_spec(t, r, K, m, 0, L);
        double K0 = rng.uniform(idx + 500, 2.0, static_cast<double>(K));
        DD bound = second_derivative_test_bound(s, DD(K0));
        PhaseFn g = [&](long x) { return phase_g(s, x); };
        DD sum = eval_exp_sum(g, 0.0, static_cast<double>(L - m)).abs();
        CHECK(static_cast<double>(sum) <= static_cast<double>(bound) * (1.0 + 1e-12));
        ++checked;
    }
    CHECK(checked >= 50);
}

TEST_CASE("zero-length shifted sums sit under the bound trivially") {
    PhaseSpec s = make_spec(1e6, 1, 50, 10, 0, 10);
    DD bound = second_derivative_test_bound(s, DD(5.0));
    PhaseFn g = [&](long x) { return phase_g(s, x); };
    CHECK(eval_exp_sum(g, 0.0, static_cast<double>(s.L - s.m)).terms == 0);
    CHECK(static_cast<double>(bound) > 0.0);
}

TEST_CASE("third-derivative bound dominates the true squared sum") {
    CounterRng rng(43, 0);
    for (int i = 0; i < 40; ++i) {
        auto idx = static_cast<std::uint64_t>(i);
        double t = rng.log_uniform(idx, 1e5, 1e9);
        long K = rng.integer(idx + 100, 50, 600);
        long r = rng.integer(idx + 200, 1, 8);
        long L = rng.integer(idx + 300, 1, K);
        long N = rng.integer(idx + 400, 0, K - L);
        PhaseSpec s = make_spec(t, r, K, 1, N, L);
        double K0 = rng.uniform(idx + 500, 2.0, static_cast<double>(K));
        double eta = rng.uniform(idx + 600, 0.5, 3.0);
        DD bound = third_derivative_test_bound(s, DD(K0), DD(eta));
        PhaseFn f = [&](long x) { return phase_f(s, x); };
        DD sq = dd_sqr(eval_exp_sum(f, static_cast<double>(N),
                                    static_cast<double>(N + L))
                           .abs());
        CHECK(static_cast<double>(sq) <= static_cast<double>(bound) * (1.0 + 1e-12));
    }
}

TEST_CASE("third-derivative bound dominates its shift-difference chain") {
    CounterRng rng(47, 0);
    for (int i = 0; i < 30; ++i) {
        auto idx = static_cast<std::uint64_t>(i);
        double t = rng.log_uniform(idx, 1e5, 1e9);
        long K = rng.integer(idx + 100, 50, 2000);
        long r = rng.integer(idx + 200, 1, 8);
        PhaseSpec s = make_spec(t, r, K, 1, 0, K);
        double K0 = rng.uniform(idx + 300, 2.0, static_cast<double>(K));
        double eta = rng.uniform(idx + 400, 0.5, 3.0);
        DD tdt = third_derivative_test_bound(s, DD(K0), DD(eta));
        DD chain = weyl_chain_bound(s, DD(K0), DD(eta));
        CHECK(static_cast<double>(tdt) >= static_cast<double>(chain) * (1.0 - 1e-20));
    }
}

TEST_CASE("worked subdivision audit") {
    AuditRecord rec = subdivision_audit(kWorked, DD(10.0));
    REQUIRE(!rec.skipped);
    CHECK(rel_gap(rec.delta, "0.199471140200716338969973029967") < 1e-14);
    CHECK(rec.identity_rel_residual < 1e-25);
    DerivedConstants c = derive_constants(kWorked, DD(10.0));
    DD k_expect = DD(100.0) / c.W * c.mu + 1.0;
    CHECK(std::abs(static_cast<double>(rec.k_bound - k_expect)) < 1e-25);
    CHECK(rec.H_max <= rec.H_cap);
    CHECK(rec.h_delta_margin > DD(0.0));
    CHECK(rec.case3_margin > DD(0.0));
    CHECK(rec.pass);
}

TEST_CASE("subdivision audit passes across random specs") {
    CounterRng rng(53, 0);
    int passed = 0, skipped = 0;
    for (int i = 0; i < 60; ++i) {
        auto idx = static_cast<std::uint64_t>(i);
        double t = rng.log_uniform(idx, 1e5, 1e9);
        long K = rng.integer(idx + 100, 50, 2000);
        long r = rng.integer(idx + 200, 1, 8);
        long m = rng.integer(idx + 300, 1, K - 1);
        PhaseSpec s = make_spec(t, r, K, m, 0, K);
        double K0 = rng.uniform(idx + 400, 2.0, static_cast<double>(K));
        AuditRecord rec = subdivision_audit(s, DD(K0));
        if (rec.skipped) {
            ++skipped;
            continue;
        }
        CHECK(rec.pass);
        ++passed;
    }
    CHECK(passed + skipped == 60);
    CHECK(passed >= 20);
}

TEST_CASE("audit skips when the subdivision never fires") {
    PhaseSpec s = make_spec(1e12, 1, 100, 1, 0, 100);
    AuditRecord rec = subdivision_audit(s, DD(10.0));
    CHECK(rec.skipped);
    CHECK(!rec.pass);
}
